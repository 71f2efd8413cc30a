from .params import SystemParams, EffectiveParams, parse_frequency
from .regime import RegimeWarning, ResonanceDrive, resonance_drive, check_regime, regime_ratio
from .raman import RamanParams, RamanEffective, raman_effective
from .hamiltonians import (dicke_factor, full_space, vacuum_space, mode_space, full_hamiltonian_td,
  full_hamiltonian, effective_vacuum_hamiltonian, cavity_dispersive_hamiltonian, jcm_hamiltonian,
  multi_sample_hamiltonian, dispersive_mode_hamiltonian, bright_mode_operator,
  dark_mode_population, excitation_number)

__all__ = [
  'SystemParams', 'EffectiveParams', 'parse_frequency',
  'RegimeWarning', 'ResonanceDrive', 'resonance_drive', 'check_regime', 'regime_ratio',
  'RamanParams', 'RamanEffective', 'raman_effective',
  'dicke_factor', 'full_space', 'vacuum_space', 'mode_space', 'full_hamiltonian_td', 'full_hamiltonian',
  'effective_vacuum_hamiltonian', 'cavity_dispersive_hamiltonian', 'jcm_hamiltonian',
  'multi_sample_hamiltonian', 'dispersive_mode_hamiltonian', 'bright_mode_operator',
  'dark_mode_population', 'excitation_number',
]
