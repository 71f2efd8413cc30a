from .errors import (JcmError, SpaceError, TruncationError, ConvergenceError, ConfigError,
  ParameterError)
from .hilbert import (ControlQubit, AtomQubit, CollectiveDicke, BosonMode, CavityFock,
  SpaceDescriptor, make_space, Operator, PureState, DensityMatrix)
from .model import SystemParams, RamanParams, raman_effective, parse_frequency
from .dynamics import StepConfig, StaticPropagator, propagate_timedep, lindblad_evolve
from .protocols import (ProtocolResult, fock_ladder, cat_resonant, cat_dispersive,
  entangle_samples, wigner_measurement, decoherence_budget)
from .analysis import fidelity, wigner_exact, make_grid

from . import hilbert, model, dynamics, protocols, analysis


__all__ = [
  'JcmError', 'SpaceError', 'TruncationError', 'ConvergenceError', 'ConfigError',
  'ParameterError',

  'ControlQubit', 'AtomQubit', 'CollectiveDicke', 'BosonMode', 'CavityFock',
  'SpaceDescriptor', 'make_space',
  'Operator', 'PureState', 'DensityMatrix',

  'SystemParams', 'RamanParams', 'raman_effective', 'parse_frequency',
  'StepConfig', 'StaticPropagator', 'propagate_timedep', 'lindblad_evolve',

  'ProtocolResult', 'fock_ladder', 'cat_resonant', 'cat_dispersive', 'entangle_samples',
  'wigner_measurement', 'decoherence_budget',

  'fidelity', 'wigner_exact', 'make_grid',

  'hilbert', 'model', 'dynamics', 'protocols', 'analysis',
]
