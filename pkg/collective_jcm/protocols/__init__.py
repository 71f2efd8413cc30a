from .result import ProtocolResult, ScheduleStep
from .segments import SegmentEvolver, standard_observables
from .fock import DecoherenceRates, fock_ladder, ladder_durations
from .cat import (CatReference, cat_reference, cat_resonant, cat_dispersive, collapse_revival,
  dispersive_cat_state, two_branch_purity, dispersive_time, conditional_mode_state)
from .entangle import entangle_samples, entangling_time
from .wigner import WignerMeasurement, wigner_measurement, parity_time
from .decoherence import DecoherenceBudget, decoherence_budget, lindblad_fock_infidelity
from .validation import full_vs_effective, symmetric_subspace_check, integrator_order_check

__all__ = [
  'ProtocolResult', 'ScheduleStep',
  'SegmentEvolver', 'standard_observables',
  'DecoherenceRates', 'fock_ladder', 'ladder_durations',
  'CatReference', 'cat_reference', 'cat_resonant', 'cat_dispersive', 'collapse_revival',
  'dispersive_cat_state', 'two_branch_purity', 'dispersive_time', 'conditional_mode_state',
  'entangle_samples', 'entangling_time',
  'WignerMeasurement', 'wigner_measurement', 'parity_time',
  'DecoherenceBudget', 'decoherence_budget', 'lindblad_fock_infidelity',
  'full_vs_effective', 'symmetric_subspace_check', 'integrator_order_check',
]
