from .fidelity import (fidelity, reduce, purity, entanglement_entropy, binary_entropy, w_entropy,
  expectation, w_state)
from .wigner import (WignerMap, make_grid, displacement, wigner_exact, wigner_series_map,
  integrate_wigner, wigner_working_truncation, fringe_profile)
from .bosonization import bosonization_defect, commutator_defects
from .envelope import (CollapseRevival, find_envelope, detect_collapse, detect_revival,
  collapse_revival_times)

__all__ = [
  'fidelity', 'reduce', 'purity', 'entanglement_entropy', 'binary_entropy', 'w_entropy',
  'expectation', 'w_state',
  'WignerMap', 'make_grid', 'displacement', 'wigner_exact', 'wigner_series_map',
  'integrate_wigner', 'wigner_working_truncation', 'fringe_profile',
  'bosonization_defect', 'commutator_defects',
  'CollapseRevival', 'find_envelope', 'detect_collapse', 'detect_revival', 'collapse_revival_times',
]
