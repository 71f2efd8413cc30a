from .space import (ControlQubit, AtomQubit, CollectiveDicke, BosonMode, CavityFock, Factor,
  SpaceDescriptor, make_space, check_same_space)
from .operator import (Operator, TimeDependentOperator, embed,
  sum_operators)
from .ladder import (qubit_lowering, collective_lowering, boson_annihilation, mode_lowering,
  number_operator, mode_products, mode_product_operators, collective_sz, local_projector,
  ControlOps, control_ops, per_atom_lowering, sample_lowerings)
from .states import (PureState, DensityMatrix, product_state, basis_state, fock_state,
  coherent_amplitudes, coherent_state, coherent_truncation, coherent_tail_mass)
from .symmetric import dicke_isometry, symmetric_dicke_state, per_atom_space, embed_symmetric

__all__ = [
  'ControlQubit', 'AtomQubit', 'CollectiveDicke', 'BosonMode', 'CavityFock', 'Factor',
  'SpaceDescriptor', 'make_space', 'check_same_space',
  'Operator', 'TimeDependentOperator', 'embed', 'sum_operators',
  'qubit_lowering', 'collective_lowering', 'boson_annihilation', 'mode_lowering',
  'number_operator', 'mode_products', 'mode_product_operators', 'collective_sz', 'local_projector',
  'ControlOps', 'control_ops', 'per_atom_lowering', 'sample_lowerings',
  'PureState', 'DensityMatrix', 'product_state', 'basis_state', 'fock_state',
  'coherent_amplitudes', 'coherent_state', 'coherent_truncation', 'coherent_tail_mass',
  'dicke_isometry', 'symmetric_dicke_state', 'per_atom_space', 'embed_symmetric',
]
