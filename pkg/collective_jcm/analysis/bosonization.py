from beartype import beartype
from beartype.typing import Optional, Tuple, Union
import torch

from collective_jcm.hilbert.ladder import mode_lowering, number_operator
from collective_jcm.hilbert.operator import Operator
from collective_jcm.hilbert.space import CollectiveDicke, SpaceDescriptor
from collective_jcm.hilbert.states import DensityMatrix, PureState


def dicke_index(space:SpaceDescriptor, factor_index:Optional[int]) -> int:
  if factor_index is None:
    return space.index_of(CollectiveDicke)
  space.check_factor(factor_index, CollectiveDicke)
  return factor_index


@beartype
def bosonization_defect(state:Union[PureState, DensityMatrix],
                        factor_index:Optional[int] = None) -> float:
  """ <2 n_b / N>, the expected deviation of [b, b+] = 1 - 2 n_b / N from unity
  for b = S- / sqrt(N). """
  index = dicke_index(state.space, factor_index)
  n_atoms = state.space[index].n_atoms
  return 2 * state.expectation(number_operator(state.space, index)).real / n_atoms


def lower_block(space:SpaceDescriptor, index:int) -> torch.Tensor:
  """ Mask of basis states with m < m_max on the given Dicke factor. """
  factor = space[index]
  m = torch.arange(factor.dim).reshape(*([1] * index), factor.dim, *([1] * (len(space) - index - 1)))
  return (m.expand(space.dims) < factor.m_max).reshape(-1)


def block_defect(op:Operator, target:Operator, mask:torch.Tensor) -> float:
  diff = (op - target).dense
  return diff[mask][:, mask].abs().max().item() if mask.any() else 0.


@beartype
def commutator_defects(space:SpaceDescriptor, factor_index:Optional[int] = None) -> Tuple[float, float, float]:
  """ Largest entry errors of the identities

    [b, b+] = 1 - 2 n_b / N,   [n_b, b+] = b+,   [n_b, b] = -b

  on the sub-block m < m_max of a Dicke factor. """
  index = dicke_index(space, factor_index)
  n_atoms = space[index].n_atoms
  mask = lower_block(space, index)

  b = mode_lowering(space, index)
  n_b = number_operator(space, index)
  identity = Operator.identity(space)

  return (block_defect(b.commutator(b.dag()), identity - (2 / n_atoms) * n_b, mask),
          block_defect(n_b.commutator(b.dag()), b.dag(), mask),
          block_defect(n_b.commutator(b), -b, mask))
