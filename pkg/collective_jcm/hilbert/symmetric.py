import math

from beartype import beartype
import torch

from collective_jcm.errors import SpaceError
from collective_jcm.hilbert.space import AtomQubit, CollectiveDicke, SpaceDescriptor, make_space
from collective_jcm.hilbert.states import PureState
from collective_jcm.torch_ops.linalg import dtype

# brute force per-atom spaces grow as 2^N
max_brute_force_atoms = 8


def excitation_counts(n_atoms:int) -> torch.Tensor:
  """ Number of excited atoms in each per-atom basis state, atom 0 is the most significant bit. """
  idx = torch.arange(2 ** n_atoms, dtype=torch.int64)
  bits = (idx.unsqueeze(1) >> torch.arange(n_atoms - 1, -1, -1)) & 1
  return bits.sum(dim=1)


@beartype
def dicke_isometry(n_atoms:int, m_max:int) -> torch.Tensor:
  """ (2^N, m_max + 1) matrix whose column m is the normalized symmetric state
  with m excitations. """
  if n_atoms > max_brute_force_atoms:
    raise SpaceError(f"per-atom representation limited to {max_brute_force_atoms} atoms, got {n_atoms}")

  counts = excitation_counts(n_atoms)
  columns = []
  for m in range(m_max + 1):
    column = (counts == m).to(dtype)
    columns.append(column / math.sqrt(math.comb(n_atoms, m)))
  return torch.stack(columns, dim=1)


@beartype
def symmetric_dicke_state(n_atoms:int, m:int) -> torch.Tensor:
  return dicke_isometry(n_atoms, n_atoms)[:, m]


@beartype
def per_atom_space(space:SpaceDescriptor) -> SpaceDescriptor:
  """ Replace the (single) CollectiveDicke factor by N AtomQubit factors. """
  index = space.index_of(CollectiveDicke)
  factor = space[index]
  factors = space.factors[:index] + (AtomQubit(),) * factor.n_atoms + space.factors[index + 1:]
  return make_space(factors)


@beartype
def embed_symmetric(state:PureState) -> PureState:
  """ Map a state on a space with one CollectiveDicke factor to the equivalent state
  on the per-atom space, each |m> becoming the symmetric state with m excitations. """
  space = state.space
  index = space.index_of(CollectiveDicke)
  factor = space[index]

  dims = space.dims
  before = math.prod(dims[:index])
  after = math.prod(dims[index + 1:])

  isometry = dicke_isometry(factor.n_atoms, factor.m_max)
  amplitudes = state.amplitudes.reshape(before, factor.dim, after)
  mapped = torch.einsum('am,bmc->bac', isometry, amplitudes)
  return PureState(per_atom_space(space), mapped.reshape(-1))
