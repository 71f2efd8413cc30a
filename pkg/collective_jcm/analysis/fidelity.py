import math

from beartype import beartype
from beartype.typing import Sequence, Union
import torch

from collective_jcm.errors import SpaceError
from collective_jcm.hilbert.operator import Operator
from collective_jcm.hilbert.space import SpaceDescriptor, check_same_space
from collective_jcm.hilbert.states import DensityMatrix, PureState, local_basis
from collective_jcm.torch_ops.linalg import dtype, sqrtm_psd

State = Union[PureState, DensityMatrix]

# eigenvalues below this are dropped from the entropy sum
entropy_cutoff = 1e-12


def clip_unit(x:float) -> float:
  return min(1., max(0., x))


@beartype
def fidelity(a:State, b:State) -> float:
  """ |<a|b>|^2 for pure states, <b|rho|b> for a mixed and a pure state,
  Uhlmann (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 for two mixed states. """
  check_same_space(a.space, b.space)

  if isinstance(a, PureState) and isinstance(b, PureState):
    return clip_unit(abs(torch.vdot(a.amplitudes, b.amplitudes).item()) ** 2)

  if isinstance(a, PureState):
    a, b = b, a

  if isinstance(b, PureState):
    v = b.amplitudes
    return clip_unit(torch.vdot(v, a.matrix @ v).real.item())

  root = sqrtm_psd(a.matrix)
  inner = torch.linalg.eigvalsh(root @ b.matrix @ root).clamp(min=0)
  return clip_unit(inner.sqrt().sum().item() ** 2)


def _check_keep(space:SpaceDescriptor, keep:Sequence[int]):
  if len(keep) == 0:
    raise SpaceError("reduce needs at least one factor to keep")
  if len(set(keep)) != len(keep):
    raise SpaceError(f"repeated factor index in {list(keep)}")
  for i in keep:
    if not 0 <= i < len(space):
      raise SpaceError(f"factor index {i} out of range for {len(space)} factors")


@beartype
def reduce(state:State, keep:Sequence[int]) -> DensityMatrix:
  """ Partial trace over every factor not in `keep`, kept factors stay in descriptor order. """
  space = state.space
  _check_keep(space, keep)
  keep = sorted(keep)
  traced = [i for i in range(len(space)) if i not in keep]

  dims = space.dims
  kept_dim = math.prod(dims[i] for i in keep)
  sub = space.subspace(keep)

  if isinstance(state, PureState):
    psi = state.amplitudes.reshape(dims).permute(*keep, *traced).reshape(kept_dim, -1)
    return DensityMatrix(sub, psi @ psi.mH)

  n = len(dims)
  rho = state.matrix.reshape(dims + dims)
  rho = rho.permute(*keep, *traced, *[n + i for i in keep], *[n + i for i in traced])
  rest = math.prod(dims[i] for i in traced)
  rho = rho.reshape(kept_dim, rest, kept_dim, rest)
  return DensityMatrix(sub, torch.einsum('arbr->ab', rho))


@beartype
def purity(state:State) -> float:
  if isinstance(state, PureState):
    return 1.
  return torch.einsum('ij,ji->', state.matrix, state.matrix).real.item()


@beartype
def entanglement_entropy(rho:DensityMatrix) -> float:
  """ von Neumann entropy in bits. """
  evals = torch.linalg.eigvalsh(rho.matrix)
  evals = evals[evals >= entropy_cutoff]
  return max(0., -(evals * torch.log2(evals)).sum().item())


def binary_entropy(p:float) -> float:
  return -sum(x * math.log2(x) for x in (p, 1 - p) if x > 0)


def w_entropy(n:int) -> float:
  """ Single mode entropy of an n-mode W state, eigenvalues (1/n, (n-1)/n). """
  return binary_entropy(1 / n)


@beartype
def expectation(state:State, op:Operator) -> complex:
  return state.expectation(op)


@beartype
def w_state(space:SpaceDescriptor, factors:Sequence[int]) -> PureState:
  """ (|10..0> + |01..0> + ... + |0..01>) / sqrt(n) over the given factors, every other
  factor in its lowest level. """
  dims = space.dims
  amplitudes = torch.zeros(space.dim, dtype=dtype)
  for j in factors:
    local = [local_basis(d, 1 if i == j else 0) for i, d in enumerate(dims)]
    v = torch.ones(1, dtype=dtype)
    for x in local:
      v = torch.kron(v, x)
    amplitudes = amplitudes + v
  return PureState(space, amplitudes / math.sqrt(len(factors)))
