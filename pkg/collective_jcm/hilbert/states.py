from dataclasses import dataclass
import math
from numbers import Number

from beartype import beartype
from beartype.typing import Sequence
import torch

from collective_jcm.errors import SpaceError, TruncationError
from collective_jcm.hilbert.operator import Operator
from collective_jcm.hilbert.space import (BosonMode, CavityFock, SpaceDescriptor, check_same_space)
from collective_jcm.torch_ops.linalg import dtype, real_dtype

# lost Poisson tail mass allowed when truncating a coherent state
coherent_tail_tolerance = 1e-8


@dataclass(frozen=True, eq=False)
class PureState:
  space: SpaceDescriptor
  amplitudes: torch.Tensor  # (dim,) complex128

  def __post_init__(self):
    if tuple(self.amplitudes.shape) != (self.space.dim,):
      raise SpaceError(f"amplitudes of shape {tuple(self.amplitudes.shape)} "
                       f"do not match space dim {self.space.dim}")
    assert self.amplitudes.dtype == dtype, f"expected {dtype}, got {self.amplitudes.dtype}"

  @property
  def dim(self) -> int:
    return self.space.dim

  @property
  def norm(self) -> float:
    return torch.linalg.vector_norm(self.amplitudes).item()

  def normalized(self) -> 'PureState':
    return PureState(self.space, self.amplitudes / self.norm)

  def overlap(self, other:'PureState') -> complex:
    """ <self|other> """
    check_same_space(self.space, other.space)
    return complex(torch.vdot(self.amplitudes, other.amplitudes).item())

  def expectation(self, op:Operator) -> complex:
    check_same_space(self.space, op.space)
    return complex(torch.vdot(self.amplitudes, op.apply(self.amplitudes)).item())

  def probabilities(self) -> torch.Tensor:
    return self.amplitudes.abs().square()

  def to_density(self) -> 'DensityMatrix':
    return DensityMatrix(self.space, torch.outer(self.amplitudes, self.amplitudes.conj()))

  def __repr__(self):
    return f"PureState({self.space}, norm={self.norm:.12f})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
  space: SpaceDescriptor
  matrix: torch.Tensor  # (dim, dim) complex128

  def __post_init__(self):
    dim = self.space.dim
    if tuple(self.matrix.shape) != (dim, dim):
      raise SpaceError(f"density matrix of shape {tuple(self.matrix.shape)} "
                       f"does not match space dim {dim}")
    assert self.matrix.dtype == dtype, f"expected {dtype}, got {self.matrix.dtype}"

  @property
  def dim(self) -> int:
    return self.space.dim

  @property
  def trace(self) -> float:
    return self.matrix.diagonal().sum().real.item()

  def hermiticity_defect(self) -> float:
    return (self.matrix - self.matrix.mH).abs().max().item()

  def min_eigenvalue(self) -> float:
    return torch.linalg.eigvalsh(self.matrix).min().item()

  def expectation(self, op:Operator) -> complex:
    check_same_space(self.space, op.space)
    return complex(torch.trace(op.dense @ self.matrix).item())

  def populations(self) -> torch.Tensor:
    return self.matrix.diagonal().real

  def __repr__(self):
    return f"DensityMatrix({self.space}, trace={self.trace:.12f})"


def local_basis(dim:int, level:int) -> torch.Tensor:
  v = torch.zeros(dim, dtype=dtype)
  v[level] = 1
  return v


@beartype
def product_state(space:SpaceDescriptor, local_states:Sequence[torch.Tensor]) -> PureState:
  """ Kronecker product of local amplitude vectors, one per factor. """
  if len(local_states) != len(space):
    raise SpaceError(f"expected {len(space)} local states, got {len(local_states)}")

  amplitudes = torch.ones(1, dtype=dtype)
  for i, (v, d) in enumerate(zip(local_states, space.dims)):
    if v.shape != (d,):
      raise SpaceError(f"local state {i} has shape {tuple(v.shape)}, factor dim is {d}")
    amplitudes = torch.kron(amplitudes, v.to(dtype))
  return PureState(space, amplitudes)


@beartype
def basis_state(space:SpaceDescriptor, levels:Sequence[int]) -> PureState:
  """ Product of local basis states, levels[i] indexes factor i (|g>=0, |e>=1). """
  if len(levels) != len(space):
    raise SpaceError(f"expected {len(space)} levels, got {len(levels)}")

  for i, (k, d) in enumerate(zip(levels, space.dims)):
    if not 0 <= k < d:
      raise SpaceError(f"level {k} out of range for factor {i} of dim {d}")
  return product_state(space, [local_basis(d, k) for k, d in zip(levels, space.dims)])


def with_local_state(space:SpaceDescriptor, factor_index:int, v:torch.Tensor) -> PureState:
  """ Given state on one factor, every other factor in its lowest level. """
  local_states = [local_basis(d, 0) for d in space.dims]
  local_states[factor_index] = v
  return product_state(space, local_states)


@beartype
def fock_state(space:SpaceDescriptor, factor_index:int, n:int) -> PureState:
  factor = space[factor_index]
  if not 0 <= n < factor.dim:
    raise TruncationError(f"level {n} exceeds truncation of {factor}")
  return with_local_state(space, factor_index, local_basis(factor.dim, n))


def poisson_log_weights(mean:float, n_max:int) -> torch.Tensor:
  n = torch.arange(n_max + 1, dtype=real_dtype)
  if mean == 0:
    weights = torch.full_like(n, -math.inf)
    weights[0] = 0
    return weights
  return -mean + n * math.log(mean) - torch.lgamma(n + 1)


def coherent_tail_mass(alpha:complex, n_max:int) -> float:
  """ Poisson weight of |alpha> above n_max. """
  weights = poisson_log_weights(abs(alpha) ** 2, n_max).exp()
  return max(0., 1. - weights.sum().item())


def check_coherent_truncation(alpha:complex, n_max:int):
  mean = abs(alpha) ** 2
  if mean > n_max / 4:
    raise TruncationError(f"|alpha|^2={mean:.4g} exceeds n_max/4={n_max / 4:.4g}, increase the truncation")

  tail = coherent_tail_mass(alpha, n_max)
  if tail > coherent_tail_tolerance:
    raise TruncationError(f"coherent state |alpha|^2={mean:.4g} loses tail mass {tail:.3g} above n_max={n_max}")


def coherent_truncation(alpha:complex, minimum:int = 1) -> int:
  """ Smallest n_max which passes the coherent state truncation guard. """
  n_max = max(minimum, math.ceil(4 * abs(alpha) ** 2), 1)
  while coherent_tail_mass(alpha, n_max) > coherent_tail_tolerance:
    n_max += 1
  return n_max


@beartype
def coherent_amplitudes(alpha:Number, n_max:int) -> torch.Tensor:
  """ e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n = 0..n_max, renormalized. """
  alpha = complex(alpha)
  check_coherent_truncation(alpha, n_max)
  if alpha == 0:
    return local_basis(n_max + 1, 0)

  n = torch.arange(n_max + 1, dtype=real_dtype)
  log_mag = 0.5 * poisson_log_weights(abs(alpha) ** 2, n_max)
  phase = n * math.atan2(alpha.imag, alpha.real)
  amplitudes = torch.polar(log_mag.exp(), phase)
  return amplitudes / torch.linalg.vector_norm(amplitudes)


@beartype
def coherent_state(space:SpaceDescriptor, factor_index:int, alpha:Number) -> PureState:
  factor = space.check_factor(factor_index, BosonMode, CavityFock)
  return with_local_state(space, factor_index, coherent_amplitudes(alpha, factor.n_max))
