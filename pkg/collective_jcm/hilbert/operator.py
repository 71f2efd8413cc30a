from dataclasses import dataclass
from functools import cached_property
from numbers import Number

from beartype import beartype
from beartype.typing import Sequence, Tuple, Union
import torch

from collective_jcm.errors import SpaceError
from collective_jcm.hilbert.space import SpaceDescriptor, check_same_space, make_space
from collective_jcm.torch_ops.linalg import (Triplets, dense_triplets, dtype, hermitian_part,
  identity_triplets, kron_triplets)

# above this dimension products are taken with torch.sparse.mm instead of dense matmul
sparse_matmul_dim = 1024


def coalesce_triplets(rows:torch.Tensor, cols:torch.Tensor, values:torch.Tensor, dim:int) -> torch.Tensor:
  """ Sparse (dim, dim) matrix in canonical row-major order with duplicates summed
  and exact zeros removed. """
  m = torch.sparse_coo_tensor(torch.stack([rows.long(), cols.long()]),
    values.to(dtype), size=(dim, dim)).coalesce()

  values = m.values()
  keep = values != 0
  if keep.all():
    return m

  return torch.sparse_coo_tensor(m.indices()[:, keep], values[keep],
    size=(dim, dim)).coalesce()


@dataclass(frozen=True, eq=False)
class Operator:
  """ Sparse complex matrix acting on a composite space.

  Entries are stored as a coalesced COO tensor, a dense copy is built
  lazily for propagation.
  """
  space: SpaceDescriptor
  matrix: torch.Tensor

  def __post_init__(self):
    dim = self.space.dim
    if tuple(self.matrix.shape) != (dim, dim):
      raise SpaceError(f"operator shape {tuple(self.matrix.shape)} does not match space dim {dim}")

    assert self.matrix.is_sparse and self.matrix.is_coalesced(), "expected coalesced sparse matrix"
    assert self.matrix.dtype == dtype, f"expected {dtype}, got {self.matrix.dtype}"

  @staticmethod
  def from_triplets(space:SpaceDescriptor, rows:torch.Tensor, cols:torch.Tensor, values:torch.Tensor) -> 'Operator':
    dim = space.dim
    if rows.numel() > 0 and (rows.max() >= dim or cols.max() >= dim or rows.min() < 0 or cols.min() < 0):
      raise SpaceError(f"entry index out of range for space of dim {dim}")
    return Operator(space, coalesce_triplets(rows, cols, values, dim))

  @staticmethod
  def from_dense(space:SpaceDescriptor, m:torch.Tensor) -> 'Operator':
    if tuple(m.shape) != (space.dim, space.dim):
      raise SpaceError(f"dense shape {tuple(m.shape)} does not match space dim {space.dim}")
    return Operator.from_triplets(space, *dense_triplets(m))

  @staticmethod
  def identity(space:SpaceDescriptor) -> 'Operator':
    return Operator.from_triplets(space, *identity_triplets(space.dim))

  @staticmethod
  def zeros(space:SpaceDescriptor) -> 'Operator':
    empty = torch.zeros(0, dtype=torch.int64)
    return Operator.from_triplets(space, empty, empty, torch.zeros(0, dtype=dtype))

  @property
  def dim(self) -> int:
    return self.space.dim

  @property
  def nnz(self) -> int:
    return self.matrix.values().shape[0]

  @property
  def triplets(self) -> Triplets:
    indices = self.matrix.indices()
    return indices[0], indices[1], self.matrix.values()

  @cached_property
  def dense(self) -> torch.Tensor:
    return self.matrix.to_dense()

  def entry(self, row:int, col:int) -> complex:
    return complex(self.dense[row, col].item())

  def diagonal(self) -> torch.Tensor:
    return self.dense.diagonal()

  def dag(self) -> 'Operator':
    rows, cols, values = self.triplets
    return Operator.from_triplets(self.space, cols, rows, values.conj())

  def __add__(self, other:'Operator') -> 'Operator':
    check_same_space(self.space, other.space)
    return Operator(self.space, coalesce_triplets(
      *[torch.cat(x) for x in zip(self.triplets, other.triplets)], self.dim))

  def __neg__(self) -> 'Operator':
    return -1 * self

  def __sub__(self, other:'Operator') -> 'Operator':
    return self + (-other)

  def __mul__(self, scale:Number) -> 'Operator':
    rows, cols, values = self.triplets
    return Operator.from_triplets(self.space, rows, cols, values * complex(scale))

  __rmul__ = __mul__

  def __truediv__(self, scale:Number) -> 'Operator':
    return self * (1 / complex(scale))

  def __matmul__(self, other:Union['Operator', torch.Tensor]):
    if isinstance(other, torch.Tensor):
      return self.apply(other)

    check_same_space(self.space, other.space)
    if self.dim < sparse_matmul_dim:
      return Operator.from_dense(self.space, self.dense @ other.dense)

    return Operator(self.space, torch.sparse.mm(self.matrix, other.matrix).coalesce())

  def apply(self, x:torch.Tensor) -> torch.Tensor:
    """ Multiply a vector (dim,) or a stack of columns (dim, k). """
    if x.shape[0] != self.dim:
      raise SpaceError(f"vector of length {x.shape[0]} does not match operator dim {self.dim}")

    if self.dim < sparse_matmul_dim:
      return self.dense @ x

    if x.dim() == 1:
      return torch.sparse.mm(self.matrix, x.unsqueeze(1)).squeeze(1)
    return torch.sparse.mm(self.matrix, x)

  def commutator(self, other:'Operator') -> 'Operator':
    return self @ other - other @ self

  def anticommutator(self, other:'Operator') -> 'Operator':
    return self @ other + other @ self

  def max_abs(self) -> float:
    values = self.matrix.values()
    return values.abs().max().item() if values.numel() > 0 else 0.

  def hermiticity_defect(self) -> float:
    return (self - self.dag()).max_abs()

  def is_hermitian(self, tol:float = 1e-14) -> bool:
    return self.hermiticity_defect() <= tol

  def hermitian_part(self) -> 'Operator':
    return Operator.from_dense(self.space, hermitian_part(self.dense))

  def same_entries(self, other:'Operator') -> bool:
    """ Bit-identical entry lists, spaces compared by dimension only. """
    if self.dim != other.dim or self.nnz != other.nnz:
      return False
    return all(torch.equal(a, b) for a, b in zip(self.triplets, other.triplets))

  def kron(self, other:'Operator') -> 'Operator':
    space = make_space(self.space.factors + other.space.factors)
    return Operator.from_triplets(space, *kron_triplets(self.triplets, self.dim, other.triplets, other.dim))

  def __repr__(self):
    return f"Operator({self.space}, nnz={self.nnz})"


def embed_triplets(space:SpaceDescriptor, index:int, local:Triplets) -> Triplets:
  dims = space.dims
  before = 1
  for d in dims[:index]:
    before *= d
  after = space.dim // (before * dims[index])

  triplets = kron_triplets(identity_triplets(before), before, local, dims[index])
  return kron_triplets(triplets, before * dims[index], identity_triplets(after), after)


@beartype
def embed(local_op:Operator, space:SpaceDescriptor, factor_index:int) -> Operator:
  """ Lift an operator on one factor to the full space, identity elsewhere. """
  if not 0 <= factor_index < len(space):
    raise SpaceError(f"factor index {factor_index} out of range for {len(space)} factors")

  if local_op.dim != space.dims[factor_index]:
    raise SpaceError(f"local operator dim {local_op.dim} does not match "
                     f"factor {factor_index} of dim {space.dims[factor_index]}")

  return Operator.from_triplets(space, *embed_triplets(space, factor_index, local_op.triplets))


def sum_operators(ops:Sequence[Operator], space:SpaceDescriptor) -> Operator:
  total = Operator.zeros(space)
  for op in ops:
    total = total + op
  return total


@dataclass(frozen=True, eq=False)
class TimeDependentOperator:
  """ H(t) = sum_k O_k exp(i w_k t), with the static parts O_k stacked densely
  for repeated evaluation. """
  space: SpaceDescriptor
  terms: Tuple[Tuple[Operator, float], ...]

  def __post_init__(self):
    for op, _ in self.terms:
      check_same_space(self.space, op.space)

  @cached_property
  def stacked(self) -> torch.Tensor:
    if len(self.terms) == 0:
      return torch.zeros(0, self.space.dim, self.space.dim, dtype=dtype)
    return torch.stack([op.dense for op, _ in self.terms])

  @cached_property
  def frequencies(self) -> torch.Tensor:
    return torch.tensor([w for _, w in self.terms], dtype=torch.float64)

  def phases(self, t:float) -> torch.Tensor:
    return torch.exp(1j * self.frequencies.to(dtype) * t)

  def at(self, t:float) -> Operator:
    total = Operator.zeros(self.space)
    for (op, w), phase in zip(self.terms, self.phases(t).tolist()):
      total = total + op * phase
    return total

  def apply(self, t:float, x:torch.Tensor) -> torch.Tensor:
    """ H(t) x for a vector x, without forming H(t). """
    if len(self.terms) == 0:
      return torch.zeros_like(x)
    return self.phases(t) @ (self.stacked @ x)

  def norm_bound(self) -> float:
    """ Upper bound on ||H(t)|| over all t from the row sums of |O_k|. """
    if len(self.terms) == 0:
      return 0.
    return self.stacked.abs().sum(dim=0).sum(dim=-1).max().item()

  def max_frequency(self) -> float:
    if len(self.terms) == 0:
      return 0.
    return self.frequencies.abs().max().item()
