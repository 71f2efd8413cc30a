from dataclasses import dataclass
import math

from beartype import beartype
from beartype.typing import List, Tuple
import torch

from collective_jcm.errors import SpaceError
from collective_jcm.hilbert.operator import Operator, embed_triplets
from collective_jcm.hilbert.space import (AtomQubit, BosonMode, CavityFock, CollectiveDicke,
  ControlQubit, Factor, SpaceDescriptor)
from collective_jcm.torch_ops.linalg import dtype, real_dtype


def _lowering_triplets(elements:torch.Tensor):
  """ Triplets for an operator with entries <k-1|op|k> = elements[k-1], k = 1..n """
  n = elements.shape[0]
  cols = torch.arange(1, n + 1, dtype=torch.int64)
  return cols - 1, cols, elements.to(dtype)


def _diagonal_triplets(diag:torch.Tensor):
  idx = torch.arange(diag.shape[0], dtype=torch.int64)
  return idx, idx.clone(), diag.to(dtype)


def _embedded(space:SpaceDescriptor, index:int, local) -> Operator:
  return Operator.from_triplets(space, *embed_triplets(space, index, local))


def dicke_lowering_elements(factor:CollectiveDicke) -> torch.Tensor:
  """ <m-1|S-|m> = sqrt(m (N - m + 1)) for m = 1..m_max """
  m = torch.arange(1, factor.m_max + 1, dtype=real_dtype)
  return torch.sqrt(m * (factor.n_atoms - m + 1))


def boson_lowering_elements(n_max:int) -> torch.Tensor:
  return torch.sqrt(torch.arange(1, n_max + 1, dtype=real_dtype))


@beartype
def qubit_lowering(space:SpaceDescriptor, factor_index:int) -> Operator:
  """ sigma- = |g><e| on a ControlQubit or AtomQubit factor. """
  space.check_factor(factor_index, ControlQubit, AtomQubit)
  return _embedded(space, factor_index, _lowering_triplets(torch.ones(1, dtype=real_dtype)))


@beartype
def collective_lowering(space:SpaceDescriptor, factor_index:int) -> Operator:
  """ Unnormalized collective S- on a CollectiveDicke factor. """
  factor = space.check_factor(factor_index, CollectiveDicke)
  return _embedded(space, factor_index, _lowering_triplets(dicke_lowering_elements(factor)))


@beartype
def boson_annihilation(space:SpaceDescriptor, factor_index:int) -> Operator:
  factor = space.check_factor(factor_index, BosonMode, CavityFock)
  return _embedded(space, factor_index, _lowering_triplets(boson_lowering_elements(factor.n_max)))


@beartype
def mode_lowering(space:SpaceDescriptor, factor_index:int) -> Operator:
  """ Normalized mode operator b: the boson annihilator, or S-/sqrt(N) on a Dicke factor. """
  factor = space.check_factor(factor_index, BosonMode, CollectiveDicke, CavityFock)
  if isinstance(factor, CollectiveDicke):
    elements = dicke_lowering_elements(factor) / math.sqrt(factor.n_atoms)
    return _embedded(space, factor_index, _lowering_triplets(elements))
  return boson_annihilation(space, factor_index)


def number_diagonal(factor:Factor) -> torch.Tensor:
  """ Excitation number of each local basis state. """
  return torch.arange(factor.dim, dtype=real_dtype)


def mode_products(factor:Factor) -> Tuple[torch.Tensor, torch.Tensor]:
  """ Exact diagonals of (b+ b, b b+) on a mode factor, without truncation artifacts at the
  top level. On a Dicke factor b = S-/sqrt(N), so b+ b = m (N - m + 1) / N and
  b b+ = (m + 1)(N - m) / N. """
  m = number_diagonal(factor)
  if isinstance(factor, CollectiveDicke):
    n = factor.n_atoms
    return m * (n - m + 1) / n, (m + 1) * (n - m) / n

  assert isinstance(factor, (BosonMode, CavityFock)), f"not a mode factor: {factor}"
  return m, m + 1


@beartype
def number_operator(space:SpaceDescriptor, factor_index:int) -> Operator:
  """ n on a ladder factor, n_b = m on a Dicke factor, |e><e| on a qubit. """
  factor = space[factor_index]
  return _embedded(space, factor_index, _diagonal_triplets(number_diagonal(factor)))


@beartype
def mode_product_operators(space:SpaceDescriptor, factor_index:int) -> Tuple[Operator, Operator]:
  factor = space.check_factor(factor_index, BosonMode, CollectiveDicke, CavityFock)
  bdag_b, b_bdag = mode_products(factor)
  return (_embedded(space, factor_index, _diagonal_triplets(bdag_b)),
          _embedded(space, factor_index, _diagonal_triplets(b_bdag)))


@beartype
def collective_sz(space:SpaceDescriptor, factor_index:int) -> Operator:
  """ S_z: diag(-1/2, 1/2) on a qubit, m - N/2 on a Dicke factor. """
  factor = space.check_factor(factor_index, ControlQubit, AtomQubit, CollectiveDicke)
  n_atoms = factor.n_atoms if isinstance(factor, CollectiveDicke) else 1
  return _embedded(space, factor_index, _diagonal_triplets(number_diagonal(factor) - n_atoms / 2))


@beartype
def local_projector(space:SpaceDescriptor, factor_index:int, level:int) -> Operator:
  factor = space[factor_index]
  if not 0 <= level < factor.dim:
    raise SpaceError(f"level {level} out of range for {factor}")

  diag = torch.zeros(factor.dim, dtype=real_dtype)
  diag[level] = 1
  return _embedded(space, factor_index, _diagonal_triplets(diag))


@beartype
@dataclass(frozen=True, eq=False)
class ControlOps:
  lower: Operator
  raise_: Operator
  sz: Operator
  excited: Operator
  ground: Operator

  @property
  def sigma_x(self) -> Operator:
    return self.lower + self.raise_

  @property
  def sigma_y(self) -> Operator:
    """ -i|e><g| + i|g><e| """
    return 1j * self.lower - 1j * self.raise_


@beartype
def control_ops(space:SpaceDescriptor) -> ControlOps:
  index = space.index_of(ControlQubit)
  lower = qubit_lowering(space, index)
  return ControlOps(
    lower=lower,
    raise_=lower.dag(),
    sz=collective_sz(space, index),
    excited=local_projector(space, index, 1),
    ground=local_projector(space, index, 0))


@beartype
def per_atom_lowering(space:SpaceDescriptor) -> List[Operator]:
  """ sigma- on every AtomQubit factor, in factor order. """
  indices = space.indices_of(AtomQubit)
  if len(indices) == 0:
    raise SpaceError(f"no AtomQubit factors in {space}")
  return [qubit_lowering(space, i) for i in indices]


@beartype
def sample_lowerings(space:SpaceDescriptor) -> List[Operator]:
  """ Collective lowering of each sample: S- per Dicke factor, or a single summed
  sigma- over all AtomQubit factors. """
  dicke = space.indices_of(CollectiveDicke)
  if len(dicke) > 0:
    return [collective_lowering(space, i) for i in dicke]

  atoms = per_atom_lowering(space)
  total = atoms[0]
  for op in atoms[1:]:
    total = total + op
  return [total]
