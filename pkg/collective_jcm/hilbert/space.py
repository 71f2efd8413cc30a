from dataclasses import dataclass
from math import prod
from beartype import beartype
from beartype.typing import Sequence, Tuple, Type, Union

from collective_jcm.errors import SpaceError


@beartype
@dataclass(frozen=True)
class ControlQubit:
  """ The driven control atom, basis order (|g>, |e>). """

  @property
  def dim(self) -> int:
    return 2


@beartype
@dataclass(frozen=True)
class AtomQubit:
  """ A single sample atom, used for per-atom (brute force) representations. """

  @property
  def dim(self) -> int:
    return 2


@beartype
@dataclass(frozen=True)
class CollectiveDicke:
  """ Symmetric Dicke ladder |m>, m = 0..m_max excitations shared by n_atoms. """
  n_atoms: int
  m_max: int

  def __post_init__(self):
    if self.n_atoms < 1:
      raise SpaceError(f"CollectiveDicke: n_atoms must be >= 1, got {self.n_atoms}")
    if self.m_max < 1:
      raise SpaceError(f"CollectiveDicke: m_max must be >= 1, got {self.m_max}")
    if self.m_max > self.n_atoms:
      raise SpaceError(f"CollectiveDicke: m_max={self.m_max} exceeds n_atoms={self.n_atoms}")

  @property
  def dim(self) -> int:
    return self.m_max + 1


@beartype
@dataclass(frozen=True)
class BosonMode:
  """ Ideal bosonic collective mode truncated at n_max quanta. """
  n_max: int

  def __post_init__(self):
    if self.n_max < 1:
      raise SpaceError(f"BosonMode: n_max must be >= 1, got {self.n_max}")

  @property
  def dim(self) -> int:
    return self.n_max + 1


@beartype
@dataclass(frozen=True)
class CavityFock:
  """ Cavity field truncated at n_max photons. """
  n_max: int

  def __post_init__(self):
    if self.n_max < 1:
      raise SpaceError(f"CavityFock: n_max must be >= 1, got {self.n_max}")

  @property
  def dim(self) -> int:
    return self.n_max + 1


Factor = Union[ControlQubit, AtomQubit, CollectiveDicke, BosonMode, CavityFock]

# factors which carry a collective atomic mode
ModeFactor = (CollectiveDicke, BosonMode)
LadderFactor = (BosonMode, CavityFock)


@beartype
@dataclass(frozen=True)
class SpaceDescriptor:
  factors: Tuple[Factor, ...]

  def __post_init__(self):
    if len(self.factors) == 0:
      raise SpaceError("SpaceDescriptor: empty factor list")

  @property
  def dims(self) -> Tuple[int, ...]:
    return tuple(f.dim for f in self.factors)

  @property
  def dim(self) -> int:
    return prod(self.dims)

  def __len__(self) -> int:
    return len(self.factors)

  def __getitem__(self, index:int) -> Factor:
    return self.factors[index]

  def indices_of(self, *kinds:Type) -> Tuple[int, ...]:
    return tuple(i for i, f in enumerate(self.factors) if isinstance(f, kinds))

  def index_of(self, kind:Type) -> int:
    found = self.indices_of(kind)
    if len(found) != 1:
      raise SpaceError(f"expected exactly one {kind.__name__} factor in {self}, found {len(found)}")
    return found[0]

  def has(self, kind:Type) -> bool:
    return len(self.indices_of(kind)) > 0

  def check_factor(self, index:int, *kinds:Type) -> Factor:
    if not 0 <= index < len(self.factors):
      raise SpaceError(f"factor index {index} out of range for {len(self.factors)} factors")

    factor = self.factors[index]
    if not isinstance(factor, kinds):
      names = "|".join(k.__name__ for k in kinds)
      raise SpaceError(f"factor {index} is {type(factor).__name__}, expected {names}")
    return factor

  def subspace(self, keep:Sequence[int]) -> 'SpaceDescriptor':
    return SpaceDescriptor(tuple(self.factors[i] for i in keep))

  def replace_factor(self, index:int, factor:Factor) -> 'SpaceDescriptor':
    factors = list(self.factors)
    factors[index] = factor
    return SpaceDescriptor(tuple(factors))

  def __repr__(self):
    names = ", ".join(repr(f) for f in self.factors)
    return f"SpaceDescriptor([{names}], dim={self.dim})"


@beartype
def make_space(factors:Sequence[Factor]) -> SpaceDescriptor:
  """ Build a composite space, factor order fixes the Kronecker order of all
  operators and states built on it. """
  return SpaceDescriptor(tuple(factors))


def check_same_space(a:SpaceDescriptor, b:SpaceDescriptor):
  if a != b:
    raise SpaceError(f"space mismatch: {a} != {b}")
