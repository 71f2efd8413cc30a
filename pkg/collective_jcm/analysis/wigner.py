""" Wigner function of a single mode from the displaced parity,

  W(beta) = (2/pi) Tr[D(-beta) rho D(beta) P],  P = (-1)^n

displacements are built on a working truncation large enough to hold the displaced
support of the state, so both the direct evaluation here and the simulated
measurement protocol see the same D(beta).
"""
from dataclasses import dataclass
import math
from numbers import Number, Real

from beartype import beartype
from beartype.typing import Optional, Union
import torch

from collective_jcm.errors import SpaceError, TruncationError
from collective_jcm.hilbert.space import BosonMode, CavityFock
from collective_jcm.hilbert.states import DensityMatrix, PureState
from collective_jcm.taichi_lib.wigner_series import wigner_series
from collective_jcm.torch_ops.linalg import dtype, expm_antihermitian, real_dtype

State = Union[PureState, DensityMatrix]

# populations below this do not count towards the support of a state
support_cutoff = 1e-12

# population allowed to reach the top levels of the working truncation after displacement
edge_tolerance = 1e-9
edge_levels = 4


@dataclass(frozen=True)
class WignerMap:
  """ W sampled at complex points beta (any grid shape), spacing is the uniform
  grid step in both quadratures (0 when the points are not a grid). """
  betas: torch.Tensor
  values: torch.Tensor
  spacing: float
  imag_residue: float = 0.

  def __post_init__(self):
    assert self.betas.shape == self.values.shape, \
      f"betas {tuple(self.betas.shape)} and values {tuple(self.values.shape)} differ in shape"

  def max_abs_difference(self, other:'WignerMap') -> float:
    assert torch.equal(self.betas, other.betas), "maps are sampled on different grids"
    return (self.values - other.values).abs().max().item()

  def at(self, beta:complex) -> float:
    """ Value at the grid point closest to beta. """
    i = (self.betas - complex(beta)).abs().argmin()
    return self.values.reshape(-1)[i].item()


@beartype
def make_grid(center:Number, half_width:Real, points:int) -> torch.Tensor:
  """ (points, points) square grid of complex betas around center, real part along
  columns and imaginary part along rows. """
  if points < 1:
    raise ValueError(f"grid needs at least one point, got {points}")

  center = complex(center)
  offsets = torch.linspace(-float(half_width), float(half_width), points, dtype=real_dtype)
  re, im = torch.meshgrid(center.real + offsets, center.imag + offsets, indexing='xy')
  return torch.complex(re, im)


def grid_spacing(grid:torch.Tensor) -> float:
  if grid.dim() != 2 or grid.shape[1] < 2:
    return 0.
  return (grid[0, 1] - grid[0, 0]).abs().item()


def mode_density(state:State) -> torch.Tensor:
  if len(state.space) != 1 or not isinstance(state.space[0], (BosonMode, CavityFock)):
    raise SpaceError(f"Wigner function needs a single mode state, got {state.space}")
  if isinstance(state, PureState):
    return torch.outer(state.amplitudes, state.amplitudes.conj())
  return state.matrix


def support_level(rho:torch.Tensor) -> int:
  """ Highest Fock level carrying population above support_cutoff. """
  occupied = torch.nonzero(rho.diagonal().real > support_cutoff)
  return occupied.max().item() if occupied.numel() > 0 else 0


def wigner_working_truncation(support:int, beta_max:float) -> int:
  """ Displaced support (sqrt(n_s) + |beta|)^2 plus a margin of 6 sqrt(.) + 12 levels. """
  radius = math.sqrt(support) + beta_max
  return math.ceil(radius ** 2 + 6 * radius + 12)


def padded(rho:torch.Tensor, n_work:int) -> torch.Tensor:
  out = torch.zeros(n_work + 1, n_work + 1, dtype=dtype)
  n = rho.shape[0]
  out[:n, :n] = rho
  return out


def resolve_truncation(rho:torch.Tensor, grid:torch.Tensor, n_work:Optional[int]) -> int:
  beta_max = grid.abs().max().item() if grid.numel() > 0 else 0.
  required = wigner_working_truncation(support_level(rho), beta_max)

  if n_work is None:
    return max(required, rho.shape[0] - 1)
  if n_work < required or n_work < rho.shape[0] - 1:
    raise TruncationError(f"working truncation {n_work} cannot hold the displaced state, "
                          f"needs at least {max(required, rho.shape[0] - 1)}")
  return n_work


def displacement_generators(n_max:int, betas:torch.Tensor) -> torch.Tensor:
  """ beta b+ - conj(beta) b for each beta, (B, n_max + 1, n_max + 1) """
  b = torch.diag(torch.sqrt(torch.arange(1, n_max + 1, dtype=real_dtype)), 1).to(dtype)
  betas = betas.reshape(-1, 1, 1).to(dtype)
  return betas * b.mH - betas.conj() * b


@beartype
def displacement(n_max:int, betas:torch.Tensor) -> torch.Tensor:
  """ D(beta) = exp(beta b+ - conj(beta) b) on the truncated Fock space, batched over betas. """
  return expm_antihermitian(displacement_generators(n_max, betas))


def check_displaced_edge(displaced:torch.Tensor):
  """ displaced: (B, L, L) density matrices, none may reach the truncation edge """
  edge = displaced.diagonal(dim1=-2, dim2=-1)[:, -edge_levels:].real.sum(dim=-1)
  if edge.numel() > 0 and edge.max().item() > edge_tolerance:
    raise TruncationError(f"displaced state reaches the truncation edge "
                          f"(population {edge.max().item():.3g}), increase the working truncation")


def displaced_states(rho:torch.Tensor, betas:torch.Tensor, n_work:int) -> torch.Tensor:
  """ D(-beta) rho D(beta) for each beta, (B, n_work + 1, n_work + 1) """
  d = displacement(n_work, -betas)
  displaced = d @ padded(rho, n_work) @ d.mH
  check_displaced_edge(displaced)
  return displaced


@beartype
def wigner_exact(mode_state:State, grid:torch.Tensor, n_work:Optional[int] = None,
                 chunk:int = 32) -> WignerMap:
  """ Direct displaced-parity evaluation of W on an arbitrary array of complex points. """
  rho = mode_density(mode_state)
  n_work = resolve_truncation(rho, grid, n_work)

  parity = torch.ones(n_work + 1, dtype=real_dtype)
  parity[1::2] = -1

  betas = grid.reshape(-1).to(dtype)
  values, residue = [], 0.
  for start in range(0, betas.shape[0], chunk):
    displaced = displaced_states(rho, betas[start:start + chunk], n_work)
    signal = (2 / math.pi) * (displaced.diagonal(dim1=-2, dim2=-1) * parity).sum(dim=-1)
    residue = max(residue, signal.imag.abs().max().item())
    values.append(signal.real)

  values = torch.cat(values) if len(values) > 0 else torch.zeros(0, dtype=real_dtype)
  return WignerMap(betas=grid, values=values.reshape(grid.shape),
                   spacing=grid_spacing(grid), imag_residue=residue)


@beartype
def wigner_series_map(mode_state:State, grid:torch.Tensor) -> WignerMap:
  """ W from the Laguerre series of the density matrix, evaluated by a taichi kernel
  (requires ti.init). """
  rho = mode_density(mode_state)
  values = wigner_series(rho, grid.reshape(-1).to(dtype))
  return WignerMap(betas=grid, values=values.reshape(grid.shape), spacing=grid_spacing(grid))


@beartype
def integrate_wigner(w:WignerMap) -> float:
  """ Rectangle rule over the grid, equal to Tr rho when the grid covers the state. """
  if w.spacing == 0:
    raise ValueError("integration needs a uniform grid")
  return w.values.sum().item() * w.spacing ** 2


def fringe_profile(w:WignerMap, axis:str = 're') -> torch.Tensor:
  """ Values along the central row ('re') or column ('im') of a square grid. """
  assert w.values.dim() == 2, "fringe profile needs a 2d grid"
  if axis == 're':
    return w.values[w.values.shape[0] // 2]
  return w.values[:, w.values.shape[1] // 2]
