import math

import pytest
import taichi as ti
import torch

from collective_jcm.analysis.wigner import (fringe_profile, integrate_wigner, make_grid, wigner_exact,
  wigner_series_map)
from collective_jcm.errors import SpaceError, TruncationError
from collective_jcm.hilbert import (BosonMode, ControlQubit, DensityMatrix, PureState, coherent_amplitudes,
  coherent_truncation, fock_state, make_space)
from collective_jcm.model.params import SystemParams
from collective_jcm.protocols.wigner import parity_time, wigner_measurement
from collective_jcm.tests.util import allclose, random_density
from collective_jcm.torch_ops.linalg import dtype


ti.init(debug=True)


def mode_state(amplitudes:torch.Tensor) -> PureState:
  return PureState(make_space([BosonMode(amplitudes.shape[0] - 1)]), amplitudes.to(dtype))


def coherent(alpha:complex) -> PureState:
  return mode_state(coherent_amplitudes(alpha, coherent_truncation(alpha)))


def even_cat(alpha:complex) -> PureState:
  n_max = coherent_truncation(alpha)
  v = coherent_amplitudes(alpha, n_max) + coherent_amplitudes(-alpha, n_max)
  return mode_state(v / torch.linalg.vector_norm(v))


def reference_states():
  return dict(
    vacuum=fock_state(make_space([BosonMode(1)]), 0, 0),
    fock=fock_state(make_space([BosonMode(2)]), 0, 1),
    coherent=coherent(2.),
    cat=even_cat(2.))


def test_wigner_origin():
  grid = make_grid(0, 3., 21)
  states = reference_states()

  vacuum = wigner_exact(states['vacuum'], grid)
  fock = wigner_exact(states['fock'], grid)
  allclose("wigner_origin", "vacuum", vacuum.at(0), 2 / math.pi, atol=1e-9)
  allclose("wigner_origin", "fock", fock.at(0), -2 / math.pi, atol=1e-9)

  # closed forms over the whole grid
  r2 = grid.abs() ** 2
  allclose("wigner_closed_form", "vacuum", vacuum.values, 2 / math.pi * torch.exp(-2 * r2), atol=1e-9)
  allclose("wigner_closed_form", "fock", fock.values, 2 / math.pi * (4 * r2 - 1) * torch.exp(-2 * r2), atol=1e-9)
  assert vacuum.imag_residue < 1e-12


def test_measurement_matches_exact():
  params = SystemParams.dispersive(1., 200., 100)
  grid = make_grid(0, 3., 21)

  for name, state in reference_states().items():
    exact = wigner_exact(state, grid)
    measured = wigner_measurement(state, grid, params)

    difference = measured.wigner.max_abs_difference(exact)
    assert difference <= 1e-6, f"{name}: measurement differs from the direct map by {difference:.3g}"
    assert measured.sigma_x_residual < 1e-9, f"{name}: sigma_x residual {measured.sigma_x_residual:.3g}"
    allclose("measurement", f"{name}_time", measured.interaction_time, parity_time(params), atol=1e-12)


def test_measurement_integral():
  params = SystemParams.dispersive(1., 200., 100)
  alpha = 2.
  grid = make_grid(alpha, 4., 21)

  measured = wigner_measurement(coherent(alpha), grid, params)
  allclose("measurement", "integral", integrate_wigner(measured.wigner), 1., atol=0.02)


def test_series_matches_exact():
  grid = make_grid(0.3 - 0.2j, 2., 11)
  for seed in range(3):
    rho = DensityMatrix(make_space([BosonMode(5)]), random_density(6, seed))
    exact = wigner_exact(rho, grid)
    series = wigner_series_map(rho, grid)
    allclose("wigner_series", f"seed_{seed}", series.values, exact.values, atol=1e-8)

  cat = even_cat(2.)
  allclose("wigner_series", "cat", wigner_series_map(cat, grid).values, wigner_exact(cat, grid).values, atol=1e-8)


def test_cat_fringes():
  grid = make_grid(0, 3., 31)
  w = wigner_exact(even_cat(2.), grid)

  # interference fringes of the +-alpha cat run along the imaginary axis, negative in between
  fringe = fringe_profile(w, 'im')
  assert fringe.min().item() < -0.3
  allclose("cat_fringes", "origin", w.at(0), 2 / math.pi, atol=1e-6)


def test_wigner_errors():
  grid = make_grid(0, 3., 5)
  with pytest.raises(TruncationError):
    wigner_exact(coherent(2.), grid, n_work=10)

  with pytest.raises(SpaceError):
    wigner_exact(fock_state(make_space([ControlQubit(), BosonMode(2)]), 1, 1), grid)


if __name__ == '__main__':
  test_wigner_origin()
  test_measurement_matches_exact()
  test_measurement_integral()
  test_series_matches_exact()
  test_cat_fringes()
  test_wigner_errors()
