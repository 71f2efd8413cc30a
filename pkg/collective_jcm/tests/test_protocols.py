import math

import pytest

from collective_jcm.errors import ParameterError, TruncationError
from collective_jcm.model.params import SystemParams
from collective_jcm.protocols import (cat_dispersive, cat_resonant, collapse_revival, dispersive_time,
  entangle_samples, entangling_time, fock_ladder, full_vs_effective, ladder_durations, two_branch_purity)
from collective_jcm.tests.util import allclose


def test_ladder_durations():
  eps = 0.25
  durations = ladder_durations(3, eps)
  allclose("ladder", "durations", durations,
           [math.pi / (2 * eps), math.pi / (2 * math.sqrt(2) * eps), math.pi / (2 * math.sqrt(3) * eps)],
           atol=1e-14)


def test_fock_ladder():
  params = SystemParams.resonant(1., 100., 100)

  for target_n in (1, 2):
    result = fock_ladder(target_n, params)
    assert result.fidelity >= 1 - 1e-9, f"|{target_n}>: fidelity {result.fidelity}"
    assert result.extras['control_excited'] < 1e-9
    assert len(result.schedule) == 2 * target_n - 1
    allclose("fock_ladder", "duration", result.duration, sum(ladder_durations(target_n, params.epsilon)),
             atol=1e-12)

  # the vacuum effective model agrees with the JCM on a single excitation
  effective = fock_ladder(1, params, model='effective')
  assert effective.fidelity >= 1 - 1e-9

  dicke = fock_ladder(2, params, model='jcm', mode='dicke')
  assert dicke.fidelity >= 0.99

  traces = fock_ladder(1, params).traces
  allclose("fock_ladder", "P_e+P_g", traces['P_e'] + traces['P_g'], 1., atol=1e-12)

  with pytest.raises(TruncationError):
    fock_ladder(3, params, n_max=5)

  with pytest.raises(ParameterError):
    fock_ladder(0, params)


def test_two_samples():
  params = SystemParams.resonant(1., 100., 10, n_samples=2)
  result = entangle_samples(2, params)

  assert result.fidelity >= 1 - 1e-8
  assert result.extras['control_ground'] >= 1 - 1e-6
  assert result.extras['dark_population_max'] < 1e-8
  allclose("two_samples", "entropy", result.extras['single_mode_entropy'],
           result.extras['single_mode_entropy_closed_form'], atol=1e-6)
  allclose("two_samples", "rabi", result.extras['rabi_frequency'],
           math.sqrt(2) * params.epsilon, rtol=1e-2)

  half = entangle_samples(2, params, t=entangling_time(2, params.epsilon) / 2)
  allclose("two_samples", "half_time", 1 - half.extras['control_ground'], 0.5, atol=1e-8)


def test_w_state():
  params = SystemParams.resonant(1., 100., 10, n_samples=3)
  result = entangle_samples(3, params)

  assert result.name == 'w-state'
  assert result.fidelity >= 1 - 1e-8
  assert result.extras['dark_population_max'] < 1e-8
  allclose("w_state", "entropy", result.extras['single_mode_entropy'],
           result.extras['single_mode_entropy_closed_form'], atol=1e-6)
  allclose("w_state", "rabi", result.extras['rabi_frequency'], math.sqrt(3) * params.epsilon, rtol=1e-2)

  with pytest.raises(ParameterError):
    entangle_samples(2, params)


def test_cat_dispersive():
  params = SystemParams.dispersive(1., 200., 100)
  alpha = 2.

  for phi in (math.pi / 4, math.pi / 2, math.pi):
    result = cat_dispersive(alpha, dispersive_time(params, phi), params)
    assert result.fidelity >= 1 - 1e-8, f"phi={phi}: fidelity {result.fidelity}"
    allclose("cat_dispersive", f"phi_{phi}", result.extras['phi'], phi, atol=1e-12)
    allclose("cat_dispersive", f"purity_{phi}", result.extras['mode_purity'],
             two_branch_purity(alpha, phi), atol=1e-6)

  # phi = pi returns both branches onto |-alpha>, a pure mode state
  allclose("cat_dispersive", "pi_purity", two_branch_purity(alpha, math.pi), 1., atol=1e-12)


def test_cat_resonant():
  params = SystemParams.resonant(1., 100., 10)
  alpha = 4.
  n_bar = alpha ** 2

  result = cat_resonant(alpha, 0.2 * math.sqrt(n_bar) / params.epsilon, params)
  assert result.fidelity >= 0.9, f"overlap with the two-branch reference {result.fidelity}"
  allclose("cat_resonant", "eps_t", result.extras['eps_t'], 0.8, atol=1e-12)

  initial = cat_resonant(alpha, 0., params)
  allclose("cat_resonant", "t0", initial.fidelity, 1., atol=1e-10)
  assert initial.schedule == []


def test_collapse_revival():
  params = SystemParams.resonant(1., 100., 10)
  alpha = 4.
  result = collapse_revival(alpha, params)
  extras = result.extras

  expected = 2 * math.pi * alpha
  assert 1. <= extras['collapse_eps_t'] <= 3., extras
  assert 0.8 * expected <= extras['revival_eps_t'] <= 1.2 * expected, extras
  assert extras['revival_amplitude'] > 2 * extras['collapsed_amplitude'], extras


def test_full_vs_effective():
  result = full_vs_effective()
  extras = result.extras

  assert result.converged, result.reason
  assert extras['max_difference'] < 0.05, extras['max_difference']
  assert extras['half_period_error'] < 0.05, extras['half_period']
  assert 'P_e_effective' in result.traces.keys()


if __name__ == '__main__':
  test_ladder_durations()
  test_fock_ladder()
  test_two_samples()
  test_w_state()
  test_cat_dispersive()
  test_cat_resonant()
  test_collapse_revival()
  test_full_vs_effective()
