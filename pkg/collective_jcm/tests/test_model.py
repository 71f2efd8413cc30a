import math

import pytest
import torch

from collective_jcm.errors import ParameterError, SpaceError
from collective_jcm.hilbert import CavityFock, CollectiveDicke, ControlQubit, Operator, make_space, number_operator
from collective_jcm.model.hamiltonians import (cavity_dispersive_hamiltonian, dispersive_mode_hamiltonian,
  effective_vacuum_hamiltonian, excitation_number, full_hamiltonian, full_hamiltonian_td, full_space,
  jcm_hamiltonian, mode_space, multi_sample_hamiltonian, vacuum_space)
from collective_jcm.model.params import SystemParams, parse_frequency
from collective_jcm.model.raman import RamanParams, raman_effective
from collective_jcm.model.regime import RegimeWarning, check_regime, resonance_drive
from collective_jcm.tests.util import allclose


def test_parse_frequency():
  allclose("parse_frequency", "2pi", parse_frequency("2pi*34e6"), 2 * math.pi * 34e6, rtol=1e-15)
  allclose("parse_frequency", "2*pi", parse_frequency("2*pi*1.5"), 3 * math.pi, rtol=1e-15)
  assert parse_frequency(3) == 3.
  assert parse_frequency("0.25") == 0.25

  with pytest.raises(ParameterError):
    parse_frequency("2pi*fast")


def test_resonant_params():
  params = SystemParams.resonant(1., 100., 50)
  allclose("resonant", "lambda_c", params.lambda_c, 0.01, rtol=1e-14)
  allclose("resonant", "epsilon", params.epsilon, math.sqrt(50) * 0.01, rtol=1e-14)
  allclose("resonant", "detuning", params.detuning, 0., atol=1e-14)
  assert params.delta_d == 200.

  drive = resonance_drive(SystemParams(g=1., omega=0., delta_c=100., delta_d=200., n_atoms=50))
  allclose("resonant", "omega", drive.omega, params.omega, rtol=1e-14)


def test_dispersive_params():
  params = SystemParams.dispersive(1., 200., 100, detuning_ratio=20.)
  allclose("dispersive", "detuning", params.detuning, 20 * params.epsilon, rtol=1e-12)
  allclose("dispersive", "chi", params.chi, params.epsilon / 20, rtol=1e-12)


def test_invalid_params():
  with pytest.raises(ParameterError):
    SystemParams(g=1., omega=0., delta_c=10., delta_d=20., n_atoms=0)

  with pytest.raises(ParameterError):
    SystemParams(g=1., omega=0., delta_c=0., delta_d=20., n_atoms=4).lambda_c

  for bad in [dict(delta_small=-10.), dict(delta_small=0.), dict(delta_big=-100.), dict(g=0.),
              dict(alpha=-1.), dict(kappa=-0.1), dict(n_atoms=0)]:
    values = dict(g=1., alpha=1., delta_big=100., delta_small=10., gamma=0., kappa=0., n_atoms=100)
    with pytest.raises(ParameterError):
      RamanParams(**{**values, **bad})


def test_feasibility_numbers():
  effective = raman_effective(RamanParams.feasibility_values())

  two_pi = 2 * math.pi
  allclose("feasibility", "epsilon", effective.epsilon / two_pi, 3.1e4, rtol=0.02)
  allclose("feasibility", "gamma_eff", effective.gamma_eff / two_pi, 260., rtol=0.005)
  allclose("feasibility", "kappa_eff", effective.kappa_eff / two_pi, 3.7, rtol=0.03)
  allclose("feasibility", "t1", effective.t1, 8.1e-6, rtol=0.02)

  budget = (effective.gamma_eff + effective.kappa_eff) * effective.t1
  allclose("feasibility", "budget", budget, 0.013, rtol=0.1)


def test_regime_warnings():
  weak = SystemParams.resonant(1., 3., 4)
  messages = check_regime(weak)
  assert any("cavity detuning" in m for m in messages)

  strong = SystemParams.resonant(1., 100., 4)
  assert check_regime(strong) == []

  close = SystemParams.dispersive(1., 100., 4, detuning_ratio=2.)
  messages = check_regime(close, dispersive=True)
  assert any("dispersive detuning" in m for m in messages)

  with pytest.warns(RegimeWarning):
    effective = raman_effective(RamanParams(g=1., alpha=1., delta_big=5., delta_small=2., gamma=0.,
      kappa=0., n_atoms=100))
  assert len(effective.warnings) == 1


def test_effective_matches_jcm():
  params = SystemParams.resonant(1., 50., 6)
  space = vacuum_space(params, 6)

  effective = effective_vacuum_hamiltonian(params, space)
  jcm = jcm_hamiltonian(params, space)
  # identical up to the constant lambda_c / 2
  allclose("effective_jcm", "difference", (effective - jcm).dense,
           (params.lambda_c / 2 * Operator.identity(space)).dense, atol=1e-13)


def test_excitation_conservation():
  params = SystemParams.resonant(1., 50., 4, n_samples=2)
  space = mode_space(3, n_samples=2)
  h = multi_sample_hamiltonian(params, space)
  assert h.is_hermitian(1e-13)

  n = excitation_number(space)
  allclose("conservation", "multi_sample", h.commutator(n).max_abs(), 0., atol=1e-13)

  dispersive = SystemParams.dispersive(1., 100., 4)
  single = mode_space(4)
  h = dispersive_mode_hamiltonian(dispersive, single)
  assert h.nnz == (h.diagonal() != 0).sum().item()

  with pytest.raises(SpaceError):
    multi_sample_hamiltonian(SystemParams.resonant(1., 50., 4), mode_space(3))


def test_cavity_dispersive_photon_number():
  params = SystemParams.resonant(1., 50., 4)
  space = full_space(params, 4, cavity=2)
  h = cavity_dispersive_hamiltonian(params, space)
  assert h.is_hermitian(1e-13)

  photons = number_operator(space, space.index_of(CavityFock))
  allclose("cavity_dispersive", "photons", h.commutator(photons).max_abs(), 0., atol=1e-13)


def test_full_hamiltonian():
  params = SystemParams.resonant(1., 20., 3)
  space = full_space(params, 3)
  td = full_hamiltonian_td(params, space)

  for t in [0., 0.37, 2.5]:
    h = full_hamiltonian(params, space, t)
    assert h.is_hermitian(1e-12)

    x = torch.linspace(0, 1, space.dim, dtype=torch.float64).to(torch.complex128)
    allclose("full_hamiltonian", f"apply_{t}", td.apply(t, x), h.apply(x), atol=1e-12)

  assert td.max_frequency() == 40.

  # <g_c; m=1; 0_cav| H_I(t) |g_c; m=0; 1_cav> = g sqrt(N) e^{i delta_c t}, index = m * 3 + n_cav
  for t in [0., 0.1, 1.3]:
    allclose("full_hamiltonian", f"element_{t}", full_hamiltonian(params, space, t).entry(1 * 3 + 0, 0 * 3 + 1),
             math.sqrt(3) * complex(math.cos(20. * t), math.sin(20. * t)), atol=1e-13)

  per_atom = full_space(params, 3, per_atom=True)
  assert per_atom.dim == 2 * 2 ** 3 * 3

  # the Dicke ladder of N atoms ends at m = N
  assert full_space(params, 8).dims == (2, 4, 3)
  assert vacuum_space(params, 8).dims == (2, 4)

  with pytest.raises(SpaceError):
    full_hamiltonian_td(params, make_space([ControlQubit(), CollectiveDicke(4, 2)]))


if __name__ == '__main__':
  test_parse_frequency()
  test_resonant_params()
  test_dispersive_params()
  test_invalid_params()
  test_feasibility_numbers()
  test_regime_warnings()
  test_effective_matches_jcm()
  test_excitation_conservation()
  test_cavity_dispersive_photon_number()
  test_full_hamiltonian()
