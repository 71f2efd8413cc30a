import math

import pytest
import torch

from collective_jcm.analysis.fidelity import fidelity
from collective_jcm.dynamics import (StaticPropagator, StepConfig, jcm_analytic, jcm_gap,
  propagate_static, propagate_static_trace, propagate_timedep)
from collective_jcm.errors import ParameterError, TruncationError
from collective_jcm.hilbert import PureState, basis_state
from collective_jcm.model.hamiltonians import jcm_hamiltonian, mode_space
from collective_jcm.model.params import SystemParams
from collective_jcm.protocols.segments import standard_observables
from collective_jcm.protocols.validation import integrator_order_check, symmetric_subspace_check
from collective_jcm.tests.util import allclose


def test_jcm_closed_form():
  params = SystemParams.resonant(1., 10., 4)
  eps = params.epsilon

  for n in range(6):
    space = mode_space(n + 9)
    propagator = StaticPropagator(jcm_hamiltonian(params, space))
    times = [0.3, 1.7, math.pi / (2 * math.sqrt(n + 1) * eps), 7.9]

    for branch, levels in [('e', [1, n]), ('g', [0, n + 1])]:
      psi0 = basis_state(space, levels)
      states = propagator.evolve(psi0, torch.tensor(times, dtype=torch.float64))

      for t, amplitudes in zip(times, states):
        exact = jcm_analytic(branch, n, t, eps, params.n_atoms)
        f = fidelity(exact, PureState(space, amplitudes))
        assert f >= 1 - 1e-10, f"n={n} branch={branch} t={t}: fidelity {f}"
        allclose("jcm_closed_form", f"{branch}{n}_{t}", amplitudes, exact.amplitudes, atol=1e-9)


def test_jcm_gap():
  resonant = SystemParams.resonant(1., 50., 8)
  allclose("jcm_gap", "resonant", jcm_gap(resonant), 0., atol=1e-12)

  dispersive = SystemParams.dispersive(1., 50., 8, detuning_ratio=15.)
  allclose("jcm_gap", "dispersive", jcm_gap(dispersive), dispersive.detuning, atol=1e-12)

  with pytest.raises(TruncationError):
    jcm_analytic('e', 3, 1., 0.1, 4, n_max=3)


def test_static_trace():
  params = SystemParams.resonant(1., 10., 4)
  space = mode_space(3)
  hamiltonian = jcm_hamiltonian(params, space)
  psi0 = basis_state(space, [1, 0])

  times = torch.linspace(0, 10., 51, dtype=torch.float64)
  report = propagate_static_trace(hamiltonian, psi0, times, standard_observables(space, [1]))

  allclose("static_trace", "P_e", report.traces['P_e'], torch.cos(params.epsilon * times) ** 2, atol=1e-12)
  allclose("static_trace", "n_b", report.traces['n_b'], torch.sin(params.epsilon * times) ** 2, atol=1e-12)
  assert report.drift.max().item() < 1e-12
  assert propagate_static(hamiltonian, psi0, 0.) is psi0


def test_timedep_matches_static():
  params = SystemParams.resonant(1., 10., 4)
  space = mode_space(3)
  hamiltonian = jcm_hamiltonian(params, space)
  psi0 = basis_state(space, [1, 1])

  report = propagate_timedep(hamiltonian, psi0, 5., config=StepConfig(stride=10),
                             observables=standard_observables(space, [1]))
  exact = propagate_static(hamiltonian, psi0, 5.)

  assert report.converged
  assert report.times.shape[0] == report.traces.batch_size[0]
  allclose("timedep", "final", report.final.amplitudes, exact.amplitudes, atol=1e-7)
  allclose("timedep", "t_final", report.times[-1].item(), 5., atol=1e-12)


def test_step_config():
  with pytest.raises(ParameterError):
    StepConfig(dt=0.)

  allclose("step_config", "default", StepConfig().step_size(10., 1.), 0.005, atol=1e-15)
  assert StepConfig(dt=2.).step_size(10., 1.) == 1.


def test_integrator_order():
  ratio, t_final = integrator_order_check()
  assert 12 <= ratio <= 20, f"Richardson ratio {ratio:.3f} for RK4"
  assert t_final > 0


def test_symmetric_subspace():
  result = symmetric_subspace_check(n_atoms=3)
  assert result.converged, result.reason
  assert result.extras['checkpoints'] == 10
  assert result.fidelity >= 1 - 1e-9, f"per-atom vs Dicke fidelity {result.fidelity}"


if __name__ == '__main__':
  test_jcm_closed_form()
  test_jcm_gap()
  test_static_trace()
  test_timedep_matches_static()
  test_integrator_order()
  test_symmetric_subspace()
