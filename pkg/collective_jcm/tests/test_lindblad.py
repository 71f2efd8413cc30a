import math

import torch

from collective_jcm.dynamics import CollapseChannel, StepConfig, lindblad_evolve
from collective_jcm.hilbert import Operator, basis_state, control_ops, mode_lowering
from collective_jcm.model.hamiltonians import jcm_hamiltonian, mode_space
from collective_jcm.model.params import SystemParams
from collective_jcm.model.raman import RamanParams
from collective_jcm.protocols.decoherence import decoherence_budget, lindblad_fock_infidelity
from collective_jcm.protocols.segments import standard_observables
from collective_jcm.tests.util import allclose


def test_trace_preservation():
  params = SystemParams.resonant(1., 10., 4)
  space = mode_space(3)
  hamiltonian = jcm_hamiltonian(params, space)
  channels = [CollapseChannel(control_ops(space).lower, 0.05),
              CollapseChannel(mode_lowering(space, 1), 0.05)]

  report = lindblad_evolve(hamiltonian, channels, basis_state(space, [1, 0]), 5.)
  rho = report.final

  assert report.converged, report.reason
  allclose("lindblad", "trace", rho.trace, 1., atol=1e-10)
  assert rho.hermiticity_defect() < 1e-12
  assert min(report.min_eigenvalues) > -1e-9
  assert len(report.min_eigenvalues) == 10


def test_spontaneous_decay():
  space = mode_space(1)
  gamma = 0.3
  channels = [CollapseChannel(control_ops(space).lower, gamma)]

  report = lindblad_evolve(Operator.zeros(space), channels, basis_state(space, [1, 0]), 4.,
                           config=StepConfig(dt=0.01, stride=50), observables=standard_observables(space, [1]))

  expected = torch.exp(-gamma * report.times)
  allclose("decay", "P_e", report.traces['P_e'], expected, atol=1e-9)
  allclose("decay", "P_g", report.traces['P_g'], 1 - expected, atol=1e-9)


def test_zero_rates():
  raman = RamanParams(g=1., alpha=1., delta_big=100., delta_small=10., gamma=0., kappa=0., n_atoms=100)
  budget = decoherence_budget(raman)
  assert budget.budget == 0.
  allclose("budget", "duration", budget.duration, math.pi / (2 * budget.effective.epsilon), rtol=1e-14)


def test_decoherence_bracket():
  result = lindblad_fock_infidelity(RamanParams.feasibility_values())
  assert result.converged, result.reason

  budget = result.extras['budget']
  allclose("decoherence", "budget", budget, 0.013, rtol=0.1)
  assert 0.5 <= result.extras['budget_ratio'] <= 2, \
    f"simulated infidelity {result.extras['infidelity']:.4g} against budget {budget:.4g}"


if __name__ == '__main__':
  test_trace_preservation()
  test_spontaneous_decay()
  test_zero_rates()
  test_decoherence_bracket()
