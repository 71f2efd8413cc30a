""" Checks of the reduced models against the driven cavity model they are derived from,
and of the numerics against exact references. """
import math
from numbers import Real

from beartype import beartype
from beartype.typing import Optional, Tuple
import torch

from collective_jcm.analysis.fidelity import fidelity
from collective_jcm.dynamics.propagate import (StaticPropagator, propagate_static, propagate_timedep,
  rate_bound, richardson_order, step_grid)
from collective_jcm.dynamics.report import StepConfig, expectation_values, make_traces
from collective_jcm.hilbert.states import PureState, basis_state
from collective_jcm.hilbert.symmetric import embed_symmetric
from collective_jcm.model.hamiltonians import (effective_vacuum_hamiltonian, full_hamiltonian_td,
  full_space, jcm_hamiltonian, mode_space, vacuum_space)
from collective_jcm.model.params import SystemParams
from collective_jcm.model.regime import check_regime
from collective_jcm.protocols.fock import resonance_warnings
from collective_jcm.protocols.result import ProtocolResult, ScheduleStep
from collective_jcm.protocols.segments import standard_observables
from collective_jcm.torch_ops.linalg import real_dtype


def excited_control(space) -> PureState:
  return basis_state(space, [1] + [0] * (len(space) - 1))


def checkpoint_config(hamiltonian, t_final:float, checkpoints:int,
                      config:StepConfig) -> StepConfig:
  """ Step length and stride such that observables are recorded at `checkpoints`
  evenly spaced times after t = 0. """
  n_steps, _ = step_grid(rate_bound(hamiltonian), t_final, config)
  stride = max(1, math.ceil(n_steps / checkpoints))
  return StepConfig(dt=t_final / (stride * checkpoints), stride=stride,
                    norm_tolerance=config.norm_tolerance, time_scale=config.time_scale)


def fit_minimum(times:torch.Tensor, signal:torch.Tensor, below:float = 0.2) -> float:
  """ Vertex of the least squares parabola through the samples of the first dip of
  `signal` under `below`, insensitive to fast oscillations riding on the dip. """
  first = torch.nonzero(signal < below).reshape(-1)
  if first.numel() < 3:
    return math.nan

  start = first[0].item()
  end = start
  while end + 1 < signal.shape[0] and signal[end + 1] < below:
    end += 1

  t, y = times[start:end + 1], signal[start:end + 1]
  centre = t.mean()
  x = t - centre
  design = torch.stack([torch.ones_like(x), x, x ** 2], dim=1)
  c = torch.linalg.lstsq(design, y.unsqueeze(1)).solution.reshape(-1)
  if c[2] <= 0:
    return math.nan
  return (centre - c[1] / (2 * c[2])).item()


@beartype
def full_vs_effective(g:Real = 1., delta_c:Real = 100., n_atoms:int = 50, m_max:int = 9,
                      cavity:int = 2, delta_d:Optional[Real] = None, samples:int = 1000,
                      config:Optional[StepConfig] = None, progress:bool = False) -> ProtocolResult:
  """ Control atom excited population from |e_c, 0, 0> under the time-dependent driven cavity
  model against the effective vacuum Hamiltonian over one Rabi period t in [0, pi / eps].

  The drive detuning defaults to 2 delta_c. extras hold the largest pointwise difference
  of P_e and the half period located at the first minimum of the full model trace.
  """
  params = SystemParams.resonant(float(g), float(delta_c), n_atoms,
    delta_d=None if delta_d is None else float(delta_d))
  eps = params.epsilon
  t_final = math.pi / eps
  warnings = check_regime(params) + resonance_warnings(params)

  space = full_space(params, m_max, cavity=cavity)
  hamiltonian = full_hamiltonian_td(params, space)
  config = checkpoint_config(hamiltonian, t_final, samples,
                             config or StepConfig(time_scale=float(params.g)))

  report = propagate_timedep(hamiltonian, excited_control(space), t_final, config=config,
    observables=standard_observables(space, [1]), progress=progress)
  times = report.times

  reduced = vacuum_space(params, m_max)
  amplitudes = StaticPropagator(effective_vacuum_hamiltonian(params, reduced)).evolve(
    excited_control(reduced), times)
  effective = expectation_values(standard_observables(reduced, [1]), amplitudes)

  traces = report.traces
  traces['P_e_effective'] = effective['P_e']
  difference = (traces['P_e'] - effective['P_e']).abs().max().item()

  half_period = fit_minimum(times, traces['P_e'])
  expected = math.pi / (2 * eps)

  return ProtocolResult(
    name='full-vs-effective',
    schedule=[ScheduleStep('evolve', t_final, dict(model='full'))],
    final=report.final,
    traces=traces,
    warnings=warnings,
    converged=report.converged,
    reason=report.reason,
    extras=dict(
      n_atoms=n_atoms,
      n_max=m_max,
      delta_c=float(params.delta_c),
      delta_d=float(params.delta_d),
      omega=float(params.omega),
      epsilon=eps,
      max_difference=difference,
      half_period=half_period,
      expected_half_period=expected,
      half_period_error=abs(half_period - expected) / expected,
      integrator_steps=report.steps,
      dt=report.dt,
      rate_bound=report.rate_bound))


@beartype
def symmetric_subspace_check(n_atoms:int = 3, g:Real = 1., delta_c:Real = 20., cavity:int = 2,
                             checkpoints:int = 10, t_final:Optional[Real] = None,
                             config:Optional[StepConfig] = None) -> ProtocolResult:
  """ The same driven cavity model integrated on N explicit atoms and on the Dicke ladder,
  from the symmetric state |e_c, 0, 0>. Fidelity of the two trajectories at each
  checkpoint, the Dicke state mapped onto the per-atom space. """
  params = SystemParams.resonant(float(g), float(delta_c), n_atoms)
  t_final = math.pi / params.epsilon if t_final is None else float(t_final)

  atoms = full_space(params, n_atoms, cavity=cavity, per_atom=True)
  dicke = full_space(params, n_atoms, cavity=cavity)
  atoms_h = full_hamiltonian_td(params, atoms)

  # same steps on both sides, sized for the larger per-atom bound
  config = checkpoint_config(atoms_h, t_final, checkpoints,
                             config or StepConfig(time_scale=float(params.g)))

  per_atom = propagate_timedep(atoms_h, excited_control(atoms), t_final, config=config)
  collective = propagate_timedep(full_hamiltonian_td(params, dicke), excited_control(dicke),
                                 t_final, config=config)

  fidelities = [
    fidelity(embed_symmetric(PureState(dicke, v)), PureState(atoms, u))
    for u, v in zip(per_atom.states[1:], collective.states[1:])]

  return ProtocolResult(
    name='symmetric-subspace',
    schedule=[ScheduleStep('evolve', t_final, dict(model='full'))],
    final=collective.final,
    target=embed_symmetric(collective.final),
    fidelity=min(fidelities),
    traces=make_traces(collective.times[1:], dict(fidelity=torch.tensor(fidelities, dtype=real_dtype))),
    warnings=check_regime(params),
    converged=per_atom.converged and collective.converged,
    reason=per_atom.reason or collective.reason,
    extras=dict(n_atoms=n_atoms, checkpoints=len(fidelities), fidelities=fidelities))


@beartype
def integrator_order_check(params:Optional[SystemParams] = None, n_max:int = 3,
                           dt:Real = 0.1) -> Tuple[float, float]:
  """ RK4 error ratio between dt and dt / 2 for |e_c, 1> under the bosonized JCM over
  one Rabi period, against the eigendecomposition. Returns (ratio, t_final). """
  params = params or SystemParams.resonant(1., 10., 4)
  space = mode_space(n_max)
  hamiltonian = jcm_hamiltonian(params, space)

  psi0 = basis_state(space, [1, 1])
  t_final = math.pi / params.epsilon
  exact = propagate_static(hamiltonian, psi0, t_final)
  return richardson_order(hamiltonian, psi0, t_final, dt, exact), t_final
