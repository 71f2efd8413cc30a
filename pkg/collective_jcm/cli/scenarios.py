""" Named scenarios runnable from the command line, each mapping a ScenarioConfig onto one
protocol and collecting what the output writer needs. """
from dataclasses import dataclass, field, replace
import math

from beartype.typing import Any, Callable, Dict, List, Optional
import torch

from collective_jcm.analysis.fidelity import fidelity
from collective_jcm.analysis.wigner import (WignerMap, integrate_wigner, make_grid, wigner_exact,
  wigner_series_map)
from collective_jcm.cli.config import ScenarioConfig, Truncation
from collective_jcm.dynamics.analytic import jcm_analytic, jcm_gap
from collective_jcm.dynamics.propagate import StaticPropagator
from collective_jcm.dynamics.report import StepConfig, expectation_values, make_traces
from collective_jcm.errors import ConfigError, TruncationError
from collective_jcm.hilbert.space import BosonMode, ControlQubit, make_space
from collective_jcm.hilbert.states import (PureState, basis_state, coherent_state,
  coherent_truncation, fock_state)
from collective_jcm.model.hamiltonians import dicke_factor, jcm_hamiltonian
from collective_jcm.model.params import SystemParams
from collective_jcm.model.raman import raman_effective
from collective_jcm.model.regime import check_regime
from collective_jcm.protocols.cat import (cat_dispersive, cat_resonant, collapse_revival,
  conditional_mode_state, dispersive_cat_state, dispersive_time)
from collective_jcm.protocols.decoherence import decoherence_budget, lindblad_fock_infidelity
from collective_jcm.protocols.entangle import entangle_samples
from collective_jcm.protocols.fock import DecoherenceRates, fock_ladder
from collective_jcm.protocols.result import ProtocolResult, ScheduleStep
from collective_jcm.protocols.segments import standard_observables
from collective_jcm.protocols.validation import full_vs_effective
from collective_jcm.protocols.wigner import wigner_measurement
from collective_jcm.torch_ops.linalg import dtype, real_dtype


@dataclass
class ScenarioRun:
  """ What a scenario hands to the output writer. """
  result: Optional[ProtocolResult] = None
  params: Optional[SystemParams] = None
  derived: Dict[str, Any] = field(default_factory=dict)
  wigner: Optional[WignerMap] = None
  warnings: List[str] = field(default_factory=list)

  @property
  def converged(self) -> bool:
    return self.result is None or self.result.converged


def step_config(config:ScenarioConfig, params:SystemParams) -> StepConfig:
  return StepConfig(dt=config.time.dt, stride=config.time.stride, time_scale=float(params.g))


def eps_time(config:ScenarioConfig, params:SystemParams, default:float) -> float:
  """ time.t_final is given in units of 1 / eps. """
  eps_t = default if config.time.t_final is None else float(config.time.t_final)
  return eps_t / params.epsilon


def model_choice(config:ScenarioConfig, allowed:List[str], default:str) -> str:
  model = config.model or default
  if model not in allowed:
    raise ConfigError("model", f"scenario {config.scenario} supports {allowed}, got {model!r}")
  return model


def jcm_rabi(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Rabi oscillation of |e_c, n> under the bosonized JCM, scored against the closed form. """
  params = config.system.params()
  n = int(config.protocol.n)
  n_max = int(truncation.mode or n + 9)
  if n_max < n + 1:
    raise TruncationError(f"truncation {n_max} cannot hold |n+1> for n={n}")

  factor = BosonMode(n_max) if config.protocol.mode == 'boson' \
    else dicke_factor(params, n_max)
  space = make_space([ControlQubit(), factor])

  t_final = eps_time(config, params, 2 * math.pi)
  times = torch.linspace(0, t_final, int(config.time.samples), dtype=real_dtype)
  psi0 = basis_state(space, [1, n])
  amplitudes = StaticPropagator(jcm_hamiltonian(params, space)).evolve(psi0, times)
  samples = expectation_values(standard_observables(space, [1]), amplitudes)

  eps, gap = params.epsilon, jcm_gap(params)
  closed_form = torch.cos(math.sqrt(n + 1) * eps * times) ** 2
  if config.protocol.mode == 'boson':
    exact = [jcm_analytic('e', n, t, eps, params.n_atoms, n_max, gap) for t in times.tolist()]
    samples['fidelity'] = torch.tensor([fidelity(a, PureState(space, b))
      for a, b in zip(exact, amplitudes)], dtype=real_dtype)

  traces = make_traces(times, samples)
  final = PureState(space, amplitudes[-1])

  result = ProtocolResult(
    name='jcm-rabi',
    schedule=[ScheduleStep('evolve', t_final, dict(model='jcm'))] if t_final > 0 else [],
    final=final,
    target=exact[-1] if config.protocol.mode == 'boson' else None,
    fidelity=traces['fidelity'][-1].item() if 'fidelity' in traces.keys() else None,
    traces=traces,
    warnings=check_regime(params),
    extras=dict(n=n, n_max=n_max,
      max_closed_form_deviation=(traces['P_e'] - closed_form).abs().max().item()))
  return ScenarioRun(result=result, params=params)


def fock(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Fock ladder |e_c, 0> -> |g_c, target_n>, optionally with Raman decoherence. """
  model = model_choice(config, ['jcm', 'effective', 'full'], 'jcm')

  decoherence, derived = None, {}
  if config.decoherence:
    effective = raman_effective(config.raman.raman())
    params = effective.system_params()
    decoherence = DecoherenceRates(effective.gamma_eff, effective.kappa_eff)
    derived = dict(gamma_eff=effective.gamma_eff, kappa_eff=effective.kappa_eff)
  else:
    params = config.system.params()

  result = fock_ladder(int(config.protocol.target_n), params, model=model,
    mode=config.protocol.mode, n_max=truncation.mode, decoherence=decoherence,
    config=step_config(config, params), cavity=int(truncation.cavity),
    samples=int(config.time.samples), progress=progress)
  return ScenarioRun(result=result, params=params, derived=derived)


def cat_resonant_scenario(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Resonant cat from |g_c>|alpha>, optionally the collapse and revival trace. """
  params = config.system.params()
  alpha = config.protocol.complex_alpha
  n_bar = abs(alpha) ** 2

  eps_t = 0.2 * math.sqrt(n_bar) if config.protocol.eps_t is None else float(config.protocol.eps_t)
  result = cat_resonant(alpha, eps_t / params.epsilon, params, truncation.mode)

  if config.protocol.collapse_revival:
    revival = collapse_revival(alpha, params, n_max=truncation.mode)
    result.traces = revival.traces
    result.extras.update({f"revival_{k}": v for k, v in revival.extras.items()})
  return ScenarioRun(result=result, params=params)


def cat_dispersive_scenario(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Dispersive cat (e^{-i phi}|e_c>|alpha e^{-i phi}> + |g_c>|alpha e^{i phi}>) / sqrt(2). """
  params = config.system.params(dispersive=True)
  phi = math.pi / 2 if config.protocol.phi is None else float(config.protocol.phi)
  t = dispersive_time(params, phi)
  result = cat_dispersive(config.protocol.complex_alpha, t, params, truncation.mode)
  return ScenarioRun(result=result, params=params)


def entangle(n_samples:int):
  def run(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
    model = model_choice(config, ['effective', 'full'], 'effective')
    params = config.system.params(n_samples=n_samples)
    t = None if config.time.t_final is None else config.time.t_final / params.epsilon
    result = entangle_samples(n_samples, params, model=model, mode=config.protocol.mode, t=t,
      n_max=truncation.mode, config=step_config(config, params), cavity=int(truncation.cavity),
      samples=int(config.time.samples), progress=progress)
    return ScenarioRun(result=result, params=params)
  return run


def two_sample(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Bell state of two samples sharing one control excitation. """
  return entangle(2)(config, truncation, progress)


def w_state(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ W state of protocol.n_samples samples. """
  n = int(config.protocol.n_samples)
  if n < 2:
    raise ConfigError("protocol.n_samples", f"needs at least 2 samples, got {n}")
  return entangle(n)(config, truncation, progress)


def wigner_state(config:ScenarioConfig, n_max:Optional[int]) -> PureState:
  protocol = config.protocol
  alpha = protocol.complex_alpha

  if protocol.wigner_state in ('vacuum', 'fock'):
    n = 0 if protocol.wigner_state == 'vacuum' else int(protocol.fock_n)
    levels = n if n_max is None else n_max
    if levels < n:
      raise TruncationError(f"truncation {levels} cannot hold |{n}>")
    return fock_state(make_space([BosonMode(max(levels, 1))]), 0, n)

  levels = coherent_truncation(alpha) if n_max is None else n_max
  if protocol.wigner_state == 'coherent':
    return coherent_state(make_space([BosonMode(levels)]), 0, alpha)

  plus = torch.tensor([1, 1], dtype=dtype) / math.sqrt(2)
  return conditional_mode_state(dispersive_cat_state(alpha, math.pi / 2, levels), plus)


def wigner(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Displaced parity measurement of a mode state through the control atom. """
  params = config.system.params(dispersive=True)
  state = wigner_state(config, truncation.mode)

  protocol = config.protocol
  grid = make_grid(0., float(protocol.grid_half_width), int(protocol.grid_points))

  measured = wigner_measurement(state, grid, params)
  exact = wigner_exact(state, grid, n_work=measured.n_work)

  result = ProtocolResult(
    name='wigner',
    schedule=[ScheduleStep('evolve', measured.interaction_time, dict(model='dispersive'))],
    final=state,
    warnings=measured.warnings,
    extras=dict(
      wigner_state=protocol.wigner_state,
      grid_points=int(protocol.grid_points),
      n_work=measured.n_work,
      max_abs_difference=measured.wigner.max_abs_difference(exact),
      series_max_abs_difference=wigner_series_map(state, grid).max_abs_difference(exact),
      sigma_x_residual=measured.sigma_x_residual,
      integral=integrate_wigner(measured.wigner),
      w_origin=measured.wigner.at(0)))
  return ScenarioRun(result=result, params=params, wigner=measured.wigner)


def full_vs_effective_scenario(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Time dependent cavity model against the effective vacuum Hamiltonian. """
  system = config.system
  params = system.params()
  result = full_vs_effective(g=float(params.g), delta_c=float(params.delta_c),
    n_atoms=int(params.n_atoms), m_max=int(truncation.mode or 9), cavity=int(truncation.cavity),
    delta_d=None if system.delta_d is None else float(params.delta_d),
    config=step_config(config, params), progress=progress)
  return ScenarioRun(result=result, params=params)


def decoherence(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Master equation Fock |1> preparation at the Raman decay rates against (gamma' + kappa') t1. """
  raman = config.raman.raman()
  result = lindblad_fock_infidelity(raman, n_max=int(truncation.mode or 9),
    config=StepConfig(dt=config.time.dt, stride=config.time.stride,
                      time_scale=raman_effective(raman).epsilon),
    progress=progress)
  return ScenarioRun(result=result, params=raman_effective(raman).system_params())


def feasibility(config:ScenarioConfig, truncation:Truncation, progress:bool) -> ScenarioRun:
  """ Effective Raman coupling, decay rates, t1 and the linear decoherence budget. """
  return feasibility_numbers(config.raman.raman())


def feasibility_numbers(raman) -> ScenarioRun:
  budget = decoherence_budget(raman)
  e = budget.effective
  two_pi = 2 * math.pi
  derived = dict(
    g_eff=e.g_eff,
    lambda_c=e.lambda_c,
    epsilon=e.epsilon,
    gamma_eff=e.gamma_eff,
    kappa_eff=e.kappa_eff,
    epsilon_hz=e.epsilon / two_pi,
    gamma_eff_hz=e.gamma_eff / two_pi,
    kappa_eff_hz=e.kappa_eff / two_pi,
    t1=e.t1,
    t1_us=e.t1 * 1e6,
    budget=budget.budget)
  return ScenarioRun(derived=derived, warnings=budget.warnings)


@dataclass(frozen=True)
class Scenario:
  name: str
  run: Callable[[ScenarioConfig, Truncation, bool], ScenarioRun]
  # scenarios whose results depend on the mode truncation
  truncated: bool = True

  @property
  def doc(self) -> str:
    return (self.run.__doc__ or "").strip().splitlines()[0]


scenarios:Dict[str, Scenario] = {s.name: s for s in [
  Scenario('jcm-rabi', jcm_rabi),
  Scenario('fock-ladder', fock),
  Scenario('cat-resonant', cat_resonant_scenario),
  Scenario('cat-dispersive', cat_dispersive_scenario),
  Scenario('two-sample', two_sample),
  Scenario('w-state', w_state),
  Scenario('wigner', wigner, truncated=False),
  Scenario('full-vs-effective', full_vs_effective_scenario),
  Scenario('decoherence', decoherence),
  Scenario('feasibility', feasibility, truncated=False),
]}


def observables_of(run:ScenarioRun) -> Dict[str, float]:
  """ Scalar outcomes compared by the truncation convergence check. """
  values = {}
  result = run.result
  if result is None:
    return values
  if result.fidelity is not None:
    values['fidelity'] = result.fidelity
  if result.traces is not None:
    for key in result.traces.keys():
      if key != 't':
        values[f"final_{key}"] = result.traces[key][-1].item()
  return values


def default_mode_truncation(run:ScenarioRun) -> Optional[int]:
  if run.result is None:
    return None
  n_max = run.result.extras.get('n_max')
  return None if n_max is None else int(n_max)


def pinned_step(config:ScenarioConfig, run:ScenarioRun) -> ScenarioConfig:
  """ config with the integrator step of `run` made explicit, so that a rerun at another
  truncation integrates on the same time grid. """
  rate = None if run.result is None else run.result.extras.get('rate_bound')
  if config.time.dt is not None or not rate:
    return config
  return replace(config, time=replace(config.time, dt=StepConfig.step_factor / rate))


def run_scenario(config:ScenarioConfig, progress:bool = False) -> ScenarioRun:
  """ Run config.scenario, then (unless truncation.convergence_check is off) repeat it with
  the mode truncation doubled on the same time grid. """
  scenario = scenarios[config.scenario]
  truncation = config.truncation
  run = scenario.run(config, truncation, progress)

  if not (truncation.convergence_check and scenario.truncated):
    return run

  n_max = truncation.mode or default_mode_truncation(run)
  if n_max is None:
    return run

  doubled = scenario.run(pinned_step(config, run), truncation.doubled(n_max), progress)
  base, check = observables_of(run), observables_of(doubled)
  changes = {k: abs(base[k] - check[k]) for k in base if k in check}
  worst = max(changes.values(), default=0.)

  run.derived['convergence_change'] = worst
  if worst > truncation.convergence_tolerance:
    key = max(changes, key=changes.get)
    raise TruncationError(f"{key} changes by {worst:.3g} when the mode truncation is doubled "
                          f"to {2 * n_max}")
  return run
