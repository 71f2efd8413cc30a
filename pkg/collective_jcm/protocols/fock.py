from dataclasses import dataclass
import math
from numbers import Real

from beartype import beartype
from beartype.typing import List, Literal, Optional, Tuple, Union

from collective_jcm.analysis.fidelity import fidelity, reduce
from collective_jcm.dynamics.report import StepConfig
from collective_jcm.errors import ParameterError, TruncationError
from collective_jcm.hilbert.ladder import control_ops
from collective_jcm.hilbert.operator import Operator, TimeDependentOperator
from collective_jcm.hilbert.space import BosonMode, ControlQubit, SpaceDescriptor, make_space
from collective_jcm.hilbert.states import basis_state, fock_state
from collective_jcm.model.hamiltonians import (dicke_factor, effective_vacuum_hamiltonian,
  full_hamiltonian_td, full_space, jcm_hamiltonian, vacuum_space)
from collective_jcm.model.params import SystemParams
from collective_jcm.model.regime import check_regime
from collective_jcm.protocols.result import ProtocolResult
from collective_jcm.protocols.segments import (SegmentEvolver, decoherence_channels,
  standard_observables)

Model = Literal['jcm', 'effective', 'full']
ModeKind = Literal['boson', 'dicke']

# levels kept above the target excitation
truncation_margin = 8


@beartype
@dataclass(frozen=True)
class DecoherenceRates:
  """ Effective rates gamma' (spontaneous emission) and kappa' (cavity loss). """
  gamma_eff: Real
  kappa_eff: Real

  def __post_init__(self):
    if self.gamma_eff < 0 or self.kappa_eff < 0:
      raise ParameterError(f"decoherence rates must be non-negative, got {self}")

  @property
  def total(self) -> float:
    return float(self.gamma_eff + self.kappa_eff)


def ladder_durations(target_n:int, epsilon:float) -> List[float]:
  """ t_k = pi / (2 sqrt(k) eps), k = 1..target_n """
  return [math.pi / (2 * math.sqrt(k) * epsilon) for k in range(1, target_n + 1)]


def default_truncation(target_n:int, params:SystemParams, dicke:bool) -> int:
  n_max = target_n + truncation_margin
  return min(n_max, int(params.n_atoms)) if dicke else n_max


def check_truncation(target_n:int, n_max:int, params:SystemParams, dicke:bool):
  required = default_truncation(target_n, params, dicke)
  if n_max < required:
    raise TruncationError(f"truncation {n_max} below target + {truncation_margin} = {required}")


def resonance_warnings(params:SystemParams) -> List[str]:
  if abs(params.detuning) > 1e-9 * abs(params.lambda_c) * params.n_atoms:
    return [f"drive is off resonance, delta = {params.detuning:.4g}"]
  return []


@beartype
def ladder_system(params:SystemParams, model:Model, mode:ModeKind, n_max:int,
                  cavity:int = 2) -> Tuple[SpaceDescriptor, Union[Operator, TimeDependentOperator], int]:
  """ Space, Hamiltonian and collective mode factor index for a single sample model. """
  if model == 'full':
    space = full_space(params, n_max, cavity=cavity)
    return space, full_hamiltonian_td(params, space), 1

  if model == 'effective':
    space = vacuum_space(params, n_max)
    return space, effective_vacuum_hamiltonian(params, space), 1

  factor = BosonMode(n_max) if mode == 'boson' else dicke_factor(params, n_max)
  space = make_space([ControlQubit(), factor])
  return space, jcm_hamiltonian(params, space), 1


@beartype
def fock_ladder(target_n:int, params:SystemParams, model:Model = 'jcm', mode:ModeKind = 'boson',
                n_max:Optional[int] = None, decoherence:Optional[DecoherenceRates] = None,
                config:Optional[StepConfig] = None, cavity:int = 2, samples:int = 64,
                progress:bool = False) -> ProtocolResult:
  """ Climb the collective mode Fock ladder: starting from |e_c>|0>, evolve for
  t_k = pi / (2 sqrt(k) eps) to move the excitation into the mode (|e_c, k-1> -> |g_c, k>),
  re-excite the control atom with an ideal pulse and repeat until |target_n>. """
  if target_n < 1:
    raise ParameterError(f"target_n must be >= 1, got {target_n}")
  if params.n_samples != 1:
    raise ParameterError("the Fock ladder acts on a single sample")

  dicke = model != 'jcm' or mode == 'dicke'
  n_max = default_truncation(target_n, params, dicke) if n_max is None else n_max
  check_truncation(target_n, n_max, params, dicke)

  if decoherence is not None and model == 'full':
    raise ParameterError("decoherence is simulated on the effective models only")

  warnings = check_regime(params) + resonance_warnings(params)
  space, hamiltonian, mode_index = ladder_system(params, model, mode, n_max, cavity)
  ops = control_ops(space)

  channels = None
  if decoherence is not None:
    channels = decoherence_channels(space, [mode_index], float(decoherence.gamma_eff),
                                    float(decoherence.kappa_eff))

  config = config or StepConfig(time_scale=float(params.g))
  evolver = SegmentEvolver(hamiltonian, standard_observables(space, [mode_index]),
    config=config, channels=channels, samples=samples, progress=progress)

  state = basis_state(space, [1] + [0] * (len(space) - 1))
  durations = ladder_durations(target_n, params.epsilon)

  for k, duration in enumerate(durations, start=1):
    state = evolver.evolve(state, duration, model=model, step=k)
    if k < target_n:
      state = evolver.pulse(state, ops.sigma_x, gate='sigma_x', step=k)

  mode_state = reduce(state, [mode_index])
  target = fock_state(mode_state.space, 0, target_n)

  return ProtocolResult(
    name='fock-ladder',
    schedule=evolver.schedule,
    final=state,
    target=target,
    fidelity=fidelity(mode_state, target),
    traces=evolver.collected(),
    warnings=warnings,
    converged=evolver.converged,
    reason=evolver.reason,
    extras=dict(
      target_n=target_n,
      model=model,
      n_max=n_max,
      epsilon=float(params.epsilon),
      step_durations=durations,
      control_excited=state.expectation(ops.excited).real,
      integrator_steps=evolver.steps,
      rate_bound=evolver.rate_bound))
