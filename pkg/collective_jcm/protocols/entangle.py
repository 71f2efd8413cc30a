import math
from numbers import Real

from beartype import beartype
from beartype.typing import Literal, Optional
import torch

from collective_jcm.analysis.fidelity import (entanglement_entropy, fidelity, reduce, w_entropy,
  w_state)
from collective_jcm.dynamics.propagate import StaticPropagator
from collective_jcm.dynamics.report import StepConfig
from collective_jcm.errors import ParameterError
from collective_jcm.hilbert.ladder import control_ops
from collective_jcm.hilbert.space import BosonMode, ControlQubit, make_space
from collective_jcm.hilbert.states import basis_state
from collective_jcm.model.hamiltonians import (dark_mode_population, dicke_factor,
  full_hamiltonian_td, full_space, multi_sample_hamiltonian)
from collective_jcm.model.params import SystemParams
from collective_jcm.model.regime import check_regime
from collective_jcm.protocols.fock import resonance_warnings
from collective_jcm.protocols.result import ProtocolResult
from collective_jcm.protocols.segments import SegmentEvolver, rabi_frequency, standard_observables
from collective_jcm.torch_ops.linalg import real_dtype

# a single excitation is shared between the modes, two levels per mode are exact
default_mode_truncation = 2


def entangling_time(n_samples:int, epsilon:float) -> float:
  """ pi / (2 sqrt(n) eps), the time the control excitation takes to move into the bright mode """
  return math.pi / (2 * math.sqrt(n_samples) * epsilon)


@beartype
def entangle_samples(n_samples:int, params:SystemParams,
                     model:Literal['effective', 'full'] = 'effective',
                     mode:Literal['boson', 'dicke'] = 'boson',
                     t:Optional[Real] = None, n_max:Optional[int] = None,
                     config:Optional[StepConfig] = None, cavity:int = 2, samples:int = 64,
                     progress:bool = False) -> ProtocolResult:
  """ Share the excitation of the control atom among n samples through the bright mode,
  |e_c>|0..0> -> |g_c> (|10..0> + |01..0> + ... + |0..01>) / sqrt(n) at t = pi / (2 sqrt(n) eps).

  Reports the W state fidelity of the mode sector, the control ground population, single
  mode entanglement entropy against its closed form and (effective model) the largest
  dark mode population and the Rabi frequency seen in <S_zc>.
  """
  if n_samples < 2:
    raise ParameterError(f"entangling needs at least 2 samples, got {n_samples}")
  if params.n_samples != n_samples:
    raise ParameterError(f"params describe {params.n_samples} samples, asked for {n_samples}")

  n_max = default_mode_truncation if n_max is None else n_max
  t_full = entangling_time(n_samples, params.epsilon)
  t = t_full if t is None else float(t)

  warnings = check_regime(params) + resonance_warnings(params)

  if model == 'full':
    space = full_space(params, n_max, cavity=cavity)
    hamiltonian = full_hamiltonian_td(params, space)
    observables = standard_observables(space, list(range(1, n_samples + 1)))
  else:
    factor = BosonMode(n_max) if mode == 'boson' else dicke_factor(params, n_max)
    space = make_space([ControlQubit()] + [factor] * n_samples)
    hamiltonian = multi_sample_hamiltonian(params, space)
    observables = standard_observables(space, list(range(1, n_samples + 1)))
    observables['dark'] = dark_mode_population(space)

  modes = list(range(1, n_samples + 1))
  ops = control_ops(space)

  config = config or StepConfig(time_scale=float(params.g))
  evolver = SegmentEvolver(hamiltonian, observables, config=config, samples=samples, progress=progress)

  state = basis_state(space, [1] + [0] * (len(space) - 1))
  state = evolver.evolve(state, t, model=model, n_samples=n_samples)

  mode_state = reduce(state, modes)
  target = w_state(mode_state.space, list(range(n_samples)))
  single = reduce(state, [1])

  traces = evolver.collected()
  extras = dict(
    n_samples=n_samples,
    model=model,
    t_entangle=t_full,
    control_ground=state.expectation(ops.ground).real,
    single_mode_entropy=entanglement_entropy(single),
    single_mode_entropy_closed_form=w_entropy(n_samples),
    n_max=n_max,
    integrator_steps=evolver.steps,
    rate_bound=evolver.rate_bound)

  if model == 'effective':
    extras['dark_population_max'] = traces['dark'].abs().max().item()
    extras['rabi_frequency'] = observed_rabi_frequency(hamiltonian, state.space, t_full, ops)
    extras['expected_rabi_frequency'] = math.sqrt(n_samples) * params.epsilon

  return ProtocolResult(
    name='w-state' if n_samples > 2 else 'two-sample',
    schedule=evolver.schedule,
    final=state,
    target=target,
    fidelity=fidelity(mode_state, target),
    traces=traces,
    warnings=warnings,
    converged=evolver.converged,
    reason=evolver.reason,
    extras=extras)


def observed_rabi_frequency(hamiltonian, space, t_full:float, ops, periods:int = 2,
                            samples:int = 400) -> float:
  """ Half the oscillation frequency of <S_zc> over a few Rabi periods, sqrt(n) eps when
  the excitation cycles between the control atom and the bright mode. """
  times = torch.linspace(0, 4 * periods * t_full, samples, dtype=real_dtype)
  psi0 = basis_state(space, [1] + [0] * (len(space) - 1))
  amplitudes = StaticPropagator(hamiltonian).evolve(psi0, times)
  sz = (amplitudes.conj() * ops.sz.apply(amplitudes.T).T).sum(dim=-1).real
  return rabi_frequency(times, sz) / 2
