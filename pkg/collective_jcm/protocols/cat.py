""" Schrodinger cat states of the collective mode.

Resonant: |g_c>|alpha> under the bosonized JCM splits into two quasicoherent branches
rotating in opposite directions, compared against the large-n_bar expansion of the exact
Rabi phases. Dispersive: (|e_c> + |g_c>)|alpha> / sqrt(2) under the dispersive mode
Hamiltonian becomes (e^{-i phi}|e_c>|alpha e^{-i phi}> + |g_c>|alpha e^{i phi}>) / sqrt(2)
with phi = chi t, exactly.
"""
from dataclasses import dataclass
import cmath
import math
from numbers import Number, Real

from beartype import beartype
from beartype.typing import Optional
import torch

from collective_jcm.analysis.envelope import collapse_revival_times
from collective_jcm.analysis.fidelity import fidelity, purity, reduce
from collective_jcm.dynamics.propagate import StaticPropagator, propagate_static
from collective_jcm.dynamics.report import expectation_values, make_traces
from collective_jcm.errors import ParameterError
from collective_jcm.hilbert.ladder import control_ops
from collective_jcm.hilbert.space import BosonMode, make_space
from collective_jcm.hilbert.states import PureState, coherent_amplitudes, coherent_truncation
from collective_jcm.model.hamiltonians import (dispersive_mode_hamiltonian, jcm_hamiltonian,
  mode_space)
from collective_jcm.model.params import SystemParams
from collective_jcm.model.regime import check_regime
from collective_jcm.protocols.result import ProtocolResult, ScheduleStep
from collective_jcm.protocols.segments import standard_observables
from collective_jcm.torch_ops.linalg import dtype, real_dtype


@dataclass(frozen=True)
class CatReference:
  """ (|phi_c+>|alpha+> + |phi_c->|alpha->) / sqrt(2) on [control, mode]. """
  plus: PureState            # mode branch rotating forwards
  minus: PureState
  control_plus: torch.Tensor  # (2,) control amplitudes (|g>, |e>)
  control_minus: torch.Tensor
  state: PureState

  @property
  def branch_overlap(self) -> float:
    """ |<alpha+|alpha->|, zero for orthogonal branches """
    return abs(self.plus.overlap(self.minus))

  @property
  def norm(self) -> float:
    return self.state.norm


def min_mean(alpha:complex):
  if abs(alpha) ** 2 < 4:
    return [f"|alpha|^2={abs(alpha) ** 2:.3g} is below 4, quasicoherent expansion is not meaningful"]
  return []


@beartype
def cat_reference(alpha:Number, t:Real, params:SystemParams, n_max:Optional[int] = None) -> CatReference:
  """ Quasicoherent two-branch approximation of the resonant JCM evolution of |g_c>|alpha>.

  With sqrt(n) ~ sqrt(n_bar)/2 + n / (2 sqrt(n_bar)) - (n - n_bar)^2 / (8 n_bar^{3/2}) each branch
  s = +-1 carries

    A_n^s = c_n exp(i s eps t [sqrt(n_bar)/2 + n / (2 sqrt(n_bar)) - (n - n_bar)^2 / (8 n_bar^{3/2})])

  the quadratic term being a phase of the same sign as the branch rotation. The free rotation
  sqrt(N) eps (b+ b + S_zc) of the resonant Hamiltonian is applied exactly.
  """
  alpha, t = complex(alpha), float(t)
  n_bar = abs(alpha) ** 2
  if n_bar == 0:
    raise ParameterError("cat reference needs alpha != 0")

  n_max = coherent_truncation(alpha) if n_max is None else n_max
  eps = params.epsilon
  omega = params.effective.mode_frequency
  theta = cmath.phase(alpha)

  c = coherent_amplitudes(alpha, n_max)
  n = torch.arange(n_max + 1, dtype=real_dtype)
  root = math.sqrt(n_bar)
  rotation = torch.exp(-1j * omega * n * t).to(dtype)

  branches, controls = [], []
  for s in (1, -1):
    phase = s * eps * t * (root / 2 + n / (2 * root) - (n - n_bar) ** 2 / (8 * root ** 3))
    amplitudes = c * torch.exp(1j * phase).to(dtype) * rotation
    branches.append(PureState(make_space([BosonMode(n_max)]), amplitudes))

    excited = -s * cmath.exp(1j * theta) * cmath.exp(1j * s * eps * t / (2 * root))
    control = torch.tensor([cmath.exp(0.5j * omega * t),
                            excited * cmath.exp(-0.5j * omega * t)], dtype=dtype) / math.sqrt(2)
    controls.append(control)

  state = sum(torch.kron(control, branch.amplitudes) for control, branch in zip(controls, branches))
  space = mode_space(n_max)
  return CatReference(plus=branches[0], minus=branches[1],
                      control_plus=controls[0], control_minus=controls[1],
                      state=PureState(space, state / math.sqrt(2)))


def initial_cat_state(alpha:complex, n_max:int, control:torch.Tensor) -> PureState:
  return PureState(mode_space(n_max), torch.kron(control.to(dtype), coherent_amplitudes(alpha, n_max)))


@beartype
def cat_resonant(alpha:Number, t:Real, params:SystemParams, n_max:Optional[int] = None) -> ProtocolResult:
  """ Exact evolution of |g_c>|alpha> under the resonant JCM compared with the
  quasicoherent reference; reports the raw overlap |<reference|exact>|^2, the overlap with
  the normalized reference and the branch orthogonality defect. """
  alpha, t = complex(alpha), float(t)
  n_max = coherent_truncation(alpha) if n_max is None else n_max
  space = mode_space(n_max)

  psi0 = initial_cat_state(alpha, n_max, torch.tensor([1, 0]))
  exact = propagate_static(jcm_hamiltonian(params, space), psi0, t)
  reference = cat_reference(alpha, t, params, n_max)

  raw = abs(reference.state.overlap(exact)) ** 2
  n_bar = abs(alpha) ** 2
  schedule = [ScheduleStep('evolve', t, dict(model='jcm'))] if t > 0 else []

  return ProtocolResult(
    name='cat-resonant',
    schedule=schedule,
    final=exact,
    target=reference.state.normalized(),
    fidelity=fidelity(reference.state.normalized(), exact),
    warnings=check_regime(params) + min_mean(alpha),
    extras=dict(
      raw_overlap=raw,
      reference_norm=reference.norm,
      branch_overlap=reference.branch_overlap,
      eps_t=params.epsilon * t,
      eps_t_over_4nbar=params.epsilon * t / (4 * n_bar),
      n_max=n_max))


@beartype
def collapse_revival(alpha:Number, params:SystemParams, eps_t_final:Optional[Real] = None,
                     samples_per_period:int = 24, n_max:Optional[int] = None) -> ProtocolResult:
  """ Rabi oscillations of <S_zc> from |g_c>|alpha>: collapse after eps t ~ 2 and revival
  near eps t = 2 pi sqrt(n_bar), located from the envelope smoothed over one Rabi period. """
  alpha = complex(alpha)
  n_bar = abs(alpha) ** 2
  if n_bar == 0:
    raise ParameterError("collapse and revival needs alpha != 0")

  eps = params.epsilon
  revival = 2 * math.pi * math.sqrt(n_bar)
  eps_t_final = 1.6 * revival if eps_t_final is None else float(eps_t_final)

  n_max = coherent_truncation(alpha) if n_max is None else n_max
  space = mode_space(n_max)
  hamiltonian = jcm_hamiltonian(params, space)

  period = math.pi / math.sqrt(n_bar)      # of <S_zc>, in units of 1/eps
  n_samples = math.ceil(eps_t_final / period * samples_per_period) + 1
  eps_times = torch.linspace(0, eps_t_final, n_samples, dtype=real_dtype)

  psi0 = initial_cat_state(alpha, n_max, torch.tensor([1, 0]))
  amplitudes = StaticPropagator(hamiltonian).evolve(psi0, eps_times / eps)
  observables = standard_observables(space, [1])
  traces = make_traces(eps_times / eps, expectation_values(observables, amplitudes))

  found = collapse_revival_times(eps_times, traces['Sz_c'], period,
    revival_search=(0.6 * revival, 1.6 * revival), quiet=(0.25 * revival, 0.45 * revival))

  return ProtocolResult(
    name='collapse-revival',
    schedule=[ScheduleStep('evolve', eps_t_final / eps, dict(model='jcm'))],
    final=PureState(space, amplitudes[-1]),
    traces=traces,
    warnings=check_regime(params) + min_mean(alpha),
    extras=dict(
      collapse_eps_t=found.collapse_time,
      revival_eps_t=found.revival_time,
      revival_amplitude=found.revival_amplitude,
      collapsed_amplitude=found.collapsed_amplitude,
      expected_revival_eps_t=revival,
      n_max=n_max))


def dispersive_time(params:SystemParams, phi:float) -> float:
  """ Interaction time for a conditional phase |chi| t = phi. """
  return phi / abs(params.chi)


def two_branch_purity(alpha:complex, phi:float) -> float:
  """ Purity of (|alpha e^{-i phi}><.| + |alpha e^{i phi}><.|) / 2. """
  return 0.5 * (1 + math.exp(-4 * abs(alpha) ** 2 * math.sin(phi) ** 2))


@beartype
def dispersive_cat_state(alpha:Number, phi:Real, n_max:int) -> PureState:
  """ (e^{-i phi}|e_c>|alpha e^{-i phi}> + |g_c>|alpha e^{i phi}>) / sqrt(2) """
  alpha, phi = complex(alpha), float(phi)
  ground = torch.kron(torch.tensor([1, 0], dtype=dtype),
                      coherent_amplitudes(alpha * cmath.exp(1j * phi), n_max))
  excited = torch.kron(torch.tensor([0, 1], dtype=dtype),
                       coherent_amplitudes(alpha * cmath.exp(-1j * phi), n_max))
  return PureState(mode_space(n_max), (cmath.exp(-1j * phi) * excited + ground) / math.sqrt(2))


@beartype
def cat_dispersive(alpha:Number, t:Real, params:SystemParams, n_max:Optional[int] = None) -> ProtocolResult:
  """ Evolve (|e_c> + |g_c>)|alpha> / sqrt(2) under the dispersive mode Hamiltonian and
  score against the closed-form cat state at phi = chi t. """
  alpha, t = complex(alpha), float(t)
  n_max = coherent_truncation(alpha) if n_max is None else n_max
  space = mode_space(n_max)

  plus = torch.tensor([1, 1], dtype=dtype) / math.sqrt(2)
  psi0 = initial_cat_state(alpha, n_max, plus)
  final = propagate_static(dispersive_mode_hamiltonian(params, space), psi0, t)

  phi = params.chi * t
  target = dispersive_cat_state(alpha, phi, n_max)
  mode_purity = purity(reduce(final, [1]))
  closed_form = two_branch_purity(alpha, phi)

  ops = control_ops(space)
  schedule = [ScheduleStep('evolve', t, dict(model='dispersive'))] if t > 0 else []

  return ProtocolResult(
    name='cat-dispersive',
    schedule=schedule,
    final=final,
    target=target,
    fidelity=fidelity(target, final),
    warnings=check_regime(params, dispersive=True) + min_mean(alpha),
    extras=dict(
      phi=phi,
      chi=params.chi,
      mode_purity=mode_purity,
      purity_closed_form=closed_form,
      purity_error=abs(mode_purity - closed_form),
      sigma_x=final.expectation(ops.sigma_x).real,
      n_max=n_max))


@beartype
def conditional_mode_state(state:PureState, control:torch.Tensor) -> PureState:
  """ Mode state left after projecting the control atom of a [control, mode] state
  onto `control` (amplitudes over (|g>, |e>)), normalized. """
  n_levels = state.space.dims[1]
  amplitudes = control.to(dtype).conj() @ state.amplitudes.reshape(2, n_levels)
  return PureState(state.space.subspace([1]), amplitudes).normalized()
