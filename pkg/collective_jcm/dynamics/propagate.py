import math
from numbers import Real

from beartype import beartype
from beartype.typing import Callable, Dict, Optional, Union
import torch
from tqdm import tqdm

from collective_jcm.dynamics.report import (PropagationReport, StepConfig, expectation_values,
  make_traces)
from collective_jcm.errors import ConvergenceError
from collective_jcm.hilbert.operator import Operator, TimeDependentOperator
from collective_jcm.hilbert.space import check_same_space
from collective_jcm.hilbert.states import PureState
from collective_jcm.torch_ops.linalg import dtype, infinity_norm, real_dtype

# Hermitian eigendecomposition is only attempted up to this dimension
eigh_dim_limit = 4096

Hamiltonian = Union[Operator, TimeDependentOperator]


def check_eigh_dim(dim:int):
  if dim > eigh_dim_limit:
    raise ConvergenceError(f"dimension {dim} exceeds the eigendecomposition limit {eigh_dim_limit}, "
                           "use propagate_timedep instead")


class StaticPropagator:
  """ exp(-i H t) for a fixed Hermitian H, diagonalized once. """

  def __init__(self, hamiltonian:Operator):
    check_eigh_dim(hamiltonian.dim)
    self.space = hamiltonian.space
    self.energies, self.vectors = torch.linalg.eigh(hamiltonian.dense)

  def phases(self, times:torch.Tensor) -> torch.Tensor:
    return torch.exp(-1j * torch.outer(times.to(real_dtype), self.energies).to(dtype))

  def evolve(self, psi0:PureState, times:torch.Tensor) -> torch.Tensor:
    """ States at each time as rows of a (T, dim) tensor. """
    check_same_space(self.space, psi0.space)
    coeffs = self.vectors.mH @ psi0.amplitudes
    return (self.phases(times) * coeffs) @ self.vectors.T

  def unitary(self, t:float) -> torch.Tensor:
    phases = torch.exp(-1j * self.energies.to(dtype) * t)
    return (self.vectors * phases) @ self.vectors.mH


@beartype
def propagate_static(hamiltonian:Operator, psi0:PureState, t:Real) -> PureState:
  """ psi(t) = exp(-i H t) psi0 via Hermitian eigendecomposition. """
  check_same_space(hamiltonian.space, psi0.space)
  if t == 0:
    return psi0

  amplitudes = StaticPropagator(hamiltonian).evolve(psi0, torch.tensor([float(t)]))[0]
  return PureState(psi0.space, amplitudes)


@beartype
def propagate_static_trace(hamiltonian:Operator, psi0:PureState, times:torch.Tensor,
                           observables:Optional[Dict[str, Operator]] = None) -> PropagationReport:
  """ Exact evolution sampled on a time grid, with observable traces. """
  times = times.to(real_dtype)
  if times.shape[0] > 1 and not bool((times[1:] > times[:-1]).all()):
    raise ValueError("time grid must be strictly increasing")

  amplitudes = StaticPropagator(hamiltonian).evolve(psi0, times)
  drift = (torch.linalg.vector_norm(amplitudes, dim=-1) - 1).abs().cummax(dim=0).values

  return PropagationReport(
    final=PureState(psi0.space, amplitudes[-1]),
    times=times,
    drift=drift,
    traces=make_traces(times, expectation_values(observables or {}, amplitudes)),
    states=amplitudes)


def hamiltonian_action(hamiltonian:Hamiltonian) -> Callable[[float, torch.Tensor], torch.Tensor]:
  """ (t, psi) -> -i H(t) psi """
  if isinstance(hamiltonian, TimeDependentOperator):
    return lambda t, psi: -1j * hamiltonian.apply(t, psi)

  dense = hamiltonian.dense
  return lambda t, psi: -1j * (dense @ psi)


def rate_bound(hamiltonian:Hamiltonian) -> float:
  """ Largest rate the integrator has to resolve, bounded from the operator norms and phase frequencies. """
  if isinstance(hamiltonian, TimeDependentOperator):
    return max(hamiltonian.norm_bound(), hamiltonian.max_frequency())
  return infinity_norm(hamiltonian.dense)


def rk4_step(f:Callable, t:float, y:torch.Tensor, h:float) -> torch.Tensor:
  k1 = f(t, y)
  k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
  k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
  k4 = f(t + h, y + h * k3)
  return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def step_grid(rate:float, t_final:float, config:StepConfig):
  """ Number of steps and uniform step length landing exactly on t_final. """
  dt = config.step_size(rate, t_final)
  n_steps = max(1, math.ceil(t_final / dt - 1e-9))
  return n_steps, t_final / n_steps


@beartype
def propagate_timedep(hamiltonian:Hamiltonian, psi0:PureState, t_final:Real,
                      config:StepConfig = StepConfig(),
                      observables:Optional[Dict[str, Operator]] = None,
                      t0:Real = 0., progress:bool = False) -> PropagationReport:
  """ Fixed step RK4 on the Schrodinger equation, renormalizing after every step.

  The norm drift before renormalization is accumulated, the run is flagged
  non-converged when it exceeds norm_tolerance per unit time (1 / time_scale).
  """
  check_same_space(hamiltonian.space, psi0.space)
  observables = observables or {}
  t0, t_final = float(t0), float(t_final)

  psi = psi0.amplitudes.clone()
  if t_final == 0:
    times = torch.tensor([t0], dtype=real_dtype)
    return PropagationReport(final=psi0, times=times, drift=torch.zeros(1, dtype=real_dtype),
      traces=make_traces(times, expectation_values(observables, psi.unsqueeze(0))),
      states=psi.unsqueeze(0), dt=0.)

  f = hamiltonian_action(hamiltonian)
  rate = rate_bound(hamiltonian)
  n_steps, dt = step_grid(rate, t_final, config)

  times, samples, drifts = [t0], [psi.clone()], [0.]
  drift = 0.

  for step in tqdm(range(n_steps), desc="propagate", disable=not progress):
    t = t0 + step * dt
    psi = rk4_step(f, t, psi, dt)

    norm = torch.linalg.vector_norm(psi).item()
    if not math.isfinite(norm) or norm == 0:
      raise ConvergenceError("non-finite amplitudes during propagation", step=step + 1)

    drift += abs(norm - 1)
    psi = psi / norm

    if (step + 1) % config.stride == 0 or step + 1 == n_steps:
      times.append(t0 + (step + 1) * dt)
      samples.append(psi.clone())
      drifts.append(drift)

  allowed = config.norm_tolerance * max(1., t_final * config.time_scale)
  converged = drift <= allowed
  reason = None if converged else f"accumulated norm drift {drift:.3g} exceeds {allowed:.3g}"

  times = torch.tensor(times, dtype=real_dtype)
  amplitudes = torch.stack(samples)
  return PropagationReport(
    final=PureState(psi0.space, psi),
    times=times,
    drift=torch.tensor(drifts, dtype=real_dtype),
    traces=make_traces(times, expectation_values(observables, amplitudes)),
    states=amplitudes,
    converged=converged, reason=reason, steps=n_steps, dt=dt, rate_bound=rate)


@beartype
def richardson_order(hamiltonian:Hamiltonian, psi0:PureState, t_final:Real, dt:Real,
                     exact:PureState) -> float:
  """ Ratio of the propagation errors at dt and dt / 2, 16 for a fourth order method.
  dt is first shortened to divide t_final. """
  n_steps = max(1, math.ceil(float(t_final) / float(dt) - 1e-9))
  dt = float(t_final) / n_steps

  def error(h):
    report = propagate_timedep(hamiltonian, psi0, t_final, config=StepConfig(dt=h, stride=10 ** 9))
    return torch.linalg.vector_norm(report.final.amplitudes - exact.amplitudes).item()

  return error(dt) / error(dt / 2)
