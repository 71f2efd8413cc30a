import math
from numbers import Real

from beartype import beartype
from beartype.typing import Dict, List, Optional, Union
import torch
from tqdm import tqdm

from collective_jcm.dynamics.propagate import step_grid
from collective_jcm.dynamics.report import (CollapseChannel, PropagationReport, StepConfig,
  density_expectations, make_traces, stack_samples)
from collective_jcm.errors import ConvergenceError
from collective_jcm.hilbert.operator import Operator
from collective_jcm.hilbert.space import check_same_space
from collective_jcm.hilbert.states import DensityMatrix, PureState
from collective_jcm.torch_ops.linalg import dtype, hermitian_part, infinity_norm, real_dtype

# density matrices are propagated densely, dim^2 entries per step
lindblad_dim_limit = 512


class LindbladGenerator:
  """ drho/dt = -i (H_eff rho - rho H_eff+) + sum_k J_k rho J_k+ with
  H_eff = H - i/2 sum_k J_k+ J_k and J_k = sqrt(gamma_k) L_k. """

  def __init__(self, hamiltonian:Operator, channels:List[CollapseChannel]):
    for channel in channels:
      check_same_space(hamiltonian.space, channel.operator.space)

    active = [c for c in channels if c.rate > 0]
    dim = hamiltonian.dim

    self.jumps = (torch.stack([math.sqrt(c.rate) * c.operator.dense for c in active])
                  if len(active) > 0 else torch.zeros(0, dim, dim, dtype=dtype))

    decay = torch.einsum('kji,kjl->il', self.jumps.conj(), self.jumps)
    self.h_eff = hamiltonian.dense - 0.5j * decay

  def __call__(self, rho:torch.Tensor) -> torch.Tensor:
    h_rho = self.h_eff @ rho
    drho = -1j * (h_rho - h_rho.mH)
    if self.jumps.shape[0] > 0:
      drho = drho + (self.jumps @ rho @ self.jumps.mH).sum(dim=0)
    return drho

  def rate_bound(self) -> float:
    return infinity_norm(self.h_eff)


def as_density(state:Union[PureState, DensityMatrix]) -> DensityMatrix:
  return state.to_density() if isinstance(state, PureState) else state


@beartype
def lindblad_evolve(hamiltonian:Operator, channels:List[CollapseChannel],
                    rho0:Union[PureState, DensityMatrix], t_final:Real,
                    config:StepConfig = StepConfig(),
                    observables:Optional[Dict[str, Operator]] = None,
                    checkpoints:int = 10, progress:bool = False) -> PropagationReport:
  """ RK4 integration of the Lindblad master equation.

  rho is made Hermitian after every step but its trace is not renormalized; the trace
  drift and the smallest eigenvalue at `checkpoints` evenly spaced steps decide convergence.
  """
  rho0 = as_density(rho0)
  check_same_space(hamiltonian.space, rho0.space)
  if hamiltonian.dim > lindblad_dim_limit:
    raise ConvergenceError(f"dimension {hamiltonian.dim} exceeds the master equation limit {lindblad_dim_limit}")

  observables = observables or {}
  generator = LindbladGenerator(hamiltonian, channels)
  t_final = float(t_final)

  rho = rho0.matrix.clone()
  times, samples, drifts = [0.], [density_expectations(observables, rho)], [0.]
  drift, min_eigenvalues = 0., []
  converged, reason = True, None

  if t_final == 0:
    return PropagationReport(final=rho0, times=torch.zeros(1, dtype=real_dtype),
      drift=torch.zeros(1, dtype=real_dtype),
      traces=make_traces(torch.zeros(1, dtype=real_dtype), stack_samples(samples)), dt=0.)

  rate = generator.rate_bound()
  n_steps, dt = step_grid(rate, t_final, config)
  checks = {round(n_steps * (k + 1) / checkpoints) for k in range(checkpoints)}

  for step in tqdm(range(n_steps), desc="lindblad", disable=not progress):
    k1 = generator(rho)
    k2 = generator(rho + 0.5 * dt * k1)
    k3 = generator(rho + 0.5 * dt * k2)
    k4 = generator(rho + dt * k3)
    rho = hermitian_part(rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4))

    trace = rho.diagonal().sum().real.item()
    if not math.isfinite(trace):
      raise ConvergenceError("non-finite density matrix during Lindblad evolution", step=step + 1)
    drift = max(drift, abs(trace - 1))

    if step + 1 in checks:
      min_eig = torch.linalg.eigvalsh(rho).min().item()
      min_eigenvalues.append(min_eig)
      if min_eig < -config.positivity_tolerance and converged:
        converged, reason = False, f"negative eigenvalue {min_eig:.3g} at step {step + 1}"

    if (step + 1) % config.stride == 0 or step + 1 == n_steps:
      times.append((step + 1) * dt)
      samples.append(density_expectations(observables, rho))
      drifts.append(drift)

  if drift > config.norm_tolerance and converged:
    converged, reason = False, f"trace drift {drift:.3g} exceeds {config.norm_tolerance:.3g}"

  times = torch.tensor(times, dtype=real_dtype)
  return PropagationReport(
    final=DensityMatrix(rho0.space, rho),
    times=times,
    drift=torch.tensor(drifts, dtype=real_dtype),
    traces=make_traces(times, stack_samples(samples)),
    converged=converged, reason=reason, steps=n_steps, dt=dt, rate_bound=rate,
    min_eigenvalues=min_eigenvalues)
