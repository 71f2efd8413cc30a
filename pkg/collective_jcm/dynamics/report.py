from dataclasses import dataclass, field
from numbers import Integral, Real

from beartype import beartype
from beartype.typing import Dict, List, Optional, Union
from tensordict import TensorDict
import torch

from collective_jcm.errors import ParameterError
from collective_jcm.hilbert.operator import Operator
from collective_jcm.hilbert.states import DensityMatrix, PureState
from collective_jcm.torch_ops.linalg import real_dtype

State = Union[PureState, DensityMatrix]


@beartype
@dataclass(frozen=True)
class StepConfig:
  """ Integrator settings.

  dt: fixed step, None picks 0.05 / (bound on the largest rate in H)
  stride: record observables every `stride` steps
  norm_tolerance: allowed accumulated norm (or trace) drift per unit time
  positivity_tolerance: allowed negative eigenvalue of a density matrix at checkpoints
  time_scale: rate defining the unit of time for norm_tolerance (g for dimensionless runs)
  """
  dt: Optional[Real] = None
  stride: Integral = 1
  norm_tolerance: Real = 1e-7
  positivity_tolerance: Real = 1e-7
  time_scale: Real = 1.
  step_factor: Real = 0.05

  def __post_init__(self):
    if self.dt is not None and not self.dt > 0:
      raise ParameterError(f"dt must be positive, got {self.dt}")
    if self.stride < 1:
      raise ParameterError(f"stride must be >= 1, got {self.stride}")
    if not self.time_scale > 0:
      raise ParameterError(f"time_scale must be positive, got {self.time_scale}")

  def step_size(self, rate_bound:float, duration:float) -> float:
    """ Fixed step for a run of length `duration`, never longer than the run itself. """
    if self.dt is not None:
      dt = float(self.dt)
    elif rate_bound > 0:
      dt = self.step_factor / rate_bound
    else:
      dt = duration
    return min(dt, duration) if duration > 0 else dt


@beartype
@dataclass(frozen=True)
class CollapseChannel:
  operator: Operator
  rate: Real

  def __post_init__(self):
    if self.rate < 0:
      raise ParameterError(f"collapse rate must be non-negative, got {self.rate}")


@dataclass
class PropagationReport:
  """ Result of a propagation run.

  traces holds one entry per requested observable plus `t` (batch size = number of samples),
  states the sampled amplitudes of pure runs as rows, and drift the accumulated norm (pure)
  or trace (mixed) drift at each sample.
  """
  final: State
  times: torch.Tensor
  drift: torch.Tensor
  traces: Optional[TensorDict] = None
  states: Optional[torch.Tensor] = None
  converged: bool = True
  reason: Optional[str] = None
  steps: int = 0
  dt: Optional[float] = None
  # rate the step was derived from, dt = step_factor / rate_bound unless dt is fixed
  rate_bound: float = 0.
  min_eigenvalues: List[float] = field(default_factory=list)

  @property
  def total_drift(self) -> float:
    return self.drift[-1].item() if self.drift.numel() > 0 else 0.


def expectation_values(observables:Dict[str, Operator], amplitudes:torch.Tensor) -> Dict[str, torch.Tensor]:
  """ Real expectation values <psi|O|psi> for a batch of states (T, dim). """
  values = {}
  for name, op in observables.items():
    applied = op.apply(amplitudes.T).T
    values[name] = torch.sum(amplitudes.conj() * applied, dim=-1).real
  return values


def density_expectations(observables:Dict[str, Operator], rho:torch.Tensor) -> Dict[str, torch.Tensor]:
  return {name: torch.einsum('ij,ji->', op.dense, rho).real for name, op in observables.items()}


def make_traces(times:torch.Tensor, samples:Dict[str, torch.Tensor]) -> TensorDict:
  data = {'t': times.to(real_dtype)}
  data.update({k: v.to(real_dtype) for k, v in samples.items()})
  return TensorDict(data, batch_size=[times.shape[0]])


def stack_samples(samples:List[Dict[str, torch.Tensor]]) -> Dict[str, torch.Tensor]:
  if len(samples) == 0:
    return {}
  return {k: torch.stack([s[k] for s in samples]) for k in samples[0]}
