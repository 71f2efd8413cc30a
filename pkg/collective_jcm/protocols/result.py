from dataclasses import dataclass, field

from beartype import beartype
from beartype.typing import Any, Dict, List, Literal, Optional, Union
from tensordict import TensorDict

from collective_jcm.errors import ParameterError
from collective_jcm.hilbert.states import DensityMatrix, PureState

State = Union[PureState, DensityMatrix]


@beartype
@dataclass(frozen=True)
class ScheduleStep:
  """ One step of a protocol: a period of free evolution under `model`, or an
  instantaneous ideal pulse on the control atom (duration 0). """
  kind: Literal['evolve', 'pulse']
  duration: float
  parameters: Dict[str, Any] = field(default_factory=dict)

  def __post_init__(self):
    if self.kind == 'evolve' and not self.duration > 0:
      raise ParameterError(f"evolution step needs a positive duration, got {self.duration}")
    if self.kind == 'pulse' and self.duration != 0:
      raise ParameterError("pulses are instantaneous")

  def to_dict(self) -> Dict[str, Any]:
    return dict(kind=self.kind, duration=self.duration, **self.parameters)


@dataclass
class ProtocolResult:
  """ Outcome of a state-engineering protocol.

  traces: observable time series over the whole schedule (TensorDict over time)
  fidelity: |<target|final>|^2 (or the mixed-state analogue) on the scored sector
  extras: protocol specific scalar diagnostics, reported in summaries
  """
  name: str
  schedule: List[ScheduleStep]
  final: State
  target: Optional[State] = None
  fidelity: Optional[float] = None
  traces: Optional[TensorDict] = None
  warnings: List[str] = field(default_factory=list)
  extras: Dict[str, Any] = field(default_factory=dict)
  converged: bool = True
  reason: Optional[str] = None

  def __post_init__(self):
    if self.fidelity is not None:
      assert 0 <= self.fidelity <= 1, f"fidelity {self.fidelity} outside [0, 1]"

  @property
  def duration(self) -> float:
    return sum(step.duration for step in self.schedule)

  def summary(self) -> Dict[str, Any]:
    return dict(
      name=self.name,
      fidelity=self.fidelity,
      duration=self.duration,
      schedule=[step.to_dict() for step in self.schedule],
      warnings=list(self.warnings),
      converged=self.converged,
      reason=self.reason,
      **self.extras)
