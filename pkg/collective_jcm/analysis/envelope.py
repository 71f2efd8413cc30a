from dataclasses import dataclass
import math

from beartype import beartype
from beartype.typing import Optional, Tuple
import torch
import torch.nn.functional as F


@beartype
def find_envelope(signal:torch.Tensor, window:int) -> torch.Tensor:
  """ Running maximum of |signal| over a centred window (odd, in samples). """
  window = max(1, window) | 1
  x = signal.abs().reshape(1, 1, -1)
  return F.max_pool1d(x, kernel_size=window, stride=1, padding=window // 2).reshape(-1)[:signal.shape[0]]


def first_crossing(times:torch.Tensor, envelope:torch.Tensor, threshold:float,
                   start:float = 0.) -> Optional[float]:
  below = torch.nonzero((envelope < threshold) & (times >= start))
  return times[below[0, 0]].item() if below.numel() > 0 else None


@dataclass(frozen=True)
class CollapseRevival:
  collapse_time: Optional[float]
  revival_time: Optional[float]
  revival_amplitude: float
  collapsed_amplitude: float


@beartype
def detect_collapse(times:torch.Tensor, envelope:torch.Tensor, fraction:float = 0.25) -> Optional[float]:
  """ First time the envelope falls below `fraction` of its initial value. """
  return first_crossing(times, envelope, fraction * envelope[0].item())


@beartype
def detect_revival(times:torch.Tensor, envelope:torch.Tensor,
                   search:Tuple[float, float]) -> Tuple[Optional[float], float]:
  """ Time and height of the largest envelope peak inside the search window. """
  inside = (times >= search[0]) & (times <= search[1])
  if not inside.any():
    return None, 0.

  idx = torch.nonzero(inside).reshape(-1)
  peak = idx[envelope[idx].argmax()]
  return times[peak].item(), envelope[peak].item()


@beartype
def collapse_revival_times(times:torch.Tensor, signal:torch.Tensor, period:float,
                           revival_search:Tuple[float, float],
                           quiet:Tuple[float, float]) -> CollapseRevival:
  """ Envelope of a zero-centred oscillating signal smoothed over one period, with the collapse
  time, the revival peak inside revival_search and the largest envelope value inside
  the collapsed interval `quiet`. """
  dt = (times[1] - times[0]).item()
  envelope = find_envelope(signal, math.ceil(period / dt))

  revival, height = detect_revival(times, envelope, revival_search)
  quiet_mask = (times >= quiet[0]) & (times <= quiet[1])
  collapsed = envelope[quiet_mask].max().item() if quiet_mask.any() else math.nan

  return CollapseRevival(
    collapse_time=detect_collapse(times, envelope),
    revival_time=revival,
    revival_amplitude=height,
    collapsed_amplitude=collapsed)
