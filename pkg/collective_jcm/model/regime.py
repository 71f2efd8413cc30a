from dataclasses import dataclass, field
import math
import warnings

from beartype import beartype
from beartype.typing import List, Optional

from collective_jcm.model.params import SystemParams, ratio

# soft threshold for every "much larger than" condition
regime_ratio = 10.


class RegimeWarning(UserWarning):
  """ A perturbative condition of the effective model holds only weakly. """


def emit(messages:List[str], stacklevel:int = 3) -> List[str]:
  for message in messages:
    warnings.warn(message, RegimeWarning, stacklevel=stacklevel)
  return messages


def cavity_regime(params:SystemParams) -> List[str]:
  """ delta_c >> g sqrt(N (n_bar + 1)) for every sample. """
  coupling = params.g * math.sqrt(params.n_samples * params.n_atoms * (params.n_bar + 1))
  r = ratio(params.delta_c, coupling)
  if r < regime_ratio:
    return [f"cavity detuning delta_c is only {r:.3g}x the collective coupling g sqrt(N(n+1))"]
  return []


def drive_regime(params:SystemParams) -> List[str]:
  if params.omega == 0:
    return []

  r = ratio(params.delta_d, params.omega)
  if r < regime_ratio:
    return [f"drive detuning delta_d is only {r:.3g}x the Rabi frequency Omega"]
  return []


def dispersive_regime(params:SystemParams) -> List[str]:
  r = ratio(params.detuning, params.epsilon)
  if r < regime_ratio:
    return [f"dispersive detuning delta is only {r:.3g}x epsilon"]
  return []


@beartype
def check_regime(params:SystemParams, dispersive:bool = False) -> List[str]:
  """ Collect the regime warnings relevant for the effective model of `params`. """
  messages = cavity_regime(params) + drive_regime(params)
  if dispersive:
    messages += dispersive_regime(params)
  return messages


@beartype
@dataclass(frozen=True)
class ResonanceDrive:
  lambda_d: float
  omega: Optional[float]
  delta_d: float
  warnings: List[str] = field(default_factory=list)

  def apply(self, params:SystemParams) -> SystemParams:
    return params.with_drive(self.lambda_d, self.delta_d)


@beartype
def resonance_drive(params:SystemParams, delta_d:Optional[float] = None) -> ResonanceDrive:
  """ Stark shift lambda_d = (n N - 1) lambda_c / 2 that puts the control atom in resonance
  with the (bright) collective mode, and the drive Omega = sqrt(lambda_d delta_d) producing it. """
  delta_d = float(params.delta_d if delta_d is None else delta_d)
  lambda_d = (params.n_samples * params.n_atoms - 1) * params.lambda_c / 2

  omega = None
  if lambda_d == 0:
    omega = 0.
  elif delta_d != 0 and lambda_d * delta_d > 0:
    omega = math.sqrt(lambda_d * delta_d)

  messages = []
  if omega is None:
    messages.append(f"no real drive gives lambda_d={lambda_d:.4g} at delta_d={delta_d:.4g}")
  elif omega > 0 and ratio(delta_d, omega) < regime_ratio:
    messages.append(f"resonant drive Omega={omega:.4g} violates delta_d >> Omega "
                    f"(ratio {ratio(delta_d, omega):.3g})")

  return ResonanceDrive(lambda_d=float(lambda_d), omega=omega, delta_d=delta_d,
                        warnings=emit(messages))

