from dataclasses import dataclass, replace
import math
from numbers import Integral, Real

from beartype import beartype
from beartype.typing import Optional, Union

from collective_jcm.errors import ParameterError


def parse_frequency(value:Union[Real, str]) -> float:
  """ Plain numbers are angular frequencies, strings of the form "2pi*<value>"
  are converted as 2 pi value. """
  if isinstance(value, str):
    text = value.replace(" ", "").lower()
    for prefix in ("2pi*", "2*pi*"):
      if text.startswith(prefix):
        try:
          return 2 * math.pi * float(text[len(prefix):])
        except ValueError:
          break
    try:
      return float(text)
    except ValueError:
      raise ParameterError(f"cannot parse frequency {value!r}, expected a number or '2pi*<value>'")

  return float(value)


def ratio(a:float, b:float) -> float:
  return math.inf if b == 0 else abs(a) / abs(b)


@beartype
@dataclass(frozen=True)
class SystemParams:
  """ Inputs of the driven control atom + sample + cavity model.

  All rates are angular frequencies, delta_c = w0 - w_c and delta_d = w0 - w_d.
  """
  g: Real
  omega: Real
  delta_c: Real
  delta_d: Real
  n_atoms: Integral
  n_samples: Integral = 1
  n_bar: Real = 0.

  def __post_init__(self):
    if self.g <= 0:
      raise ParameterError(f"g must be positive, got {self.g}")
    if self.n_atoms < 1:
      raise ParameterError(f"n_atoms must be >= 1, got {self.n_atoms}")
    if self.n_samples < 1:
      raise ParameterError(f"n_samples must be >= 1, got {self.n_samples}")
    if self.omega < 0:
      raise ParameterError(f"omega must be non-negative, got {self.omega}")
    if self.n_bar < 0:
      raise ParameterError(f"n_bar must be non-negative, got {self.n_bar}")

  @property
  def lambda_c(self) -> float:
    if self.delta_c == 0:
      raise ParameterError("cavity detuning delta_c is zero, dispersive coupling undefined")
    return self.g ** 2 / self.delta_c

  @property
  def lambda_d(self) -> float:
    if self.omega == 0:
      return 0.
    if self.delta_d == 0:
      raise ParameterError("drive detuning delta_d is zero, drive Stark shift undefined")
    return self.omega ** 2 / self.delta_d

  @property
  def epsilon(self) -> float:
    return math.sqrt(self.n_atoms) * self.lambda_c

  @property
  def detuning(self) -> float:
    """ delta = 2 lambda_d - (n N - 1) lambda_c, zero at resonance. """
    return 2 * self.lambda_d - (self.n_samples * self.n_atoms - 1) * self.lambda_c

  @property
  def chi(self) -> float:
    """ Dispersive shift epsilon^2 / delta. """
    if self.detuning == 0:
      raise ParameterError("dispersive shift undefined at resonance (delta = 0)")
    return self.epsilon ** 2 / self.detuning

  @property
  def effective(self) -> 'EffectiveParams':
    return EffectiveParams.from_system(self)

  def with_drive(self, lambda_d:float, delta_d:Optional[float] = None) -> 'SystemParams':
    """ Replace the drive by one producing Stark shift lambda_d at detuning delta_d. """
    delta_d = self.delta_d if delta_d is None else delta_d
    if lambda_d == 0:
      return replace(self, omega=0., delta_d=float(delta_d))

    if delta_d == 0 or lambda_d * delta_d < 0:
      raise ParameterError(f"lambda_d={lambda_d:.4g} cannot be reached with delta_d={delta_d:.4g}, "
                           "Omega^2 = lambda_d delta_d must be positive")
    return replace(self, omega=math.sqrt(lambda_d * delta_d), delta_d=float(delta_d))

  @staticmethod
  def resonant(g:float, delta_c:float, n_atoms:int, n_samples:int = 1,
               delta_d:Optional[float] = None) -> 'SystemParams':
    """ Parameters with the drive chosen so that 2 lambda_d = (n N - 1) lambda_c,
    delta_d defaults to 2 delta_c. """
    delta_d = 2 * delta_c if delta_d is None else delta_d
    params = SystemParams(g=g, omega=0., delta_c=delta_c, delta_d=delta_d,
                          n_atoms=n_atoms, n_samples=n_samples)
    lambda_d = (n_samples * n_atoms - 1) * params.lambda_c / 2
    return params.with_drive(lambda_d)

  @staticmethod
  def dispersive(g:float, delta_c:float, n_atoms:int, detuning_ratio:float = 20.,
                 delta_d:Optional[float] = None) -> 'SystemParams':
    """ Single sample parameters with delta = detuning_ratio * epsilon. """
    params = SystemParams.resonant(g, delta_c, n_atoms, delta_d=delta_d)
    lambda_d = params.lambda_d + detuning_ratio * params.epsilon / 2
    return params.with_drive(lambda_d)


@beartype
@dataclass(frozen=True)
class EffectiveParams:
  lambda_c: float
  lambda_d: float
  epsilon: float
  detuning: float
  n_atoms: int
  n_samples: int

  @staticmethod
  def from_system(params:SystemParams) -> 'EffectiveParams':
    return EffectiveParams(
      lambda_c=float(params.lambda_c),
      lambda_d=float(params.lambda_d),
      epsilon=float(params.epsilon),
      detuning=float(params.detuning),
      n_atoms=int(params.n_atoms),
      n_samples=int(params.n_samples))

  @property
  def chi(self) -> Optional[float]:
    return None if self.detuning == 0 else self.epsilon ** 2 / self.detuning

  @property
  def mode_frequency(self) -> float:
    """ sqrt(N) epsilon, the free frequency of each collective mode. """
    return math.sqrt(self.n_atoms) * self.epsilon
