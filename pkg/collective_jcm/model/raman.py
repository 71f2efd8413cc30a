from dataclasses import dataclass, field
import math
from numbers import Integral, Real

from beartype import beartype
from beartype.typing import List, Optional

from collective_jcm.errors import ParameterError
from collective_jcm.model.params import SystemParams, ratio
from collective_jcm.model.regime import emit, regime_ratio


@beartype
@dataclass(frozen=True)
class RamanParams:
  """ Three-level Raman scheme: cavity coupling g, classical field alpha, one-photon
  detuning delta_big, two-photon detuning delta_small, decay rates gamma (atom) and
  kappa (cavity), all angular frequencies. """
  g: Real
  alpha: Real
  delta_big: Real
  delta_small: Real
  gamma: Real
  kappa: Real
  n_atoms: Integral

  def __post_init__(self):
    for name in ("g", "delta_big", "delta_small"):
      if not getattr(self, name) > 0:
        raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")

    for name in ("alpha", "gamma", "kappa"):
      if getattr(self, name) < 0:
        raise ParameterError(f"{name} must be non-negative, got {getattr(self, name)}")

    if self.n_atoms < 1:
      raise ParameterError(f"n_atoms must be >= 1, got {self.n_atoms}")

  @staticmethod
  def feasibility_values() -> 'RamanParams':
    """ g = 2pi x 34 MHz, alpha = g, Delta = 100 g, delta = 10 g, N = 10^4,
    Gamma = 2pi x 2.6 MHz, kappa = 2pi x 4.1 MHz """
    g = 2 * math.pi * 34e6
    return RamanParams(g=g, alpha=g, delta_big=100 * g, delta_small=10 * g,
      gamma=2 * math.pi * 2.6e6, kappa=2 * math.pi * 4.1e6, n_atoms=10000)


@beartype
@dataclass(frozen=True)
class RamanEffective:
  g_eff: float
  lambda_c: float
  epsilon: float
  gamma_eff: float
  kappa_eff: float
  n_atoms: int
  delta_small: float
  warnings: List[str] = field(default_factory=list)

  @property
  def t1(self) -> float:
    """ First Fock ladder step pi / (2 epsilon). """
    return math.inf if self.epsilon == 0 else math.pi / (2 * self.epsilon)

  def system_params(self, delta_d:Optional[float] = None) -> SystemParams:
    """ Equivalent cavity model, g' against detuning delta, with the resonant drive. """
    if self.g_eff == 0:
      raise ParameterError("no Raman coupling (alpha = 0)")
    return SystemParams.resonant(g=self.g_eff, delta_c=self.delta_small,
                                 n_atoms=self.n_atoms, delta_d=delta_d)


def raman_regime(raman:RamanParams) -> List[str]:
  scale = max(raman.g, raman.alpha, raman.delta_small)
  r = ratio(raman.delta_big, scale)
  if r < regime_ratio:
    return [f"one-photon detuning Delta is only {r:.3g}x max(g, alpha, delta)"]
  return []


@beartype
def raman_effective(raman:RamanParams) -> RamanEffective:
  """ g' = g alpha / 2 (1/(Delta + delta) + 1/Delta), epsilon = sqrt(N) g'^2 / delta,
  Gamma' = Gamma g^2 / Delta^2 and kappa' = kappa g'^2 / delta^2. """
  g, delta_big, delta = raman.g, raman.delta_big, raman.delta_small

  g_eff = g * raman.alpha / 2 * (1 / (delta_big + delta) + 1 / delta_big)
  lambda_c = g_eff ** 2 / delta

  return RamanEffective(
    g_eff=float(g_eff),
    lambda_c=float(lambda_c),
    epsilon=float(math.sqrt(raman.n_atoms) * lambda_c),
    gamma_eff=float(raman.gamma * g ** 2 / delta_big ** 2),
    kappa_eff=float(raman.kappa * g_eff ** 2 / delta ** 2),
    n_atoms=int(raman.n_atoms),
    delta_small=float(delta),
    warnings=emit(raman_regime(raman)))
