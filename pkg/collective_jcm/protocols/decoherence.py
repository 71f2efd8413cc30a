from dataclasses import dataclass, field
from numbers import Real

from beartype import beartype
from beartype.typing import Any, Dict, List, Optional

from collective_jcm.dynamics.report import StepConfig
from collective_jcm.model.raman import RamanEffective, RamanParams, raman_effective
from collective_jcm.protocols.fock import DecoherenceRates, fock_ladder
from collective_jcm.protocols.result import ProtocolResult


@dataclass(frozen=True)
class DecoherenceBudget:
  """ Linear infidelity estimate (gamma' + kappa') t for a protocol of duration t. """
  effective: RamanEffective
  duration: float
  budget: float
  warnings: List[str] = field(default_factory=list)

  @property
  def rates(self) -> DecoherenceRates:
    return DecoherenceRates(self.effective.gamma_eff, self.effective.kappa_eff)

  def summary(self) -> Dict[str, Any]:
    e = self.effective
    return dict(
      g_eff=e.g_eff,
      lambda_c=e.lambda_c,
      epsilon=e.epsilon,
      gamma_eff=e.gamma_eff,
      kappa_eff=e.kappa_eff,
      t1=e.t1,
      duration=self.duration,
      budget=self.budget)


@beartype
def decoherence_budget(raman:RamanParams, t:Optional[Real] = None) -> DecoherenceBudget:
  """ (gamma' + kappa') t for the Raman scheme, t defaults to the first Fock ladder step
  t1 = pi / (2 eps). """
  effective = raman_effective(raman)
  duration = effective.t1 if t is None else float(t)
  return DecoherenceBudget(
    effective=effective,
    duration=duration,
    budget=(effective.gamma_eff + effective.kappa_eff) * duration,
    warnings=list(effective.warnings))


@beartype
def lindblad_fock_infidelity(raman:RamanParams, n_max:int = 9,
                             config:Optional[StepConfig] = None,
                             progress:bool = False) -> ProtocolResult:
  """ Fock |1> preparation on the resonant JCM driven by the Raman scheme, with the
  effective decay rates as collapse channels. extras compare the simulated infidelity
  with the linear budget. """
  budget = decoherence_budget(raman)
  params = budget.effective.system_params()

  result = fock_ladder(1, params, model='jcm', mode='boson', n_max=n_max,
                       decoherence=budget.rates, config=config, progress=progress)

  infidelity = 1 - result.fidelity
  result.name = 'decoherence'
  result.warnings = budget.warnings + result.warnings
  result.extras.update(budget.summary())
  result.extras.update(infidelity=infidelity,
                       budget_ratio=infidelity / budget.budget if budget.budget > 0 else None)
  return result
