""" Scenario configuration: strict JSON blocks mapped onto frozen dataclasses.

Every block rejects unknown keys, frequencies are plain angular numbers or "2pi*<value>"
strings. The resolved configuration (defaults applied) is echoed by `to_dict`.
"""
from dataclasses import asdict, dataclass, field, fields
import json
from numbers import Integral, Real
from pathlib import Path

from beartype import beartype
from beartype.roar import BeartypeException
from beartype.typing import Any, Dict, List, Literal, Optional, Union

from collective_jcm.errors import ConfigError, JcmError
from collective_jcm.model.params import SystemParams, parse_frequency
from collective_jcm.model.raman import RamanParams

Frequency = Union[Real, str]
ModelName = Literal['full', 'effective', 'jcm', 'dispersive']


def frequency(key:str, value:Optional[Frequency]) -> Optional[float]:
  if value is None:
    return None
  try:
    return parse_frequency(value)
  except JcmError as e:
    raise ConfigError(key, str(e))


def build_block(cls, data:Any, key:str):
  """ Construct dataclass `cls` from a JSON object, naming the offending key on failure. """
  if data is None:
    data = {}
  if not isinstance(data, dict):
    raise ConfigError(key, f"expected an object, got {type(data).__name__}")

  names = {f.name for f in fields(cls)}
  for k in data:
    if k not in names:
      raise ConfigError(f"{key}.{k}", f"unknown key (expected one of {sorted(names)})")

  try:
    return cls(**data)
  except ConfigError:
    raise
  except (BeartypeException, TypeError) as e:
    raise ConfigError(key, f"invalid value: {e}")
  except JcmError as e:
    raise ConfigError(key, str(e))


@beartype
@dataclass(frozen=True)
class SystemConfig:
  """ Cavity model parameters. Without omega the drive is chosen for resonance,
  detuning_ratio = delta / eps selects a dispersive drive instead. """
  g: Frequency = 1.
  delta_c: Frequency = 100.
  n_atoms: Integral = 100
  n_samples: Integral = 1
  delta_d: Optional[Frequency] = None
  omega: Optional[Frequency] = None
  detuning_ratio: Optional[Real] = None

  def __post_init__(self):
    if self.n_atoms < 1:
      raise ConfigError("system.n_atoms", f"must be >= 1, got {self.n_atoms}")
    if self.n_samples < 1:
      raise ConfigError("system.n_samples", f"must be >= 1, got {self.n_samples}")
    if self.omega is not None and self.detuning_ratio is not None:
      raise ConfigError("system.omega", "omega and detuning_ratio are exclusive")
    if self.omega is not None and self.delta_d is None:
      raise ConfigError("system.delta_d", "an explicit omega needs delta_d")

  def params(self, n_samples:Optional[int] = None, dispersive:bool = False) -> SystemParams:
    g = frequency("system.g", self.g)
    delta_c = frequency("system.delta_c", self.delta_c)
    delta_d = frequency("system.delta_d", self.delta_d)
    n_samples = int(self.n_samples if n_samples is None else n_samples)

    try:
      if self.omega is not None:
        return SystemParams(g=g, omega=frequency("system.omega", self.omega), delta_c=delta_c,
                            delta_d=delta_d, n_atoms=int(self.n_atoms), n_samples=n_samples)

      if self.detuning_ratio is not None or dispersive:
        if n_samples != 1:
          raise ConfigError("system.n_samples", "the dispersive drive is defined for a single sample")
        ratio = 20. if self.detuning_ratio is None else float(self.detuning_ratio)
        return SystemParams.dispersive(g, delta_c, int(self.n_atoms), detuning_ratio=ratio,
                                       delta_d=delta_d)

      return SystemParams.resonant(g, delta_c, int(self.n_atoms), n_samples=n_samples, delta_d=delta_d)
    except ConfigError:
      raise
    except JcmError as e:
      raise ConfigError("system", str(e))


@beartype
@dataclass(frozen=True)
class RamanConfig:
  """ Three-level Raman scheme, defaults are the feasibility parameters. """
  g: Frequency = "2pi*34e6"
  alpha: Optional[Frequency] = None         # defaults to g
  delta_big: Optional[Frequency] = None     # defaults to 100 g
  delta_small: Optional[Frequency] = None   # defaults to 10 g
  gamma: Frequency = "2pi*2.6e6"
  kappa: Frequency = "2pi*4.1e6"
  n_atoms: Integral = 10000

  def raman(self) -> RamanParams:
    g = frequency("raman.g", self.g)
    alpha = frequency("raman.alpha", self.alpha)
    delta_big = frequency("raman.delta_big", self.delta_big)
    delta_small = frequency("raman.delta_small", self.delta_small)
    try:
      return RamanParams(
        g=g,
        alpha=g if alpha is None else alpha,
        delta_big=100 * g if delta_big is None else delta_big,
        delta_small=10 * g if delta_small is None else delta_small,
        gamma=frequency("raman.gamma", self.gamma),
        kappa=frequency("raman.kappa", self.kappa),
        n_atoms=int(self.n_atoms))
    except JcmError as e:
      raise ConfigError("raman", str(e))


@beartype
@dataclass(frozen=True)
class Truncation:
  """ cavity: photon levels of the cavity factor, mode: highest mode/Dicke level
  (None picks a per-scenario default), convergence_check: rerun with the mode truncation
  doubled and fail if observables move by more than convergence_tolerance, on by default
  for every scenario with a mode truncation (false opts out). """
  cavity: Integral = 2
  mode: Optional[Integral] = None
  convergence_check: bool = True
  convergence_tolerance: Real = 1e-6

  def __post_init__(self):
    if self.cavity < 1:
      raise ConfigError("truncation.cavity", f"must be >= 1, got {self.cavity}")
    if self.mode is not None and self.mode < 1:
      raise ConfigError("truncation.mode", f"must be >= 1, got {self.mode}")

  def doubled(self, mode:int) -> 'Truncation':
    return Truncation(cavity=self.cavity, mode=2 * mode, convergence_check=False,
                      convergence_tolerance=self.convergence_tolerance)


@beartype
@dataclass(frozen=True)
class TimeConfig:
  """ t_final in units of 1/eps (None picks the protocol time), dt overrides the
  integrator step, samples per evolution segment for exact propagation. """
  t_final: Optional[Real] = None
  dt: Optional[Real] = None
  stride: Integral = 1
  samples: Integral = 64

  def __post_init__(self):
    if self.t_final is not None and self.t_final < 0:
      raise ConfigError("time.t_final", f"must be non-negative, got {self.t_final}")
    if self.dt is not None and not self.dt > 0:
      raise ConfigError("time.dt", f"must be positive, got {self.dt}")
    if self.stride < 1:
      raise ConfigError("time.stride", f"must be >= 1, got {self.stride}")
    if self.samples < 2:
      raise ConfigError("time.samples", f"must be >= 2, got {self.samples}")


@beartype
@dataclass(frozen=True)
class OutputConfig:
  dir: Optional[str] = None


@beartype
@dataclass(frozen=True)
class ProtocolConfig:
  """ Scenario specific settings, unused entries are ignored by other scenarios.

  alpha: coherent amplitude, a number or [re, im]
  n: initial excitation for jcm-rabi
  phi: conditional phase chi t for cat-dispersive (default pi / 2)
  eps_t: interaction time eps t for cat-resonant (default 0.2 sqrt(n_bar))
  wigner_state: mode state measured by the wigner scenario
  """
  target_n: Integral = 1
  n: Integral = 0
  alpha: Union[Real, List[Real]] = 2.
  phi: Optional[Real] = None
  eps_t: Optional[Real] = None
  n_samples: Integral = 3
  mode: Literal['boson', 'dicke'] = 'boson'
  collapse_revival: bool = False
  wigner_state: Literal['vacuum', 'fock', 'coherent', 'cat'] = 'coherent'
  fock_n: Integral = 1
  grid_points: Integral = 21
  grid_half_width: Real = 3.

  def __post_init__(self):
    if isinstance(self.alpha, list) and len(self.alpha) != 2:
      raise ConfigError("protocol.alpha", "expected a number or [re, im]")
    if self.target_n < 1:
      raise ConfigError("protocol.target_n", f"must be >= 1, got {self.target_n}")
    if self.n < 0:
      raise ConfigError("protocol.n", f"must be >= 0, got {self.n}")
    if self.grid_points < 2:
      raise ConfigError("protocol.grid_points", f"must be >= 2, got {self.grid_points}")
    if not self.grid_half_width > 0:
      raise ConfigError("protocol.grid_half_width", f"must be positive, got {self.grid_half_width}")

  @property
  def complex_alpha(self) -> complex:
    if isinstance(self.alpha, list):
      return complex(float(self.alpha[0]), float(self.alpha[1]))
    return complex(float(self.alpha))


blocks = dict(system=SystemConfig, raman=RamanConfig, truncation=Truncation, time=TimeConfig,
              output=OutputConfig, protocol=ProtocolConfig)


@beartype
@dataclass(frozen=True)
class ScenarioConfig:
  scenario: str
  system: SystemConfig = field(default_factory=SystemConfig)
  raman: RamanConfig = field(default_factory=RamanConfig)
  truncation: Truncation = field(default_factory=Truncation)
  time: TimeConfig = field(default_factory=TimeConfig)
  output: OutputConfig = field(default_factory=OutputConfig)
  protocol: ProtocolConfig = field(default_factory=ProtocolConfig)
  model: Optional[ModelName] = None
  decoherence: bool = False

  @staticmethod
  def from_dict(data:Any) -> 'ScenarioConfig':
    from collective_jcm.cli.scenarios import scenarios

    if not isinstance(data, dict):
      raise ConfigError("config", "expected a JSON object")

    allowed = {f.name for f in fields(ScenarioConfig)}
    for k in data:
      if k not in allowed:
        raise ConfigError(k, f"unknown key (expected one of {sorted(allowed)})")

    if 'scenario' not in data:
      raise ConfigError("scenario", "missing")
    name = data['scenario']
    if name not in scenarios:
      raise ConfigError("scenario", f"unknown scenario {name!r}, see `list`")

    model = data.get('model')
    if model is not None and model not in ('full', 'effective', 'jcm', 'dispersive'):
      raise ConfigError("model", f"unknown model {model!r}")

    decoherence = data.get('decoherence', False)
    if not isinstance(decoherence, bool):
      raise ConfigError("decoherence", "expected true or false")

    parsed = {k: build_block(cls, data.get(k), k) for k, cls in blocks.items()}
    config = ScenarioConfig(scenario=name, model=model, decoherence=decoherence, **parsed)
    config.validate()
    return config

  @staticmethod
  def from_json(path:Union[str, Path]) -> 'ScenarioConfig':
    try:
      text = Path(path).read_text()
    except OSError as e:
      raise ConfigError("config", f"cannot read {path}: {e.strerror}")
    try:
      data = json.loads(text)
    except json.JSONDecodeError as e:
      raise ConfigError("config", f"invalid JSON at line {e.lineno}: {e.msg}")
    return ScenarioConfig.from_dict(data)

  def validate(self):
    """ Resolve the physical parameters once so that invalid values fail before any run. """
    self.system.params()
    self.raman.raman()

  def to_dict(self) -> Dict[str, Any]:
    return asdict(self)
