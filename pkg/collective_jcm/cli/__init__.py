from .config import (ScenarioConfig, SystemConfig, RamanConfig, Truncation, TimeConfig,
  OutputConfig, ProtocolConfig)
from .scenarios import Scenario, ScenarioRun, scenarios, run_scenario
from .output import write_outputs, write_atomic

__all__ = [
  'ScenarioConfig', 'SystemConfig', 'RamanConfig', 'Truncation', 'TimeConfig',
  'OutputConfig', 'ProtocolConfig',
  'Scenario', 'ScenarioRun', 'scenarios', 'run_scenario',
  'write_outputs', 'write_atomic',
]
