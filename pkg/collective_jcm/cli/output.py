import csv
from dataclasses import asdict
import io
import json
import math
import os
from pathlib import Path
import tempfile

from beartype.typing import Any, Dict, List, Optional, Sequence
from tensordict import TensorDict
import torch

from collective_jcm.analysis.wigner import WignerMap
from collective_jcm.cli.config import ScenarioConfig
from collective_jcm.cli.scenarios import ScenarioRun
from collective_jcm.model.params import SystemParams

output_env = 'COLLECTIVE_JCM_OUTPUT'

# leading trace columns, any other observables follow in name order
trace_columns = ['t', 'P_e', 'P_g', 'n_b', 'Sz_c', 'fidelity']


def output_dir(cli_dir:Optional[str], config:ScenarioConfig) -> Path:
  """ --out, then the config output block, then $COLLECTIVE_JCM_OUTPUT, then ./output """
  for candidate in (cli_dir, config.output.dir, os.environ.get(output_env)):
    if candidate:
      return Path(candidate)
  return Path('output')


def write_atomic(path:Path, text:str):
  """ Write via a temporary file in the same directory and rename over `path`. """
  path.parent.mkdir(parents=True, exist_ok=True)
  fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix='.tmp')
  try:
    with os.fdopen(fd, 'w', newline='') as f:
      f.write(text)
    os.replace(tmp, path)
  except BaseException:
    if os.path.exists(tmp):
      os.unlink(tmp)
    raise


def csv_text(header:Sequence[str], rows:List[Sequence[Any]]) -> str:
  buffer = io.StringIO()
  writer = csv.writer(buffer, lineterminator='\n')
  writer.writerow(header)
  writer.writerows(rows)
  return buffer.getvalue()


def ordered_columns(traces:TensorDict) -> List[str]:
  keys = list(traces.keys())
  return [k for k in trace_columns if k in keys] + sorted(k for k in keys if k not in trace_columns)


def trace_rows(traces:TensorDict, columns:Optional[List[str]] = None) -> str:
  columns = ordered_columns(traces) if columns is None else columns
  values = torch.stack([traces[k].to(torch.float64) for k in columns], dim=1)
  return csv_text(columns, [[repr(v) for v in row] for row in values.tolist()])


def wigner_rows(w:WignerMap) -> str:
  betas = w.betas.reshape(-1)
  rows = [[repr(b.real), repr(b.imag), repr(v)]
          for b, v in zip(betas.tolist(), w.values.reshape(-1).tolist())]
  return csv_text(['beta_re', 'beta_im', 'W'], rows)


def derived_parameters(params:SystemParams) -> Dict[str, Any]:
  derived = dict(lambda_c=params.lambda_c, lambda_d=params.lambda_d, epsilon=params.epsilon,
                 detuning=params.detuning,
                 mode_frequency=params.effective.mode_frequency)
  derived['chi'] = params.effective.chi
  return derived


def jsonable(value:Any) -> Any:
  """ Plain JSON values, non-finite floats as strings so that the file stays valid JSON. """
  if isinstance(value, dict):
    return {str(k): jsonable(v) for k, v in value.items()}
  if isinstance(value, (list, tuple)):
    return [jsonable(v) for v in value]
  if isinstance(value, torch.Tensor):
    return jsonable(value.tolist())
  if isinstance(value, complex):
    return [value.real, value.imag]
  if isinstance(value, float) and not math.isfinite(value):
    return str(value)
  return value


def summary(config:ScenarioConfig, run:ScenarioRun) -> Dict[str, Any]:
  result = run.result
  warnings = list(run.warnings) + (list(result.warnings) if result is not None else [])

  record = dict(
    scenario=config.scenario,
    converged=run.converged,
    warnings=warnings,
    config=config.to_dict())

  if run.params is not None:
    record['params'] = asdict(run.params)
    record['derived'] = derived_parameters(run.params)
  record.setdefault('derived', {}).update(run.derived)

  if result is not None:
    record['result'] = result.summary()
  return jsonable(record)


def write_outputs(out:Path, config:ScenarioConfig, run:ScenarioRun) -> List[Path]:
  """ traces.csv with every observable, traces/<name>.csv per observable and wigner.csv
  when the scenario produced them, summary.json always. """
  written = []
  if run.result is not None and run.result.traces is not None:
    traces = run.result.traces
    written.append(out / 'traces.csv')
    write_atomic(written[-1], trace_rows(traces))

    for name in [k for k in ordered_columns(traces) if k != 't']:
      written.append(out / 'traces' / f'{name}.csv')
      write_atomic(written[-1], trace_rows(traces, ['t', name]))

  if run.wigner is not None:
    written.append(out / 'wigner.csv')
    write_atomic(written[-1], wigner_rows(run.wigner))

  written.append(out / 'summary.json')
  write_atomic(written[-1], json.dumps(summary(config, run), indent=2, sort_keys=True) + '\n')
  return written
