import csv
from dataclasses import replace
import json
import math
import os

import pytest
import torch

from collective_jcm.cli.config import ScenarioConfig
from collective_jcm.cli.main import main
from collective_jcm.cli.output import write_atomic
from collective_jcm.cli.scenarios import ScenarioRun, pinned_step
from collective_jcm.dynamics import StepConfig
from collective_jcm.errors import ConfigError
from collective_jcm.hilbert import ControlQubit, PureState, make_space
from collective_jcm.protocols.result import ProtocolResult


scenario_names = ['jcm-rabi', 'fock-ladder', 'cat-resonant', 'cat-dispersive', 'two-sample',
                  'w-state', 'wigner', 'full-vs-effective', 'decoherence', 'feasibility']


def write_config(path, config):
  path.write_text(json.dumps(config))
  return str(path)


def read_traces(path):
  with open(path, newline='') as f:
    rows = list(csv.DictReader(f))
  return {k: [float(row[k]) for row in rows] for k in rows[0].keys()}


def test_list(capsys):
  assert main(['list']) == 0
  lines = capsys.readouterr().out.strip().splitlines()
  assert [line.split()[0] for line in lines] == scenario_names


def test_unknown_key():
  with pytest.raises(ConfigError) as e:
    ScenarioConfig.from_dict(dict(scenario='jcm-rabi', system=dict(foo=1)))
  assert e.value.key == 'system.foo'

  with pytest.raises(ConfigError) as e:
    ScenarioConfig.from_dict(dict(scenario='jcm-rabi', colour='red'))
  assert e.value.key == 'colour'

  with pytest.raises(ConfigError) as e:
    ScenarioConfig.from_dict(dict(scenario='not-a-scenario'))
  assert e.value.key == 'scenario'


def test_frequency_strings():
  config = ScenarioConfig.from_dict(dict(scenario='jcm-rabi', system=dict(g="2pi*1", delta_c=1000)))
  params = config.system.params()
  assert math.isclose(params.g, 2 * math.pi, rel_tol=1e-15)

  with pytest.raises(ConfigError) as e:
    ScenarioConfig.from_dict(dict(scenario='jcm-rabi', system=dict(g="2pi*fast")))
  assert e.value.key == 'system.g'


def test_invalid_config_exit(tmp_path, capsys):
  out = tmp_path / 'out'
  path = write_config(tmp_path / 'config.json', dict(scenario='jcm-rabi', system=dict(n_atoms=-5)))

  assert main(['run', '--config', path, '--out', str(out), '--quiet']) == 2
  assert not out.exists()
  assert 'system.n_atoms' in capsys.readouterr().err


def test_feasibility_command(capsys):
  assert main(['feasibility']) == 0
  record = json.loads(capsys.readouterr().out)

  derived = record['derived']
  assert math.isclose(derived['epsilon_hz'], 30980, rel_tol=0.02)
  assert math.isclose(derived['t1_us'], 8.07, rel_tol=0.02)
  assert math.isclose(derived['budget'], 0.01337, rel_tol=0.05)

  assert main(['feasibility', '--delta-small=-1e8']) == 2
  assert 'delta_small' in capsys.readouterr().err


def test_run_jcm_rabi(tmp_path):
  out = tmp_path / 'rabi'
  path = write_config(tmp_path / 'config.json', dict(scenario='jcm-rabi',
    protocol=dict(n=0), time=dict(samples=101)))

  assert main(['run', '--config', path, '--out', str(out), '--quiet']) == 0
  assert sorted(os.listdir(out)) == ['summary.json', 'traces', 'traces.csv']
  assert sorted(os.listdir(out / 'traces')) == ['P_e.csv', 'P_g.csv', 'Sz_c.csv', 'fidelity.csv', 'n_b.csv']

  summary = json.loads((out / 'summary.json').read_text())
  assert summary['scenario'] == 'jcm-rabi'
  assert summary['converged']
  eps = summary['derived']['epsilon']

  traces = read_traces(out / 'traces.csv')
  assert list(traces.keys())[:2] == ['t', 'P_e']
  assert len(traces['t']) == 101

  for t, p_e in zip(traces['t'], traces['P_e']):
    assert abs(p_e - math.cos(eps * t) ** 2) < 1e-8, f"P_e({t})={p_e}"
  assert min(traces['fidelity']) > 1 - 1e-9

  single = read_traces(out / 'traces' / 'P_e.csv')
  assert list(single.keys()) == ['t', 'P_e']
  assert single['t'] == traces['t'] and single['P_e'] == traces['P_e']


def run_summary(tmp_path, name, config):
  out = tmp_path / name
  path = write_config(tmp_path / f'{name}.json', config)
  assert main(['run', '--config', path, '--out', str(out), '--quiet']) == 0
  return json.loads((out / 'summary.json').read_text())


def test_convergence_check(tmp_path):
  # on by default
  summary = run_summary(tmp_path, 'default', dict(scenario='jcm-rabi', time=dict(samples=16)))
  assert summary['derived']['convergence_change'] < 1e-6

  summary = run_summary(tmp_path, 'opt_out', dict(scenario='jcm-rabi',
    truncation=dict(convergence_check=False), time=dict(samples=16)))
  assert 'convergence_change' not in summary['derived']

  # the doubled Dicke ladder of N = 4 atoms stays at m = 4
  summary = run_summary(tmp_path, 'dicke', dict(scenario='fock-ladder',
    system=dict(n_atoms=4), protocol=dict(target_n=2, mode='dicke')))
  assert summary['derived']['convergence_change'] < 1e-6


def test_pinned_step():
  config = ScenarioConfig.from_dict(dict(scenario='fock-ladder', model='full'))
  final = PureState(make_space([ControlQubit()]), torch.tensor([1., 0.], dtype=torch.complex128))
  run = ScenarioRun(result=ProtocolResult(name='fock', schedule=[], final=final,
    extras=dict(rate_bound=40.)))

  pinned = pinned_step(config, run)
  assert pinned.time.dt == StepConfig.step_factor / 40.
  assert pinned.time.samples == config.time.samples

  # exact propagation has no step, an explicit step is kept
  assert pinned_step(config, ScenarioRun(result=replace(run.result, extras={}))) == config
  fixed = ScenarioConfig.from_dict(dict(scenario='fock-ladder', time=dict(dt=0.01)))
  assert pinned_step(fixed, run).time.dt == 0.01


def test_numerical_failure_exit(tmp_path, capsys):
  # below the target + margin truncation of the ladder
  out = tmp_path / 'short'
  path = write_config(tmp_path / 'short.json', dict(scenario='fock-ladder',
    protocol=dict(target_n=3), truncation=dict(mode=4)))
  assert main(['run', '--config', path, '--out', str(out), '--quiet']) == 3
  assert 'truncation' in capsys.readouterr().err
  assert not out.exists()

  # |e, 3> cannot reach |g, 4> at m_max = 3, the doubled run can
  out = tmp_path / 'edge'
  path = write_config(tmp_path / 'edge.json', dict(scenario='jcm-rabi',
    protocol=dict(n=3, mode='dicke'), truncation=dict(mode=3), time=dict(t_final=1., samples=16)))
  assert main(['run', '--config', path, '--out', str(out), '--quiet']) == 3
  assert 'doubled' in capsys.readouterr().err


def test_reruns_identical(tmp_path):
  config = dict(scenario='fock-ladder', system=dict(n_atoms=50), protocol=dict(target_n=2))
  for name in ['first', 'second']:
    path = write_config(tmp_path / f'{name}.json', config)
    assert main(['run', '--config', path, '--out', str(tmp_path / name), '--quiet']) == 0

  for name in ['summary.json', 'traces.csv', 'traces/n_b.csv']:
    assert (tmp_path / 'first' / name).read_bytes() == (tmp_path / 'second' / name).read_bytes()


def test_write_atomic(tmp_path):
  target = tmp_path / 'nested' / 'summary.json'
  write_atomic(target, '{}\n')
  write_atomic(target, '{"a": 1}\n')

  assert os.listdir(target.parent) == ['summary.json']
  assert json.loads(target.read_text()) == dict(a=1)


if __name__ == '__main__':
  pytest.main([__file__])
