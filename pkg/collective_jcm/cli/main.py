import argparse
import json
import sys

import taichi as ti
import torch

from collective_jcm.cli.config import RamanConfig, ScenarioConfig
from collective_jcm.cli.output import jsonable, output_dir, write_outputs
from collective_jcm.cli.scenarios import feasibility_numbers, run_scenario, scenarios
from collective_jcm.errors import ConfigError, ConvergenceError, JcmError, TruncationError

exit_ok, exit_invalid, exit_numerics = 0, 2, 3


def parse_args(args=None):
  parser = argparse.ArgumentParser(prog='collective-jcm',
    description='Collective mode Jaynes-Cummings scenarios')
  commands = parser.add_subparsers(dest='command', required=True)

  run = commands.add_parser('run', help='run a scenario from a JSON config')
  run.add_argument('--config', type=str, required=True)
  run.add_argument('--out', type=str, default=None, help='output directory')
  run.add_argument('--threads', type=int, default=None, help='torch intra-op threads')
  run.add_argument('--progress', action='store_true', help='show integrator progress bars')
  run.add_argument('--quiet', action='store_true')

  commands.add_parser('list', help='list scenarios')

  feasibility = commands.add_parser('feasibility',
    help='Raman effective parameters and decoherence budget (frequencies as numbers or "2pi*<value>")')
  defaults = RamanConfig()
  feasibility.add_argument('--g', type=str, default=defaults.g)
  feasibility.add_argument('--alpha', type=str, default=None, help='defaults to g')
  feasibility.add_argument('--delta-big', type=str, default=None, help='defaults to 100 g')
  feasibility.add_argument('--delta-small', type=str, default=None, help='defaults to 10 g')
  feasibility.add_argument('--n-atoms', type=int, default=defaults.n_atoms)
  feasibility.add_argument('--gamma', type=str, default=defaults.gamma)
  feasibility.add_argument('--kappa', type=str, default=defaults.kappa)

  return parser.parse_args(args)


def list_scenarios():
  for name, scenario in scenarios.items():
    print(f"{name:<20} {scenario.doc}")
  return exit_ok


def feasibility(args):
  try:
    raman = RamanConfig(g=args.g, alpha=args.alpha, delta_big=args.delta_big,
      delta_small=args.delta_small, gamma=args.gamma, kappa=args.kappa,
      n_atoms=args.n_atoms).raman()
  except JcmError as e:
    print(f"invalid parameters: {e}", file=sys.stderr)
    return exit_invalid

  run = feasibility_numbers(raman)
  print(json.dumps(jsonable(dict(derived=run.derived, warnings=run.warnings)), indent=2, sort_keys=True))
  return exit_ok


def run_config(args):
  try:
    config = ScenarioConfig.from_json(args.config)
  except ConfigError as e:
    print(f"invalid config: {e}", file=sys.stderr)
    return exit_invalid

  if args.threads is not None:
    torch.set_num_threads(args.threads)
  ti.init(arch=ti.cpu, log_level=ti.WARN if args.quiet else ti.INFO)

  out = output_dir(args.out, config)
  try:
    run = run_scenario(config, progress=args.progress)
  except (TruncationError, ConvergenceError) as e:
    print(f"{config.scenario}: {e}", file=sys.stderr)
    return exit_numerics
  except JcmError as e:
    print(f"{config.scenario}: {e}", file=sys.stderr)
    return exit_invalid

  written = write_outputs(out, config, run)
  if not args.quiet:
    for path in written:
      print(f"wrote {path}")

    result = run.result
    if result is not None and result.fidelity is not None:
      print(f"{config.scenario}: fidelity {result.fidelity:.10f}")

  if not run.converged:
    print(f"{config.scenario}: not converged, {run.result.reason}", file=sys.stderr)
    return exit_numerics
  return exit_ok


def main(args=None):
  args = parse_args(args)
  if args.command == 'list':
    return list_scenarios()
  if args.command == 'feasibility':
    return feasibility(args)
  return run_config(args)


if __name__ == '__main__':
  sys.exit(main())
