import argparse
from functools import partial
import math

import taichi as ti
import torch

from collective_jcm.analysis.wigner import make_grid, wigner_exact, wigner_series_map
from collective_jcm.benchmarks.util import benchmarked
from collective_jcm.dynamics.lindblad import lindblad_evolve
from collective_jcm.dynamics.propagate import StaticPropagator, propagate_timedep
from collective_jcm.dynamics.report import StepConfig
from collective_jcm.hilbert.space import BosonMode, make_space
from collective_jcm.hilbert.states import basis_state, coherent_state
from collective_jcm.model.hamiltonians import (full_hamiltonian_td, full_space, jcm_hamiltonian,
  mode_space)
from collective_jcm.model.params import SystemParams
from collective_jcm.protocols.segments import decoherence_channels


def parse_args(args=None):
  parser = argparse.ArgumentParser()
  parser.add_argument('--n_atoms', type=int, default=50)
  parser.add_argument('--delta_c', type=float, default=100.)
  parser.add_argument('--m_max', type=int, default=9)
  parser.add_argument('--n_max', type=int, default=40)
  parser.add_argument('--steps', type=int, default=200, help='RK4 steps per timed iteration')
  parser.add_argument('--grid', type=int, default=21, help='Wigner grid points per axis')
  parser.add_argument('--alpha', type=float, default=2.)
  parser.add_argument('--iters', type=int, default=10)
  parser.add_argument('--threads', type=int, default=None)

  return parser.parse_args(args)


def bench_propagation(args):
  ti.init(arch=ti.cpu, log_level=ti.INFO)
  if args.threads is not None:
    torch.set_num_threads(args.threads)

  params = SystemParams.resonant(1., args.delta_c, args.n_atoms)
  t_rabi = math.pi / params.epsilon

  space = full_space(params, args.m_max)
  full = full_hamiltonian_td(params, space)
  psi0 = basis_state(space, [1] + [0] * (len(space) - 1))
  dt = t_rabi / 10000

  print(f'n_atoms={args.n_atoms}, m_max={args.m_max}, dim={space.dim}, dt={dt:.3g}')
  print('----------------------------------------------------------')

  rk4 = partial(propagate_timedep, full, psi0, args.steps * dt, config=StepConfig(dt=dt, stride=args.steps))
  benchmarked(f'rk4 ({args.steps} steps)', rk4, iters=args.iters, warmup=1)

  jcm_space = mode_space(args.n_max)
  jcm = jcm_hamiltonian(params, jcm_space)
  times = torch.linspace(0, t_rabi, 1000, dtype=torch.float64)
  psi_jcm = basis_state(jcm_space, [1, 0])
  benchmarked('eigendecomposition + 1000 samples',
    lambda: StaticPropagator(jcm).evolve(psi_jcm, times), iters=args.iters, warmup=1)

  small = mode_space(9)
  channels = decoherence_channels(small, [1], 0.01 * params.epsilon, 0.01 * params.epsilon)
  lindblad = partial(lindblad_evolve, jcm_hamiltonian(params, small), channels,
    basis_state(small, [1, 0]).to_density(), t_rabi / 10, config=StepConfig(stride=10 ** 9))
  benchmarked('lindblad (t_rabi / 10)', lindblad, iters=args.iters, warmup=1)

  grid = make_grid(0., 3., args.grid)
  state = coherent_state(make_space([BosonMode(30)]), 0, args.alpha)
  benchmarked(f'wigner_exact ({args.grid}x{args.grid})',
    partial(wigner_exact, state, grid), iters=args.iters, warmup=1)
  benchmarked(f'wigner_series ({args.grid}x{args.grid})',
    partial(wigner_series_map, state, grid), iters=args.iters, warmup=1)


def main():
  args = parse_args()
  bench_propagation(args)

if __name__ == '__main__':
  main()
