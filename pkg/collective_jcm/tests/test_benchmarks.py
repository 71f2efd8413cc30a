from collective_jcm.benchmarks import bench_propagation


def test_bench_propagation():
  args = bench_propagation.parse_args(['--n_atoms', '10', '--m_max', '3', '--n_max', '12',
    '--steps', '10', '--grid', '5', '--iters', '1'])
  bench_propagation.bench_propagation(args)
