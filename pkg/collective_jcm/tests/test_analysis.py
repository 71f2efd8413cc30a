import math

import pytest
import torch

from collective_jcm.analysis import (binary_entropy, bosonization_defect, collapse_revival_times,
  commutator_defects, entanglement_entropy, fidelity, find_envelope, purity, reduce, w_entropy, w_state)
from collective_jcm.errors import SpaceError
from collective_jcm.hilbert import (BosonMode, CollectiveDicke, ControlQubit, DensityMatrix, PureState,
  basis_state, fock_state, make_space)
from collective_jcm.tests.util import allclose, random_density, random_state
from collective_jcm.torch_ops.linalg import dtype


def bell_state():
  space = make_space([ControlQubit(), BosonMode(1)])
  amplitudes = torch.tensor([1, 0, 0, 1], dtype=dtype) / math.sqrt(2)
  return PureState(space, amplitudes)


def test_fidelity():
  space = make_space([ControlQubit(), BosonMode(3)])
  a, b = random_state(space, 1), random_state(space, 2)

  allclose("fidelity", "pure", fidelity(a, b), abs(a.overlap(b)) ** 2, atol=1e-14)
  allclose("fidelity", "mixed_pure", fidelity(a.to_density(), b), abs(a.overlap(b)) ** 2, atol=1e-12)
  allclose("fidelity", "uhlmann_pure", fidelity(a.to_density(), b.to_density()), abs(a.overlap(b)) ** 2, atol=1e-6)

  rho = DensityMatrix(space, random_density(space.dim, 5))
  allclose("fidelity", "self", fidelity(rho, rho), 1., atol=1e-6)
  allclose("fidelity", "identical", fidelity(a, a), 1., atol=1e-14)

  with pytest.raises(SpaceError):
    fidelity(a, PureState(make_space([BosonMode(7)]), a.amplitudes))


def test_reduce():
  space = make_space([ControlQubit(), BosonMode(2), BosonMode(3)])
  state = basis_state(space, [1, 2, 0])

  mode = reduce(state, [1])
  allclose("reduce", "populations", mode.populations(), torch.tensor([0., 0., 1.], dtype=torch.float64))
  assert mode.space == make_space([BosonMode(2)])

  # mixed input, reordered keep list
  rho = random_state(space, 11).to_density()
  pair = reduce(rho, [2, 0])
  assert pair.space.dims == (2, 4)
  allclose("reduce", "trace", pair.trace, 1., atol=1e-12)
  allclose("reduce", "nested", reduce(pair, [0]).matrix, reduce(rho, [0]).matrix, atol=1e-12)

  with pytest.raises(SpaceError):
    reduce(state, [1, 1])


def test_entropy():
  bell = bell_state()
  single = reduce(bell, [0])
  allclose("entropy", "bell", entanglement_entropy(single), 1., atol=1e-12)
  allclose("entropy", "purity", purity(single), 0.5, atol=1e-12)

  product = reduce(basis_state(bell.space, [1, 0]), [0])
  allclose("entropy", "product", entanglement_entropy(product), 0., atol=1e-12)

  assert binary_entropy(0.5) == 1.
  assert binary_entropy(0.) == 0.
  allclose("entropy", "w3", w_entropy(3), -(1 / 3) * math.log2(1 / 3) - (2 / 3) * math.log2(2 / 3), atol=1e-15)


def test_w_state():
  space = make_space([BosonMode(2)] * 3)
  w = w_state(space, [0, 1, 2])
  allclose("w_state", "norm", w.norm, 1., atol=1e-15)

  # each mode holds one excitation with probability 1/3
  for i in range(3):
    allclose("w_state", f"mode{i}", reduce(w, [i]).populations(),
             torch.tensor([2 / 3, 1 / 3, 0.], dtype=torch.float64), atol=1e-15)
  allclose("w_state", "entropy", entanglement_entropy(reduce(w, [1])), w_entropy(3), atol=1e-12)


def test_bosonization():
  space = make_space([ControlQubit(), CollectiveDicke(10, 4)])
  defects = commutator_defects(space)
  allclose("bosonization", "commutators", list(defects), [0., 0., 0.], atol=1e-13)

  state = fock_state(space, 1, 2)
  allclose("bosonization", "defect", bosonization_defect(state), 0.4, atol=1e-14)

  with pytest.raises(SpaceError):
    commutator_defects(make_space([ControlQubit(), BosonMode(3)]))


def test_envelope():
  times = torch.arange(0, 30, 0.01, dtype=torch.float64)
  amplitude = torch.exp(-times ** 2 / 2) + 0.5 * torch.exp(-(times - 20) ** 2 / 2)
  signal = amplitude * torch.cos(20 * times)

  period = 2 * math.pi / 20
  envelope = find_envelope(signal, math.ceil(period / 0.01))
  assert envelope.shape == signal.shape
  assert bool((envelope >= signal.abs() - 1e-15).all())

  found = collapse_revival_times(times, signal, period, revival_search=(15., 25.), quiet=(5., 12.))
  assert 1.4 <= found.collapse_time <= 2.0, found
  assert abs(found.revival_time - 20.) < 0.2, found
  allclose("envelope", "revival", found.revival_amplitude, 0.5, atol=0.01)
  assert found.collapsed_amplitude < 1e-3


if __name__ == '__main__':
  test_fidelity()
  test_reduce()
  test_entropy()
  test_w_state()
  test_bosonization()
  test_envelope()
