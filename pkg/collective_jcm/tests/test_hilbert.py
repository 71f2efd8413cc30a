import math

import pytest
import torch

from collective_jcm.errors import SpaceError, TruncationError
from collective_jcm.hilbert import (BosonMode, CavityFock, CollectiveDicke, ControlQubit, Operator,
  basis_state, boson_annihilation, coherent_amplitudes, coherent_state, coherent_tail_mass,
  coherent_truncation, collective_lowering, collective_sz, control_ops, embed_symmetric, fock_state,
  PureState, embed, make_space, mode_lowering, mode_product_operators, number_operator, sample_lowerings,
  symmetric_dicke_state)
from collective_jcm.hilbert.symmetric import dicke_isometry
from collective_jcm.tests.util import allclose, random_state


def test_space_layout():
  space = make_space([ControlQubit(), CollectiveDicke(10, 3), CavityFock(2)])
  assert space.dims == (2, 4, 3)
  assert space.dim == 24
  assert space.index_of(CollectiveDicke) == 1
  assert space.has(CavityFock) and not space.has(BosonMode)

  with pytest.raises(SpaceError):
    space.check_factor(0, BosonMode)

  with pytest.raises(SpaceError):
    CollectiveDicke(3, 4)

  with pytest.raises(SpaceError):
    BosonMode(0)


def test_space_mismatch():
  a = boson_annihilation(make_space([BosonMode(3)]), 0)
  b = boson_annihilation(make_space([BosonMode(4)]), 0)
  with pytest.raises(SpaceError):
    a + b


def test_kronecker_order():
  space = make_space([ControlQubit(), BosonMode(3)])
  state = basis_state(space, [1, 2])
  # control is the most significant factor
  assert state.amplitudes[1 * 4 + 2] == 1
  assert state.norm == 1.


def test_boson_commutator():
  space = make_space([ControlQubit(), BosonMode(5)])
  b = boson_annihilation(space, 1)
  defect = (b @ b.dag() - b.dag() @ b - Operator.identity(space)).dense.diagonal()

  # exact away from the truncation edge, which carries -(n_max + 1)
  allclose("boson_commutator", "below_edge", defect.reshape(2, 6)[:, :5].abs().max().item(), 0.)
  allclose("boson_commutator", "edge", defect.reshape(2, 6)[:, 5].real, torch.tensor([-6., -6.]))


def test_dicke_elements():
  n = 10
  space = make_space([CollectiveDicke(n, 4)])
  s = collective_lowering(space, 0)
  for m in range(1, 5):
    allclose("dicke", f"S-[{m}]", s.entry(m - 1, m), complex(math.sqrt(m * (n - m + 1))))

  sz = collective_sz(space, 0)
  allclose("dicke", "sz", sz.diagonal().real, torch.arange(5, dtype=torch.float64) - n / 2)

  # normalized mode operator and exact number products
  b = mode_lowering(space, 0)
  bdag_b, b_bdag = mode_product_operators(space, 0)
  allclose("dicke", "bdag_b", (b.dag() @ b).dense, bdag_b.dense)
  allclose("dicke", "b_bdag", (b @ b.dag()).dense[:4, :4], b_bdag.dense[:4, :4])


def test_control_ops():
  space = make_space([ControlQubit(), BosonMode(1)])
  ops = control_ops(space)
  excited = basis_state(space, [1, 0])
  ground = basis_state(space, [0, 0])

  allclose("control", "sz", excited.expectation(ops.sz), 0.5 + 0j)
  allclose("control", "excited", excited.expectation(ops.excited), 1. + 0j)
  allclose("control", "lower", ops.lower.apply(excited.amplitudes), ground.amplitudes)
  assert ops.sigma_x.is_hermitian() and ops.sigma_y.is_hermitian()

  # sigma_x sigma_y = i sigma_z
  sz2 = 2 * ops.sz
  allclose("control", "xy", (ops.sigma_x @ ops.sigma_y).dense, (1j * sz2).dense)


def test_number_operator():
  space = make_space([ControlQubit(), BosonMode(3)])
  state = fock_state(space, 1, 3)
  allclose("number", "n", state.expectation(number_operator(space, 1)), 3. + 0j)

  with pytest.raises(TruncationError):
    fock_state(space, 1, 4)


def test_coherent_state():
  alpha = 1.5 - 0.5j
  n_max = coherent_truncation(alpha)
  assert n_max >= 4 * abs(alpha) ** 2
  assert coherent_tail_mass(alpha, n_max) <= 1e-8

  space = make_space([ControlQubit(), BosonMode(n_max)])
  state = coherent_state(space, 1, alpha)
  allclose("coherent", "norm", state.norm, 1.)

  b = boson_annihilation(space, 1)
  allclose("coherent", "mean", state.expectation(b), alpha, atol=1e-6)
  allclose("coherent", "n", state.expectation(number_operator(space, 1)).real, abs(alpha) ** 2, atol=1e-6)

  with pytest.raises(TruncationError):
    coherent_amplitudes(3., 20)


def test_operator_algebra():
  space = make_space([ControlQubit(), BosonMode(3)])
  psi = random_state(space, 7)
  b = boson_annihilation(space, 1)

  h = b.dag() @ b + 0.5 * (b + b.dag())
  assert h.is_hermitian(1e-14)

  allclose("algebra", "apply", h.apply(psi.amplitudes), h.dense @ psi.amplitudes)
  allclose("algebra", "scale", (h / 2).dense, 0.5 * h.dense)
  allclose("algebra", "commutator", h.commutator(h).max_abs(), 0.)


def integer_operator(factor, seed:int) -> Operator:
  """ Dense operator with small integer entries, products of which are exact in floating point. """
  space = make_space([factor])
  generator = torch.Generator().manual_seed(seed)
  re = torch.randint(-3, 4, (space.dim, space.dim), generator=generator)
  im = torch.randint(-3, 4, (space.dim, space.dim), generator=generator)
  return Operator.from_dense(space, torch.complex(re.double(), im.double()))


def test_tensor_products():
  factors = [ControlQubit(), BosonMode(2), CavityFock(1)]
  a, b, c = [integer_operator(f, seed) for seed, f in enumerate(factors)]

  left, right = a.kron(b).kron(c), a.kron(b.kron(c))
  assert left.space.dims == right.space.dims == (2, 3, 2)
  assert left.same_entries(right)
  allclose("kron", "dense", left.dense, torch.kron(torch.kron(a.dense, b.dense), c.dense), atol=0.)

  # identity on every other factor
  space = make_space(factors)
  eye = lambda n: torch.eye(n, dtype=torch.complex128)
  allclose("embed", "middle", embed(b, space, 1).dense,
           torch.kron(torch.kron(eye(2), b.dense), eye(2)), atol=0.)
  allclose("embed", "first", embed(a, space, 0).dense, torch.kron(a.dense, eye(6)), atol=0.)
  allclose("embed", "last", embed(c, space, 2).dense, torch.kron(eye(6), c.dense), atol=0.)

  # operators on disjoint factors commute
  on_a, on_b, on_c = embed(a, space, 0), embed(b, space, 1), embed(c, space, 2)
  for x, y in [(on_a, on_b), (on_a, on_c), (on_b, on_c)]:
    assert x.commutator(y).max_abs() == 0.
  assert (on_a @ on_b @ on_c).same_entries(a.kron(b).kron(c))

  with pytest.raises(SpaceError):
    embed(a, space, 1)
  with pytest.raises(SpaceError):
    embed(a, space, 3)


def test_symmetric_embedding():
  n = 3
  isometry = dicke_isometry(n, n)
  allclose("isometry", "orthonormal", isometry.mH @ isometry, torch.eye(n + 1, dtype=isometry.dtype))

  w = symmetric_dicke_state(n, 1)
  allclose("isometry", "w_state", w.abs().square()[[1, 2, 4]], torch.full((3,), 1 / 3, dtype=torch.float64))

  space = make_space([ControlQubit(), CollectiveDicke(n, n), CavityFock(1)])
  psi = random_state(space, 3)
  embedded = embed_symmetric(psi)
  assert embedded.space.dim == 2 * 2 ** n * 2
  allclose("embed", "norm", embedded.norm, 1.)

  # the summed per-atom lowering acts like S- on the symmetric subspace
  s_dicke = sample_lowerings(space)[0]
  s_atoms = sample_lowerings(embedded.space)[0]
  lowered = embed_symmetric(PureState(space, s_dicke.apply(psi.amplitudes)))
  allclose("embed", "lowering", lowered.amplitudes, s_atoms.apply(embedded.amplitudes))


if __name__ == '__main__':
  test_space_layout()
  test_boson_commutator()
  test_dicke_elements()
  test_control_ops()
  test_coherent_state()
  test_operator_algebra()
  test_tensor_products()
  test_symmetric_embedding()
