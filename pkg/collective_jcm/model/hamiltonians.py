""" Hamiltonian builders, from the driven cavity model down to the bosonized
Jaynes-Cummings forms.

Basis order on every qubit is (|g>, |e>), the control atom is the ControlQubit
factor and each sample is either a CollectiveDicke factor, a BosonMode, or (for
brute-force checks) a group of AtomQubit factors.
"""
import math

from beartype import beartype
from beartype.typing import List, Optional, Sequence

from collective_jcm.errors import SpaceError
from collective_jcm.hilbert.ladder import (boson_annihilation, control_ops,
  mode_lowering, mode_product_operators, number_operator, sample_lowerings)
from collective_jcm.hilbert.operator import Operator, TimeDependentOperator, sum_operators
from collective_jcm.hilbert.space import (AtomQubit, BosonMode, CavityFock, CollectiveDicke,
  ControlQubit, SpaceDescriptor, make_space)
from collective_jcm.model.params import SystemParams


def dicke_factor(params:SystemParams, m_max:int) -> CollectiveDicke:
  """ Dicke ladder of one sample truncated at m_max, the ladder of N atoms ends at m = N. """
  return CollectiveDicke(int(params.n_atoms), min(int(m_max), int(params.n_atoms)))


def full_space(params:SystemParams, m_max:int, cavity:int = 2, per_atom:bool = False) -> SpaceDescriptor:
  """ [control, one Dicke factor per sample (or N atoms), cavity] """
  if per_atom:
    if params.n_samples != 1:
      raise SpaceError("per-atom representation supports a single sample")
    samples = [AtomQubit()] * params.n_atoms
  else:
    samples = [dicke_factor(params, m_max)] * params.n_samples
  return make_space([ControlQubit(), *samples, CavityFock(cavity)])


def vacuum_space(params:SystemParams, m_max:int) -> SpaceDescriptor:
  return make_space([ControlQubit()] + [dicke_factor(params, m_max)] * params.n_samples)


def mode_space(n_max:int, n_samples:int = 1) -> SpaceDescriptor:
  return make_space([ControlQubit()] + [BosonMode(n_max)] * n_samples)


def _check_samples(params:SystemParams, space:SpaceDescriptor):
  dicke = space.indices_of(CollectiveDicke)
  atoms = space.indices_of(AtomQubit)

  if len(atoms) > 0:
    if len(dicke) > 0 or params.n_samples != 1 or len(atoms) != params.n_atoms:
      raise SpaceError(f"per-atom space needs exactly N={params.n_atoms} AtomQubit factors "
                       f"and a single sample, got {space}")
    return

  if len(dicke) != params.n_samples:
    raise SpaceError(f"expected {params.n_samples} CollectiveDicke factors, got {len(dicke)}")

  for i in dicke:
    if space[i].n_atoms != params.n_atoms:
      raise SpaceError(f"factor {i} has N={space[i].n_atoms}, params have N={params.n_atoms}")


def _total_lowering(space:SpaceDescriptor) -> Operator:
  """ J- = sigma_c- plus the collective lowering of every sample. """
  ops = control_ops(space)
  return sum_operators([ops.lower, *sample_lowerings(space)], space)


@beartype
def full_hamiltonian_td(params:SystemParams, space:SpaceDescriptor) -> TimeDependentOperator:
  """ Interaction picture H_I(t) of the driven control atom, samples and cavity:

    Omega (S_c+ e^{i delta_d t} + h.c.) + g (e^{-i delta_c t} a+ J- + e^{i delta_c t} a J+)
  """
  space.index_of(ControlQubit)
  cavity = space.index_of(CavityFock)
  _check_samples(params, space)

  ops = control_ops(space)
  a = boson_annihilation(space, cavity)
  lower = _total_lowering(space)
  coupling = a.dag() @ lower

  omega, g = float(params.omega), float(params.g)
  delta_c, delta_d = float(params.delta_c), float(params.delta_d)

  terms = [(g * coupling, -delta_c), (g * coupling.dag(), delta_c)]
  if omega != 0:
    terms = [(omega * ops.raise_, delta_d), (omega * ops.lower, -delta_d)] + terms
  return TimeDependentOperator(space, tuple(terms))


@beartype
def full_hamiltonian(params:SystemParams, space:SpaceDescriptor, t:float) -> Operator:
  return full_hamiltonian_td(params, space).at(t)


@beartype
def effective_vacuum_hamiltonian(params:SystemParams, space:SpaceDescriptor) -> Operator:
  """ Cavity eliminated in its vacuum:

    H = 2 lambda_d S_zc + lambda_c J+ J-

  which expands to lambda_c |e_c><e_c| + lambda_c (S_c+ S- + S_c- S+) + lambda_c S+ S-,
  the last term including the sample Stark shift lambda_c n_b. """
  if space.has(CavityFock):
    raise SpaceError("effective vacuum Hamiltonian has no cavity factor, use the full model")
  space.index_of(ControlQubit)
  _check_samples(params, space)

  ops = control_ops(space)
  lower = _total_lowering(space)
  return 2 * params.lambda_d * ops.sz + params.lambda_c * (lower.dag() @ lower)


@beartype
def cavity_dispersive_hamiltonian(params:SystemParams, space:SpaceDescriptor) -> Operator:
  """ Dispersive Hamiltonian with the cavity retained,

    H = 2 lambda_d S_zc + lambda_c ((a+ a + 1) J+ J- - a+ a J- J+)

  which commutes with the photon number a+ a. """
  space.index_of(ControlQubit)
  cavity = space.index_of(CavityFock)
  _check_samples(params, space)

  ops = control_ops(space)
  lower = _total_lowering(space)
  photons = number_operator(space, cavity)
  identity = Operator.identity(space)

  hopping = (photons + identity) @ (lower.dag() @ lower) - photons @ (lower @ lower.dag())
  return 2 * params.lambda_d * ops.sz + params.lambda_c * hopping


def _mode_indices(space:SpaceDescriptor, n_modes:Optional[int] = None) -> List[int]:
  if space.has(CavityFock) or space.has(AtomQubit):
    raise SpaceError(f"mode Hamiltonians act on [control, modes...], got {space}")

  space.index_of(ControlQubit)
  modes = list(space.indices_of(BosonMode, CollectiveDicke))
  if len(modes) + 1 != len(space):
    raise SpaceError(f"unexpected factors in {space}")
  if n_modes is not None and len(modes) != n_modes:
    raise SpaceError(f"expected {n_modes} mode factors, got {len(modes)}")
  return modes


def _bright_mode_jcm(params:SystemParams, space:SpaceDescriptor, modes:Sequence[int]) -> Operator:
  """ (2 lambda_d + lambda_c) S_zc + sqrt(N) eps B+ B + eps (S_c+ B + S_c- B+), B = sum_j b_j,
  with B+ B = sum_jk b_j+ b_k using exact diagonals for j = k. """
  p = params.effective
  ops = control_ops(space)
  lowering = [mode_lowering(space, i) for i in modes]
  bright = sum_operators(lowering, space)

  hopping = Operator.zeros(space)
  for j, bj in zip(modes, lowering):
    for k, bk in zip(modes, lowering):
      if j == k:
        hopping = hopping + mode_product_operators(space, j)[0]
      else:
        hopping = hopping + bj.dag() @ bk

  exchange = ops.raise_ @ bright
  return ((2 * p.lambda_d + p.lambda_c) * ops.sz + p.mode_frequency * hopping
          + p.epsilon * (exchange + exchange.dag()))


@beartype
def jcm_hamiltonian(params:SystemParams, space:SpaceDescriptor) -> Operator:
  """ Bosonized Jaynes-Cummings Hamiltonian on [control, mode]:

    H = (2 lambda_d + lambda_c) S_zc + sqrt(N) eps b+ b + eps (S_c+ b + S_c- b+)

  the mode is either an ideal BosonMode or a CollectiveDicke factor with b = S- / sqrt(N).
  The constant lambda_c / 2 is dropped. """
  modes = _mode_indices(space, 1)
  _check_factor_atoms(params, space, modes)
  return _bright_mode_jcm(params, space, modes)


@beartype
def multi_sample_hamiltonian(params:SystemParams, space:SpaceDescriptor) -> Operator:
  """ n samples sharing the control atom through the bright mode B = sum_j b_j. """
  modes = _mode_indices(space, params.n_samples)
  if params.n_samples < 2:
    raise SpaceError("multi-sample Hamiltonian needs n_samples >= 2, use jcm_hamiltonian")
  _check_factor_atoms(params, space, modes)
  return _bright_mode_jcm(params, space, modes)


@beartype
def dispersive_mode_hamiltonian(params:SystemParams, space:SpaceDescriptor) -> Operator:
  """ H = chi (|e_c><e_c| b b+ - |g_c><g_c| b+ b), chi = eps^2 / delta. """
  modes = _mode_indices(space, 1)
  _check_factor_atoms(params, space, modes)

  ops = control_ops(space)
  bdag_b, b_bdag = mode_product_operators(space, modes[0])
  return params.chi * (ops.excited @ b_bdag - ops.ground @ bdag_b)


def _check_factor_atoms(params:SystemParams, space:SpaceDescriptor, modes:Sequence[int]):
  for i in modes:
    factor = space[i]
    if isinstance(factor, CollectiveDicke) and factor.n_atoms != params.n_atoms:
      raise SpaceError(f"factor {i} has N={factor.n_atoms}, params have N={params.n_atoms}")


def bright_mode_operator(space:SpaceDescriptor) -> Operator:
  """ Normalized bright mode (sum_j b_j) / sqrt(n). """
  modes = _mode_indices(space)
  return sum_operators([mode_lowering(space, i) for i in modes], space) / math.sqrt(len(modes))


def dark_mode_population(space:SpaceDescriptor) -> Operator:
  """ sum_j b_j+ b_j - B+ B / n: the excitation held by modes orthogonal to the bright mode. """
  modes = _mode_indices(space)
  bright = bright_mode_operator(space)
  total = sum_operators([mode_product_operators(space, i)[0] for i in modes], space)
  return total - bright.dag() @ bright


def excitation_number(space:SpaceDescriptor) -> Operator:
  """ S_zc + sum_j b_j+ b_j, conserved by the mode Hamiltonians. """
  modes = _mode_indices(space)
  ops = control_ops(space)
  return sum_operators([ops.sz] + [number_operator(space, i) for i in modes], space)
