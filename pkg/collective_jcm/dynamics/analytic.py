import math
from numbers import Integral, Real

from beartype import beartype
from beartype.typing import Literal, Optional
import torch

from collective_jcm.errors import TruncationError
from collective_jcm.hilbert.space import BosonMode, ControlQubit, make_space
from collective_jcm.hilbert.states import PureState
from collective_jcm.model.params import SystemParams
from collective_jcm.torch_ops.linalg import dtype


def jcm_gap(params:SystemParams) -> float:
  """ <e,n|H|e,n> - <g,n+1|H|g,n+1> of the bosonized JCM, zero at resonance. """
  p = params.effective
  return 2 * p.lambda_d + p.lambda_c - p.mode_frequency


@beartype
def jcm_analytic(branch:Literal['e', 'g'], n:Integral, t:Real, epsilon:Real, n_atoms:Integral,
                 n_max:Optional[Integral] = None, gap:Real = 0.) -> PureState:
  """ Closed-form JCM evolution inside the block {|e,n>, |g,n+1>}.

  branch 'e' starts from |e,n>, branch 'g' from |g,n+1>. With E0 = sqrt(N) eps (n + 1/2),
  coupling eps sqrt(n+1) and diagonal gap (zero at resonance) the block evolves as a two-level
  system; at resonance |e,n> -> e^{-i E0 t} (cos(sqrt(n+1) eps t)|e,n> - i sin(...)|g,n+1>).
  The global phase matches exp(-i H t) of jcm_hamiltonian.
  """
  n_max = n + 9 if n_max is None else n_max
  if n + 1 > n_max:
    raise TruncationError(f"n_max={n_max} cannot hold |n+1> for n={n}")

  t, epsilon, gap = float(t), float(epsilon), float(gap)
  energy = math.sqrt(n_atoms) * epsilon * (n + 0.5)
  coupling = epsilon * math.sqrt(n + 1)

  rabi = math.sqrt(gap ** 2 / 4 + coupling ** 2)
  sinc = t if rabi == 0 else math.sin(rabi * t) / rabi
  cos = math.cos(rabi * t)

  if branch == 'e':
    amp_e = complex(cos, -sinc * gap / 2)
    amp_g = complex(0, -sinc * coupling)
  else:
    amp_e = complex(0, -sinc * coupling)
    amp_g = complex(cos, sinc * gap / 2)

  phase = complex(math.cos(energy * t), -math.sin(energy * t))

  space = make_space([ControlQubit(), BosonMode(n_max)])
  amplitudes = torch.zeros(space.dim, dtype=dtype)
  amplitudes[(n_max + 1) + n] = phase * amp_e      # |e, n>
  amplitudes[n + 1] = phase * amp_g                # |g, n+1>
  return PureState(space, amplitudes)
