from numbers import Number

from beartype.typing import Sequence
import torch

from collective_jcm.hilbert import PureState, SpaceDescriptor
from collective_jcm.torch_ops.linalg import dtype


def allclose(test_name, name, a, b, atol=1e-10, rtol=0.):
  if isinstance(a, torch.Tensor):
    b = torch.as_tensor(b, dtype=a.dtype)
    if not torch.allclose(a, b, atol=atol, rtol=rtol):
      print(a)
      print(b)
      raise AssertionError(f"{test_name}.{name} does not match, max difference {(a - b).abs().max().item():.3g}")

  elif isinstance(a, Number):
    if not abs(a - b) <= atol + rtol * abs(b):
      print(a)
      print(b)
      raise AssertionError(f"{test_name}.{name} does not match, difference {abs(a - b):.3g}")

  elif isinstance(a, Sequence):
    assert len(a) == len(b), f"{test_name}.{name}: length {len(a)} != {len(b)}"
    for i, (a_, b_) in enumerate(zip(a, b)):
      allclose(test_name, f"{name}[{i}]", a_, b_, atol=atol, rtol=rtol)


def random_state(space:SpaceDescriptor, seed:int) -> PureState:
  generator = torch.Generator().manual_seed(int(seed))
  v = torch.randn(space.dim, dtype=dtype, generator=generator)
  return PureState(space, v / torch.linalg.vector_norm(v))


def random_density(dim:int, seed:int, rank:int = 3) -> torch.Tensor:
  generator = torch.Generator().manual_seed(int(seed))
  a = torch.randn(dim, rank, dtype=dtype, generator=generator)
  rho = a @ a.conj().T
  return rho / rho.diagonal().real.sum()
