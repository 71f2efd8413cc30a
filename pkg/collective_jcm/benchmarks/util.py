from dataclasses import dataclass
import time

import torch
from tqdm import tqdm


@dataclass(frozen=True)
class Timing:
  name: str
  iters: int
  seconds: float

  @property
  def per_iter(self) -> float:
    return self.seconds / self.iters

  def __str__(self):
    return (f'{self.name}  {self.iters} iterations: {self.seconds:.3f}s, '
            f'{1000 * self.per_iter:.2f} ms/iter ({torch.get_num_threads()} threads)')


def benchmarked(name, f, iters=100, warmup=10) -> Timing:
  """ Time `iters` calls of f after `warmup` untimed calls (taichi compiles on first call). """
  for _ in range(warmup):
    f()

  start = time.perf_counter()
  for _ in tqdm(range(iters), desc=name):
    f()
  timing = Timing(name, iters, time.perf_counter() - start)

  print(timing)
  return timing
