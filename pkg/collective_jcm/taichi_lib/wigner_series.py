from functools import cache

from beartype import beartype
import taichi as ti
import torch

from collective_jcm.taichi_lib.conversions import complex_real, real_pairs, torch_taichi


@cache
def wigner_series_kernel(dtype=torch.float64):
  """ W(a) = 2 sum_mn Re(rho_mn W_mn(a)) where the W_mn follow the Laguerre recursion

    W_00 = exp(-2|a|^2) / pi
    W_0n = 2 a W_0,n-1 / sqrt(n)
    W_mm = (2 conj(a) W_m-1,m - sqrt(m) W_m-1,m-1) / sqrt(m)
    W_mn = (2 a W_m,n-1 - sqrt(m) W_m-1,n-1) / sqrt(n)    n > m

  one grid point per thread, two rows of W_mn kept in scratch buffers. """
  ti_dtype = torch_taichi[dtype]
  vec2 = ti.types.vector(2, ti_dtype)

  @ti.kernel
  def wigner_kernel(rho:ti.types.ndarray(vec2, ndim=2),     # (L, L) real pairs
                    points:ti.types.ndarray(vec2, ndim=1),  # (P,) real pairs
                    row0:ti.types.ndarray(vec2, ndim=2),    # (P, L) scratch
                    row1:ti.types.ndarray(vec2, ndim=2),    # (P, L) scratch
                    out:ti.types.ndarray(ti_dtype, ndim=1)):

    n_levels = rho.shape[0]
    for p in range(points.shape[0]):
      a = points[p]
      a_conj = vec2(a.x, -a.y)

      w00 = ti.exp(-2 * a.dot(a)) / ti.math.pi
      row0[p, 0] = vec2(w00, 0)
      w = rho[0, 0].x * w00

      for n in range(1, n_levels):
        row0[p, n] = 2 * ti.math.cmul(a, row0[p, n - 1]) / ti.sqrt(ti.cast(n, ti_dtype))
        w += 2 * ti.math.cmul(rho[0, n], row0[p, n]).x

      for m in range(1, n_levels):
        root_m = ti.sqrt(ti.cast(m, ti_dtype))
        row1[p, m] = (2 * ti.math.cmul(a_conj, row0[p, m]) - root_m * row0[p, m - 1]) / root_m
        w += ti.math.cmul(rho[m, m], row1[p, m]).x

        for n in range(m + 1, n_levels):
          row1[p, n] = (2 * ti.math.cmul(a, row1[p, n - 1])
                        - root_m * row0[p, n - 1]) / ti.sqrt(ti.cast(n, ti_dtype))
          w += 2 * ti.math.cmul(rho[m, n], row1[p, n]).x

        for n in range(m, n_levels):
          row0[p, n] = row1[p, n]

      out[p] = 2 * w

  return wigner_kernel


@beartype
def wigner_series(rho:torch.Tensor,     # (L, L) complex density matrix in the Fock basis
                  points:torch.Tensor   # (P,) complex phase space points beta
                  ) -> torch.Tensor:    # (P,) real W(beta)
  assert rho.dim() == 2 and rho.shape[0] == rho.shape[1], f"expected a square matrix, got {rho.shape}"
  assert points.dim() == 1, f"expected a flat vector of points, got {points.shape}"

  dtype = complex_real[rho.dtype]
  n_levels, n_points = rho.shape[0], points.shape[0]

  out = torch.empty(n_points, dtype=dtype, device=rho.device)
  if n_points == 0:
    return out

  row0 = torch.zeros(n_points, n_levels, 2, dtype=dtype, device=rho.device)
  row1 = torch.zeros_like(row0)

  kernel = wigner_series_kernel(dtype)
  kernel(real_pairs(rho), real_pairs(points.to(rho.dtype)), row0, row1, out)
  return out
