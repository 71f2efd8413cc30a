import taichi as ti

import torch


torch_taichi = {
    torch.float32: ti.f32,
    torch.float64: ti.f64,
    torch.int32: ti.i32,
    torch.int64: ti.i64,
}

# complex tensors are passed to kernels as (..., 2) real pairs
complex_real = {
    torch.complex64: torch.float32,
    torch.complex128: torch.float64,
}


def real_pairs(t:torch.Tensor) -> torch.Tensor:
  assert t.dtype in complex_real, f"expected a complex tensor, got {t.dtype}"
  return torch.view_as_real(t.contiguous()).contiguous()
