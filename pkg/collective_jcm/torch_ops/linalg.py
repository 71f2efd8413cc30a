from beartype.typing import Tuple
import torch

dtype = torch.complex128
real_dtype = torch.float64

Triplets = Tuple[torch.Tensor, torch.Tensor, torch.Tensor]


def kron_triplets(a:Triplets, a_dim:int, b:Triplets, b_dim:int) -> Triplets:
  """ Kronecker product of two (rows, cols, values) sparse triplet lists,
  row index of the result is row_a * b_dim + row_b """
  rows_a, cols_a, values_a = a
  rows_b, cols_b, values_b = b

  rows = (rows_a.unsqueeze(1) * b_dim + rows_b.unsqueeze(0)).reshape(-1)
  cols = (cols_a.unsqueeze(1) * b_dim + cols_b.unsqueeze(0)).reshape(-1)
  values = (values_a.unsqueeze(1) * values_b.unsqueeze(0)).reshape(-1)
  return rows, cols, values


def identity_triplets(n:int) -> Triplets:
  idx = torch.arange(n, dtype=torch.int64)
  return idx, idx.clone(), torch.ones(n, dtype=dtype)


def dense_triplets(m:torch.Tensor) -> Triplets:
  rows, cols = torch.nonzero(m != 0, as_tuple=True)
  return rows, cols, m[rows, cols].to(dtype)


def infinity_norm(m:torch.Tensor) -> float:
  """ max absolute row sum, an upper bound on the spectral radius """
  if m.shape[0] == 0:
    return 0.
  return m.abs().sum(dim=-1).max().item()


def expm_antihermitian(g:torch.Tensor) -> torch.Tensor:
  """ exp(g) for (batched) anti-Hermitian g, via the Hermitian matrix i g """
  evals, evecs = torch.linalg.eigh(1j * g)
  phases = torch.exp(-1j * evals.to(dtype))
  return (evecs * phases.unsqueeze(-2)) @ evecs.mH


def sqrtm_psd(m:torch.Tensor) -> torch.Tensor:
  evals, evecs = torch.linalg.eigh(m)
  roots = evals.clamp(min=0).sqrt().to(dtype)
  return (evecs * roots.unsqueeze(-2)) @ evecs.mH


def hermitian_part(m:torch.Tensor) -> torch.Tensor:
  return 0.5 * (m + m.mH)
