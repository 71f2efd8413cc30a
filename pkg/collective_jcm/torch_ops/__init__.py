from .linalg import (dtype, real_dtype, kron_triplets, identity_triplets, dense_triplets,
  infinity_norm, expm_antihermitian, sqrtm_psd, hermitian_part)

__all__ = [
  'dtype', 'real_dtype', 'kron_triplets', 'identity_triplets', 'dense_triplets',
  'infinity_norm', 'expm_antihermitian', 'sqrtm_psd', 'hermitian_part'
]
