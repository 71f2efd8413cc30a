from .conversions import torch_taichi, complex_real, real_pairs
from .wigner_series import wigner_series

__all__ = ['torch_taichi', 'complex_real', 'real_pairs', 'wigner_series']
