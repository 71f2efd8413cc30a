from .report import PropagationReport, CollapseChannel, StepConfig
from .propagate import (StaticPropagator, propagate_static, propagate_static_trace, propagate_timedep,
  richardson_order, eigh_dim_limit)
from .lindblad import lindblad_evolve, lindblad_dim_limit
from .analytic import jcm_analytic, jcm_gap

__all__ = [
  'PropagationReport', 'CollapseChannel', 'StepConfig',
  'StaticPropagator', 'propagate_static', 'propagate_static_trace', 'propagate_timedep',
  'richardson_order', 'eigh_dim_limit',
  'lindblad_evolve', 'lindblad_dim_limit',
  'jcm_analytic', 'jcm_gap',
]
