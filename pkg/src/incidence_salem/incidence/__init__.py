"""
Operador de incidencia del producto punto y sus normas espectrales.
"""

from .operator import (IncidenceOperator, apply, apply_transpose,
                       build_incidence, character_ratio, count_incidences,
                       indicator_count, mean_zero_project,
                       trivial_character_ratio)
from .spectral import (SpectralReport, norm_on_all, norm_on_meanzero,
                       power_iteration, spectral_report)

__all__ = [
    'IncidenceOperator', 'build_incidence', 'apply', 'apply_transpose',
    'mean_zero_project', 'count_incidences', 'indicator_count',
    'character_ratio', 'trivial_character_ratio',
    'SpectralReport', 'norm_on_meanzero', 'norm_on_all', 'spectral_report',
    'power_iteration',
]
