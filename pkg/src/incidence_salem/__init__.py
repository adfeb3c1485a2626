"""
Incidence-Salem

Operadores de incidencia del producto punto sobre anillos finitos: normas
espectrales, caracteres testigo y verificación de cotas a escala de escritorio.
"""

__version__ = "1.0.0"
__author__ = "ChuchoCoder"

# Public API exports
from .main import main, run

__all__ = ["main", "run"]
