"""
Módulo de funciones utilitarias para Incidence-Salem.

Este módulo contiene utilidades compartidas para logging, validación,
excepciones y funciones helper generales.
"""

from .errors import (ArgumentError, IncidenceSalemError, RingConstructionError,
                     ScaleError, SpecParseError, SpecSemanticError)
from .helpers import format_float, is_prime, prime_power
from .logging import (get_logger, log_check_result, log_solver_event,
                      setup_logging)
from .validation import (safe_float_conversion, safe_int_conversion,
                         validate_dimension, validate_tolerance)

__all__ = [
    'setup_logging', 'get_logger', 'log_check_result', 'log_solver_event',
    'IncidenceSalemError', 'ArgumentError', 'RingConstructionError', 'ScaleError',
    'SpecParseError', 'SpecSemanticError',
    'validate_dimension', 'validate_tolerance',
    'safe_float_conversion', 'safe_int_conversion',
    'format_float', 'is_prime', 'prime_power',
]
