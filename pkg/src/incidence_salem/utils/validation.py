"""
Utilidades de validación para Incidence-Salem.

Este módulo provee funciones de validación de argumentos compartidas por los
módulos de anillos, operadores y la línea de comandos.
"""

import operator
from typing import Any, Callable

from ..utils.logging import get_logger
from .errors import ArgumentError

logger = get_logger(__name__)


def validate_dimension(d: Any, minimum: int = 1) -> int:
    """
    Validar una dimensión d.

    Args:
        d: Dimensión a validar
        minimum: Valor mínimo permitido

    Returns:
        int: La dimensión como entero

    Raises:
        ArgumentError: Si d no es un entero >= minimum
    """
    if isinstance(d, bool) or not isinstance(d, int):
        raise ArgumentError(f"La dimensión debe ser un entero, se obtuvo {d!r}")
    if d < minimum:
        raise ArgumentError(f"La dimensión debe ser >= {minimum}, se obtuvo {d}")
    return d


def validate_tolerance(tol: Any) -> float:
    """
    Validar una tolerancia numérica positiva.

    Raises:
        ArgumentError: Si tol no es un número positivo
    """
    try:
        value = float(tol)
    except (TypeError, ValueError):
        raise ArgumentError(f"Tolerancia inválida: {tol!r}") from None
    if not value > 0:
        raise ArgumentError(f"La tolerancia debe ser positiva, se obtuvo {value}")
    return value


def validate_element(ring: Any, element: Any) -> int:
    """
    Validar un índice de elemento de un anillo materializado.

    Args:
        ring: RingTable
        element: Índice del elemento

    Returns:
        int: El índice validado
    """
    if isinstance(element, bool):
        raise ArgumentError(f"Índice de elemento inválido: {element!r}")
    try:
        index = operator.index(element)
    except TypeError:
        raise ArgumentError(f"Índice de elemento inválido: {element!r}") from None
    if not 0 <= index < ring.size:
        raise ArgumentError(f"El elemento {index} está fuera de rango para un anillo de tamaño {ring.size}")
    return index


def _convert(value: Any, cast: Callable[[Any], Any], default: Any) -> Any:
    if value is None or (isinstance(value, str) and not value.strip()):
        return default
    try:
        return cast(value)
    except (ValueError, TypeError, OverflowError):
        logger.warning(f"⚠️  Valor no numérico {value!r}, se usa {default}")
        return default


def safe_float_conversion(value: Any, default: float = 0.0) -> float:
    """Convertir a float, devolviendo ``default`` si el valor falta o no es numérico."""
    return _convert(value, float, default)


def safe_int_conversion(value: Any, default: int = 0) -> int:
    """Convertir a int; acepta strings como "4.0" (variables de entorno)."""
    return _convert(value, lambda v: int(float(v)), default)
