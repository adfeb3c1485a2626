"""
Transformada de Fourier sobre R^d.

Normalización: f^(chi_a) = (1/m^d) sum_x f(x) chi_a(x). La suma es directa,
eje por eje: como chi_a(x) = prod_i e(beta(a_i, x_i)), el núcleo m^d x m^d es
el producto tensorial de la matriz m x m del emparejamiento.
"""

from typing import Optional

import numpy as np

from ..rings.ring_table import RingTable

from ..utils.logging import get_logger
from .grid import GridFunction
from .pairing import Pairing, build_pairing

logger = get_logger(__name__)


def _apply_kernel(values: np.ndarray, kernel: np.ndarray, m: int, d: int) -> np.ndarray:
    """Aplicar kernel[a, x] en cada eje de un tensor m x ... x m."""
    tensor = values.reshape((m,) * d)
    for axis in range(d):
        tensor = np.moveaxis(np.tensordot(kernel, tensor, axes=([1], [axis])), 0, axis)
    return tensor.reshape(-1)


def fourier_transform(f: GridFunction, pairing: Optional[Pairing] = None) -> np.ndarray:
    """
    Coeficientes de Fourier de f.

    Args:
        f: Función sobre R^d
        pairing: Emparejamiento (por defecto el del anillo)

    Returns:
        np.ndarray: Coeficiente en cada dual a, indexado como los puntos de R^d
    """
    pairing = pairing or build_pairing(f.ring)
    m, d = f.ring.size, f.d
    coefficients = _apply_kernel(f.values, pairing.kernel(), m, d)
    return coefficients / m ** d


def inverse_fourier(coefficients: np.ndarray, ring: RingTable, d: int,
                    pairing: Optional[Pairing] = None) -> GridFunction:
    """
    Reconstruir f(x) = sum_a f^(a) conj(chi_a(x)).

    Args:
        coefficients: Coeficientes indexados por dual
        ring: Anillo base
        d: Dimensión
        pairing: Emparejamiento (por defecto el del anillo)

    Returns:
        GridFunction: La función reconstruida
    """
    pairing = pairing or build_pairing(ring)
    m = ring.size
    kernel = pairing.kernel().conj().T
    values = _apply_kernel(np.asarray(coefficients, dtype=np.complex128), kernel, m, d)
    return GridFunction(ring, d, values)


def parseval_gap(f: GridFunction, coefficients: np.ndarray) -> float:
    """
    Diferencia relativa en sum |f^(a)|^2 = m^{-d} ||f||^2.
    """
    lhs = float(np.sum(np.abs(coefficients) ** 2))
    rhs = f.norm() ** 2 / f.ring.size ** f.d
    scale = max(lhs, rhs, 1e-300)
    return abs(lhs - rhs) / scale
