"""
Utilidades auxiliares generales para Incidence-Salem.

Este módulo provee funciones de utilidad usadas en toda la aplicación:
aritmética entera elemental, codificación mixed-radix de puntos de R^d y
formato de números para los reportes.
"""

import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np


def is_prime(n: int) -> bool:
    """
    Determinar si un entero es primo (división por tentativa, escala de escritorio).

    Args:
        n: Entero a verificar

    Returns:
        bool: True si n es primo
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for divisor in range(3, math.isqrt(n) + 1, 2):
        if n % divisor == 0:
            return False
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """
    Descomponer q = p^k.

    Args:
        q: Entero a descomponer

    Returns:
        (p, k) si q es potencia de un primo, None en caso contrario
    """
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k = 0
            rest = q
            while rest % p == 0:
                rest //= p
                k += 1
            return (p, k) if rest == 1 else None
    return None


def prime_factors(n: int) -> Tuple[int, ...]:
    """Primos distintos que dividen a n, en orden creciente."""
    factors = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            factors.append(p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        factors.append(rest)
    return tuple(factors)


@lru_cache(maxsize=64)
def grid_coordinates(m: int, d: int) -> np.ndarray:
    """
    Coordenadas de todos los puntos de un espacio m^d.

    El índice de un punto es la codificación mixed-radix de (x_1, ..., x_d)
    con x_1 como dígito menos significativo.

    Args:
        m: Tamaño del anillo
        d: Dimensión

    Returns:
        np.ndarray: Arreglo de solo lectura con forma (d, m^d)
    """
    size = m ** d
    indices = np.arange(size, dtype=np.int64)
    coords = np.empty((d, size), dtype=np.int64)
    for i in range(d):
        coords[i] = (indices // (m ** i)) % m
    coords.setflags(write=False)
    return coords


def encode_points(coords: np.ndarray, m: int) -> np.ndarray:
    """
    Codificar coordenadas (d, n) a índices mixed-radix.

    Args:
        coords: Arreglo (d, n) de índices de elementos
        m: Tamaño del anillo

    Returns:
        np.ndarray: Índices de los n puntos
    """
    coords = np.asarray(coords, dtype=np.int64)
    weights = m ** np.arange(coords.shape[0], dtype=np.int64)
    return weights @ coords


def encode_point(point: Sequence[int], m: int) -> int:
    """Codificar un único punto de R^d."""
    return int(sum(int(x) * m ** i for i, x in enumerate(point)))


def decode_point(index: int, m: int, d: int) -> Tuple[int, ...]:
    """Decodificar un índice mixed-radix al punto (x_1, ..., x_d)."""
    return tuple((index // m ** i) % m for i in range(d))


def format_float(value: float, digits: int = 12) -> str:
    """
    Formatear un float con una cantidad fija de dígitos significativos.

    Args:
        value: Valor a formatear
        digits: Dígitos significativos (17 para JSON, 12 para CSV/texto)

    Returns:
        str: Representación textual
    """
    if value is None:
        return ""
    if not math.isfinite(value):
        return str(value)
    return format(float(value), f".{digits}g")


def relative_deviation(a: float, b: float) -> float:
    """Desvío relativo |a - b| / max(|a|, |b|), 0 si ambos son 0."""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale
