"""
Caracteres aditivos de R^d representados por su elemento dual.

El carácter con dual a = (a_1, ..., a_d) es
chi_a(x) = exp(2 pi i sum_i beta(a_i, x_i)); las fases se suman como
enteros módulo D y se exponencian una sola vez.
"""

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..rings.ring_table import RingTable
from ..utils.errors import ArgumentError
from ..utils.helpers import grid_coordinates
from ..utils.logging import get_logger
from .grid import GridFunction
from .pairing import Pairing, build_pairing

logger = get_logger(__name__)

PULLBACK_FULL_CHECK_LIMIT = 65536


@dataclass(frozen=True)
class Character:
    """
    Carácter aditivo de R^d.

    Attributes:
        pairing: Emparejamiento que realiza el dual
        dual: Vector de índices (a_1, ..., a_d)
    """

    pairing: Pairing
    dual: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dual", tuple(int(a) for a in self.dual))
        m = self.pairing.ring.size
        if any(not 0 <= a < m for a in self.dual):
            raise ArgumentError(f"Dual fuera de rango: {self.dual}")

    @property
    def ring(self) -> RingTable:
        return self.pairing.ring

    @property
    def d(self) -> int:
        return len(self.dual)

    @property
    def is_trivial(self) -> bool:
        return all(a == self.ring.zero for a in self.dual)

    def to_dict(self) -> Dict:
        return {'dual': list(self.dual)}


def trivial_character(ring: RingTable, d: int) -> Character:
    return Character(build_pairing(ring), (ring.zero,) * d)


def character(ring: RingTable, dual: Sequence[int]) -> Character:
    """Carácter de R^d con el emparejamiento por defecto del anillo."""
    return Character(build_pairing(ring), tuple(dual))


def char_eval(chi: Character, x: Sequence[int]) -> complex:
    """
    Evaluar chi en un punto de R^d.

    Raises:
        ArgumentError: Si la dimensión del punto no coincide
    """
    if len(x) != chi.d:
        raise ArgumentError(f"Dimensión del punto {len(x)} != dimensión del carácter {chi.d}")
    pairing = chi.pairing
    phase = sum(int(pairing.beta[a, int(xi)]) for a, xi in zip(chi.dual, x)) % pairing.denominator
    return complex(pairing.roots[phase])


def character_phases(chi: Character) -> np.ndarray:
    """Numeradores de fase en todos los puntos de R^d (módulo D)."""
    pairing = chi.pairing
    coords = grid_coordinates(chi.ring.size, chi.d)
    phases = np.zeros(coords.shape[1], dtype=np.int64)
    for i, a in enumerate(chi.dual):
        phases += pairing.beta[a][coords[i]]
    return phases % pairing.denominator


def character_values(chi: Character) -> GridFunction:
    """Materializar chi como GridFunction."""
    values = chi.pairing.roots[character_phases(chi)]
    return GridFunction(chi.ring, chi.d, values, mean_zero=not chi.is_trivial)


def pullback_character(projection: np.ndarray, chi_tilde: Character,
                       pairing: Pairing) -> Character:
    """
    Levantar un carácter de (R/J)^d a R^d a través de la proyección.

    Para cada coordenada se busca a en R con beta_R(a, x) = beta_Q(a~, pi(x))
    para todo x.

    Args:
        projection: Proyección elemento -> clase
        chi_tilde: Carácter del cociente
        pairing: Emparejamiento de R

    Returns:
        Character: chi con chi(x) = chi_tilde(pi(x))

    Raises:
        ArgumentError: Si la proyección no corresponde a los anillos dados
    """
    ring = pairing.ring
    quotient_pairing = chi_tilde.pairing
    projection = np.asarray(projection, dtype=np.int64)
    if projection.shape != (ring.size,):
        raise ArgumentError("La proyección no corresponde al anillo del emparejamiento")
    if projection.max() >= quotient_pairing.ring.size or projection.min() < 0:
        raise ArgumentError("La proyección no corresponde al cociente del carácter")

    D, Dq = pairing.denominator, quotient_pairing.denominator
    modulus = D * Dq
    lhs = (pairing.beta * Dq) % modulus
    dual = []
    for a_tilde in chi_tilde.dual:
        target = (quotient_pairing.beta[a_tilde][projection] * D) % modulus
        matches = np.flatnonzero((lhs == target[None, :]).all(axis=1))
        if len(matches) == 0:
            raise ArgumentError(f"El carácter dual {a_tilde} del cociente no se levanta a {ring.name}")
        dual.append(int(matches[0]))

    chi = Character(pairing, tuple(dual))
    if chi.is_trivial != chi_tilde.is_trivial:
        raise ArgumentError("El levantamiento cambió la trivialidad del carácter")

    if ring.size ** chi.d <= PULLBACK_FULL_CHECK_LIMIT:
        coords = grid_coordinates(ring.size, chi.d)
        weights = quotient_pairing.ring.size ** np.arange(chi.d)
        projected = weights @ projection[coords]
        lifted = character_phases(chi) * Dq % modulus
        reference = character_phases(chi_tilde)[projected] * D % modulus
        if not np.array_equal(lifted, reference):
            raise ArgumentError("El levantamiento no coincide con el carácter del cociente")
    return chi


def matrix_witness_character(ring: RingTable, d: int) -> Character:
    """
    Carácter testigo chi(A_1, ..., A_d) = chi_F(a_1 + ... + a_d), con a_i la
    entrada superior izquierda de A_i y chi_F el carácter de dual 1 del cuerpo.

    Con beta(A, X) = Tr(trace(AX)) el dual es (E11, ..., E11).

    Raises:
        ArgumentError: Si el anillo no es de matrices
    """
    if ring.constructor != "mat":
        raise ArgumentError(f"El carácter testigo requiere un anillo de matrices, se obtuvo {ring.name}")
    n = ring.spec.n
    q = ring.field.q
    e11 = q ** (n * n - 1)
    chi = character(ring, (e11,) * d)
    if chi.is_trivial:
        raise ArgumentError("El carácter testigo resultó trivial")
    return chi
