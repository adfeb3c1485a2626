"""
Emparejamientos no degenerados R x R -> Q/Z.

Un Pairing realiza el dual del grupo aditivo de R: el carácter con dual a es
x -> exp(2 pi i beta(a, x)). Las fases se guardan como numeradores enteros
sobre un denominador fijo D (el exponente del grupo aditivo), de modo que
toda la aritmética de fases es exacta.
"""

import math
from functools import lru_cache, reduce
from typing import List, Tuple

import numpy as np

from ..rings.ring_table import RingTable
from ..utils.errors import RingConstructionError
from ..utils.logging import get_logger

logger = get_logger(__name__)

EXHAUSTIVE_BIADDITIVE_LIMIT = 64
RANDOM_BIADDITIVE_TRIPLES = 100_000


class Pairing:
    """
    Emparejamiento beta(a, x) = beta[a, x] / D (mod 1).

    Attributes:
        ring: Anillo del emparejamiento
        beta: Tabla m x m de numeradores en [0, D)
        denominator: D
        roots: exp(2 pi i k / D) para k en [0, D), con los valores 1, i, -1, -i exactos
    """

    def __init__(self, ring: RingTable, beta: np.ndarray, denominator: int, kind: str):
        self.ring = ring
        self.denominator = int(denominator)
        self.beta = np.ascontiguousarray(beta % self.denominator, dtype=np.int64)
        self.kind = kind
        self.roots = _roots_of_unity(self.denominator)
        self.beta.setflags(write=False)
        self.roots.setflags(write=False)

    def phase(self, a: int, x: int) -> Tuple[int, int]:
        """Fase exacta (numerador, denominador) de beta(a, x)."""
        return int(self.beta[a, x]), self.denominator

    def kernel(self) -> np.ndarray:
        """Matriz m x m de valores exp(2 pi i beta(a, x))."""
        return self.roots[self.beta]

    def __repr__(self) -> str:
        return f"Pairing({self.ring.name}, D={self.denominator}, {self.kind})"


def _roots_of_unity(denominator: int) -> np.ndarray:
    k = np.arange(denominator)
    roots = np.exp(2j * np.pi * k / denominator)
    for numerator, value in ((0, 1), (1, 1j), (2, -1), (3, -1j)):
        # k/D = numerator/4
        if (numerator * denominator) % 4 == 0:
            roots[numerator * denominator // 4] = value
    return roots


def _zmod_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    n = ring.size
    idx = np.arange(n, dtype=np.int64)
    return np.multiply.outer(idx, idx) % n, n


def _gf_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    field = ring.field
    return field.trace[ring.mul], field.p


def _mat_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    # beta(A, X) = Tr_{F/F_p}(trace(AX)), trace(AX) = sum_{i,j} A_ij X_ji
    field = ring.field
    n = ring.spec.n
    entries = ring.coordinates
    m = ring.size
    acc = np.zeros((m, m), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = field.add[acc, field.mul[entries[:, None, i * n + j], entries[None, :, j * n + i]]]
    return field.trace[acc], field.p


def _trunc_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    field = ring.field
    coeffs = ring.coordinates
    m = ring.size
    total = np.zeros((m, m), dtype=np.int64)
    for i in range(coeffs.shape[1]):
        total += field.trace[field.mul[coeffs[:, None, i], coeffs[None, :, i]]]
    return total % field.p, field.p


def _prod_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    pairings = [build_pairing(f) for f in ring.factors]
    denominator = reduce(math.lcm, (p.denominator for p in pairings), 1)
    digits = ring.coordinates
    total = np.zeros((ring.size, ring.size), dtype=np.int64)
    for j, pairing in enumerate(pairings):
        scale = denominator // pairing.denominator
        total += pairing.beta[digits[:, None, j], digits[None, :, j]] * scale
    return total % denominator, denominator


def additive_decomposition(ring: RingTable) -> Tuple[List[int], np.ndarray]:
    """
    Descomponer el grupo aditivo como suma directa de cíclicos.

    En cada paso se elige el elemento de mayor orden módulo el subgrupo ya
    generado y se lo reemplaza por un representante de la misma clase con
    ese mismo orden; el subgrupo generado sigue siendo un sumando directo.

    Returns:
        (órdenes n_i, coordenadas (m, r) de cada elemento respecto de los generadores)
    """
    m = ring.size
    add = ring.add
    idx = np.arange(m)

    # multiples[c] = c*x para todo x
    multiples = [np.full(m, ring.zero, dtype=np.int64), idx.astype(np.int64)]
    returned = multiples[-1] == ring.zero
    while not returned.all():
        multiples.append(add[multiples[-1], idx].astype(np.int64))
        returned |= multiples[-1] == ring.zero
    multiples = np.stack(multiples)

    def orders_modulo(mask: np.ndarray) -> np.ndarray:
        hits = mask[multiples[1:]]
        return np.argmax(hits, axis=0) + 1

    generators: List[int] = []
    orders: List[int] = []
    subgroup = np.zeros(m, dtype=bool)
    subgroup[ring.zero] = True
    true_orders = orders_modulo(subgroup)

    while not subgroup.all():
        relative = orders_modulo(subgroup)
        n = int(relative.max())
        coset_of = int(np.argmax(relative == n))
        members = np.flatnonzero(subgroup)
        coset = add[coset_of, members]
        candidates = coset[true_orders[coset] == n]
        if len(candidates) == 0:
            raise RingConstructionError(f"{ring.name}: no se pudo descomponer el grupo aditivo")
        g = int(candidates.min())
        generators.append(g)
        orders.append(n)
        grown = np.zeros(m, dtype=bool)
        grown[add[np.ix_(members, multiples[:n, g])].ravel()] = True
        subgroup = grown

    coordinates = np.zeros((m, len(generators)), dtype=np.int64)
    element = np.full(1, ring.zero, dtype=np.int64)
    combos = np.zeros((1, 0), dtype=np.int64)
    for g, n in zip(generators, orders):
        steps = multiples[:n, g]
        element = add[element[:, None], steps[None, :]].ravel()
        combos = np.concatenate([
            np.repeat(combos, n, axis=0),
            np.tile(np.arange(n), len(combos))[:, None],
        ], axis=1)
    coordinates[element] = combos
    if len(np.unique(element)) != m:
        raise RingConstructionError(f"{ring.name}: la descomposición aditiva no es una base")
    return orders, coordinates


def _generic_beta(ring: RingTable) -> Tuple[np.ndarray, int]:
    orders, coords = additive_decomposition(ring)
    denominator = reduce(math.lcm, orders, 1)
    total = np.zeros((ring.size, ring.size), dtype=np.int64)
    for j, n in enumerate(orders):
        total += np.multiply.outer(coords[:, j], coords[:, j]) * (denominator // n)
    return total % denominator, denominator


_BETAS = {
    "zmod": _zmod_beta,
    "gf": _gf_beta,
    "mat": _mat_beta,
    "trunc": _trunc_beta,
    "prod": _prod_beta,
    "quotient": _generic_beta,
}


def check_pairing(pairing: Pairing, seed: int = 0):
    """
    Verificar biaditividad y no degeneración.

    Raises:
        RingConstructionError: Si alguna propiedad falla
    """
    ring = pairing.ring
    beta, D = pairing.beta, pairing.denominator
    m = ring.size
    errors = []

    if m <= EXHAUSTIVE_BIADDITIVE_LIMIT:
        idx = np.arange(m)
        a, b, x = idx[:, None, None], idx[None, :, None], idx[None, None, :]
    else:
        rng = np.random.default_rng(seed)
        a, b, x = rng.integers(0, m, size=(3, RANDOM_BIADDITIVE_TRIPLES))

    if not np.array_equal(beta[ring.add[a, b], x], (beta[a, x] + beta[b, x]) % D):
        errors.append("no es aditivo en el primer argumento")
    if not np.array_equal(beta[x, ring.add[a, b]], (beta[x, a] + beta[x, b]) % D):
        errors.append("no es aditivo en el segundo argumento")

    nonzero = np.arange(m) != ring.zero
    if not (beta[nonzero] != 0).any(axis=1).all():
        errors.append("es degenerado a izquierda")
    if not (beta[:, nonzero] != 0).any(axis=0).all():
        errors.append("es degenerado a derecha")

    if errors:
        raise RingConstructionError(f"Emparejamiento de {ring.name}: " + "; ".join(errors))


@lru_cache(maxsize=64)
def build_pairing(ring: RingTable) -> Pairing:
    """
    Construir el emparejamiento propio del constructor del anillo.

    - zmod(n): ax/n
    - gf(p,k): Tr(ax)/p
    - mat(n,F): Tr_F(trace(AX))/p
    - prod: suma de los emparejamientos de los factores
    - trunc: traza coeficiente a coeficiente
    - cociente: emparejamiento de una descomposición cíclica del grupo aditivo

    Raises:
        RingConstructionError: Constructor no soportado o emparejamiento degenerado
    """
    builder = _BETAS.get(ring.constructor)
    if builder is None:
        raise RingConstructionError(f"No hay emparejamiento para el constructor '{ring.constructor}'")
    beta, denominator = builder(ring)
    pairing = Pairing(ring, beta, denominator, ring.constructor)
    check_pairing(pairing)
    logger.debug(f"Emparejamiento construido: {pairing}")
    return pairing
