"""
Ideales, radical de Jacobson y anillos cociente.

El radical se calcula por fuerza bruta con la caracterización
J = {s : 1 + rs es unidad para todo r}, usando la máscara de unidades ya
materializada en el RingTable.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from ..utils.errors import ArgumentError, RingConstructionError
from ..utils.logging import get_logger
from .ring_table import RingTable, opposite_iso

logger = get_logger(__name__)

SIDES = ("left", "right", "two-sided")
HOMOMORPHISM_CHECK_LIMIT = 256


@dataclass(frozen=True, eq=False)
class Ideal:
    """
    Ideal de un anillo materializado.

    Attributes:
        ring: Anillo ambiente
        members: Índices de los elementos, ordenados
        sided: 'left', 'right' o 'two-sided'
    """

    ring: RingTable
    members: Tuple[int, ...]
    sided: str = "two-sided"

    def __post_init__(self):
        if self.sided not in SIDES:
            raise ArgumentError(f"Lado de ideal inválido: {self.sided}")
        object.__setattr__(self, "members", tuple(sorted(int(x) for x in set(self.members))))
        problems = ideal_closure_errors(self.ring, self.members, self.sided)
        if problems:
            raise ArgumentError("No es un ideal: " + "; ".join(problems))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_proper(self) -> bool:
        return self.size < self.ring.size

    @property
    def is_zero(self) -> bool:
        return self.size == 1

    def mask(self) -> np.ndarray:
        """Máscara booleana de pertenencia."""
        mask = np.zeros(self.ring.size, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def __contains__(self, element: int) -> bool:
        return int(element) in set(self.members)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Ideal) and other.ring is self.ring and other.members == self.members

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))


def ideal_closure_errors(ring: RingTable, members: Tuple[int, ...], sided: str) -> List[str]:
    """
    Verificar que un subconjunto sea un ideal del lado indicado.

    Returns:
        Lista de errores (vacía si es un ideal)
    """
    errors = []
    mask = np.zeros(ring.size, dtype=bool)
    mask[list(members)] = True
    idx = np.asarray(members, dtype=np.int64)

    if not mask[ring.zero]:
        errors.append("no contiene al cero")
    if not mask[ring.add[np.ix_(idx, idx)]].all():
        errors.append("no es cerrado por suma")
    if sided in ("left", "two-sided") and not mask[ring.mul[:, idx]].all():
        errors.append("no es cerrado por producto a izquierda")
    if sided in ("right", "two-sided") and not mask[ring.mul[idx, :]].all():
        errors.append("no es cerrado por producto a derecha")
    return errors


def jacobson_radical(ring: RingTable) -> Ideal:
    """
    Radical de Jacobson por fuerza bruta.

    Args:
        ring: Anillo con las unidades ya calculadas

    Returns:
        Ideal: J como ideal bilátero

    Raises:
        RingConstructionError: Si la condición simétrica 1 + sr no coincide
    """
    # shifted[r, s] = 1 + r*s
    shifted = ring.add[ring.one][ring.mul]
    unit_mask = ring.is_unit[shifted]
    left_condition = unit_mask.all(axis=0)
    right_condition = unit_mask.all(axis=1)
    if not np.array_equal(left_condition, right_condition):
        raise RingConstructionError(f"{ring.name}: las caracterizaciones 1+rs y 1+sr del radical difieren")

    members = tuple(np.flatnonzero(left_condition).tolist())
    logger.debug(f"Radical de {ring.name}: |J| = {len(members)}")
    return Ideal(ring, members, "two-sided")


def quotient_ring(ring: RingTable, ideal: Ideal, symbol: str = "J") -> Tuple[RingTable, np.ndarray]:
    """
    Formar el anillo cociente R/I.

    Las clases se ordenan por su menor representante.

    Args:
        ring: Anillo ambiente
        ideal: Ideal bilátero propio
        symbol: Nombre del ideal usado en las etiquetas ('x+J')

    Returns:
        (cociente, proyección elemento -> clase)

    Raises:
        ArgumentError: Si el ideal no es bilátero o no es propio
    """
    if ideal.ring is not ring:
        raise ArgumentError("El ideal pertenece a otro anillo")
    if ideal.sided != "two-sided":
        raise ArgumentError("El cociente requiere un ideal bilátero")
    if not ideal.is_proper:
        raise ArgumentError("El cociente requiere un ideal propio (I != R)")

    members = np.asarray(ideal.members, dtype=np.int64)
    representative = ring.add[:, members].min(axis=1)
    reps, projection = np.unique(representative, return_inverse=True)
    projection = projection.astype(np.int64)

    add = projection[ring.add[np.ix_(reps, reps)]]
    mul = projection[ring.mul[np.ix_(reps, reps)]]
    labels = [f"{ring.labels[r]}+{symbol}" for r in reps]
    quotient = RingTable(add=add, mul=mul, zero=projection[ring.zero], one=projection[ring.one],
                         labels=labels, constructor="quotient")

    if ring.size <= HOMOMORPHISM_CHECK_LIMIT:
        if not np.array_equal(projection[ring.add], quotient.add[np.ix_(projection, projection)]):
            raise RingConstructionError("La proyección no respeta la suma")
        if not np.array_equal(projection[ring.mul], quotient.mul[np.ix_(projection, projection)]):
            raise RingConstructionError("La proyección no respeta el producto")

    projection.setflags(write=False)
    logger.debug(f"Cociente {ring.name}/{symbol}: {quotient.size} clases")
    return quotient, projection


def principal_left_ideals(ring: RingTable) -> List[Ideal]:
    """
    Ideales a izquierda principales R·x, sin repetir.

    Returns:
        Lista ordenada por tamaño y luego por miembros
    """
    seen = set()
    ideals = []
    for x in range(ring.size):
        members = tuple(np.unique(ring.mul[:, x]).tolist())
        if members in seen:
            continue
        seen.add(members)
        ideals.append(Ideal(ring, members, "left"))
    ideals.sort(key=lambda ideal: (ideal.size, ideal.members))
    return ideals


def ideal_product(ideal: Ideal, other: Ideal) -> Ideal:
    """
    Producto IJ: clausura aditiva de {ab : a en I, b en J}.
    """
    ring = ideal.ring
    mask = np.zeros(ring.size, dtype=bool)
    mask[ring.mul[np.ix_(list(ideal.members), list(other.members))].ravel()] = True
    while True:
        idx = np.flatnonzero(mask)
        grown = mask.copy()
        grown[ring.add[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, mask):
            break
        mask = grown
    sided = "two-sided" if ideal.sided == other.sided == "two-sided" else "left"
    return Ideal(ring, tuple(np.flatnonzero(mask).tolist()), sided)


def central_idempotents(ring: RingTable) -> List[int]:
    """Idempotentes centrales primitivos (no nulos) del anillo."""
    center = np.flatnonzero((ring.mul == ring.mul.T).all(axis=1))
    idempotents = [int(e) for e in center if ring.mul[e, e] == e and e != ring.zero]
    primitive = []
    for e in idempotents:
        # e es primitivo si ningún otro idempotente central f != e cumple fe = f
        if not any(f != e and ring.mul[f, e] == f for f in idempotents):
            primitive.append(e)
    return primitive


def semisimple_shape(ring: RingTable) -> List[Tuple[int, int]]:
    """
    Forma de un anillo semisimple como producto de M_n(F_q).

    Cada bloque eR tiene centro eZ(R) = F_q y tamaño q^{n^2}.

    Returns:
        Lista de pares (n, q), uno por bloque simple
    """
    center = np.flatnonzero((ring.mul == ring.mul.T).all(axis=1))
    shape = []
    for e in central_idempotents(ring):
        block = len(np.unique(ring.mul[e, :]))
        q = len(np.unique(ring.mul[e, center]))
        n = int(round(math.sqrt(math.log(block, q)))) if q > 1 else 0
        if q ** (n * n) != block:
            raise RingConstructionError(f"{ring.name}: el bloque de tamaño {block} no es un M_n(F_{q})")
        shape.append((n, q))
    return shape


def format_shape(shape: List[Tuple[int, int]]) -> str:
    """Forma legible: 'F2 x M2(F3)'."""
    parts = [f"F{q}" if n == 1 else f"M{n}(F{q})" for n, q in shape]
    return " x ".join(parts)


def ring_summary(ring: RingTable) -> Dict[str, Any]:
    """
    Resumen estructural de un anillo.

    Returns:
        Diccionario con tamaño, unidades, conmutatividad, tamaño del radical,
        forma semisimple de R/J y disponibilidad del mapa opuesto
    """
    radical = jacobson_radical(ring)
    if radical.is_zero:
        quotient = ring
    else:
        quotient, _ = quotient_ring(ring, radical)
    shape = semisimple_shape(quotient)
    return {
        'spec': ring.name,
        'size': ring.size,
        'units': int(len(ring.units)),
        'commutative': ring.is_commutative,
        'radical_size': radical.size,
        'quotient_shape': format_shape(shape),
        'is_field': ring.is_commutative and len(ring.units) == ring.size - 1,
        'opposite_map': opposite_iso(ring) is not None,
    }
