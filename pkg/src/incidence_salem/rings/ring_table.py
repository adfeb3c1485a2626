"""
Materialización de anillos finitos como tablas de índices.

Cada anillo se representa por sus tablas de suma y producto (arreglos m x m de
numpy de solo lectura), el cero, el uno, el conjunto de unidades y etiquetas
legibles para cada elemento. El orden de los elementos es determinista:

- zmod(n): residuos 0..n-1
- gf(p,k): vectores de coeficientes little-endian, índice sum(c_i p^i)
- mat(n,F): tuplas de entradas por filas, la entrada (0,0) es la más significativa
- prod(...): mixed-radix sobre los factores, el de la izquierda es el menos significativo
- trunc(F,k): coeficientes de 1, e, ..., e^{k-1}, índice sum(c_i q^i)
"""

from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import ArgumentError, RingConstructionError, ScaleError
from ..utils.logging import get_logger
from .galois import GaloisField, galois_field
from .spec import GF, Mat, Prod, RingSpec, Trunc, ZMod

logger = get_logger(__name__)

MAX_RING_SIZE = 4096
EXHAUSTIVE_AXIOM_LIMIT = 64
RANDOM_AXIOM_TRIPLES = 100_000
OPPOSITE_CHECK_LIMIT = 256


class RingTable:
    """
    Aritmética materializada de un anillo finito.

    Attributes:
        spec: RingSpec de origen (None para anillos derivados, como cocientes)
        constructor: 'zmod', 'gf', 'mat', 'prod', 'trunc' o 'quotient'
        size: Cantidad de elementos m
        add, mul: Tablas m x m de índices
        neg: Opuesto aditivo de cada elemento
        zero, one: Índices del cero y del uno
        units: Índices de las unidades, ordenados
        inv: Inverso de cada unidad (-1 para las no unidades)
        is_unit: Máscara booleana de unidades
        labels: Nombre legible de cada elemento
        field: Tablas del cuerpo base (gf, mat, trunc)
        coordinates: Coordenadas de cada elemento sobre el cuerpo base o los factores
        factors: Anillos factores (prod)
    """

    def __init__(self, add: np.ndarray, mul: np.ndarray, zero: int, one: int,
                 labels: Sequence[str], spec: Optional[RingSpec] = None,
                 constructor: Optional[str] = None, verify: bool = True,
                 field: Optional[GaloisField] = None,
                 coordinates: Optional[np.ndarray] = None,
                 factors: Tuple["RingTable", ...] = ()):
        self.spec = spec
        self.constructor = constructor or (spec.constructor if spec is not None else "derived")
        self.size = int(add.shape[0])
        self.add = np.ascontiguousarray(add, dtype=np.int32)
        self.mul = np.ascontiguousarray(mul, dtype=np.int32)
        self.zero = int(zero)
        self.one = int(one)
        self.labels = tuple(labels)
        self.field = field
        self.coordinates = coordinates
        self.factors = tuple(factors)

        if self.add.shape != (self.size, self.size) or self.mul.shape != (self.size, self.size):
            raise RingConstructionError("Las tablas de suma y producto deben ser m x m")
        if len(self.labels) != self.size:
            raise RingConstructionError("Debe haber una etiqueta por elemento")
        if self.one == self.zero:
            raise RingConstructionError("El anillo debe cumplir 1 != 0")

        self.neg = np.argmax(self.add == self.zero, axis=1).astype(np.int32)

        # u es unidad si existe v con uv = vu = 1
        right = self.mul == self.one
        both = right & right.T
        self.is_unit = both.any(axis=1)
        self.units = np.flatnonzero(self.is_unit).astype(np.int32)
        self.inv = np.where(self.is_unit, np.argmax(both, axis=1), -1).astype(np.int32)

        if verify:
            check_ring_axioms(self)

        for table in (self.add, self.mul, self.neg, self.is_unit, self.units, self.inv):
            table.setflags(write=False)
        self._label_lookup: Optional[Dict[str, int]] = None

    @property
    def name(self) -> str:
        """Nombre del anillo para reportes."""
        if self.spec is not None:
            return self.spec.canonical()
        return f"{self.constructor}[{self.size}]"

    @property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def label(self, index: int) -> str:
        """Etiqueta legible del elemento."""
        return self.labels[int(index)]

    def __repr__(self) -> str:
        return f"RingTable({self.name}, m={self.size}, unidades={len(self.units)})"


def check_ring_axioms(ring: RingTable, seed: int = 0):
    """
    Verificar los axiomas de anillo unitario sobre las tablas.

    Exhaustivo para m <= 64; por encima, 10^5 ternas aleatorias con semilla fija.

    Raises:
        RingConstructionError: Si algún axioma falla
    """
    m = ring.size
    add, mul = ring.add, ring.mul
    idx = np.arange(m)
    errors = []

    if not np.array_equal(add, add.T):
        errors.append("la suma no es conmutativa")
    if not np.array_equal(add[ring.zero], idx):
        errors.append("el cero no es neutro de la suma")
    if not np.all(add[idx, ring.neg] == ring.zero):
        errors.append("faltan opuestos aditivos")
    if not (np.array_equal(mul[ring.one], idx) and np.array_equal(mul[:, ring.one], idx)):
        errors.append("el uno no es neutro del producto")

    if m <= EXHAUSTIVE_AXIOM_LIMIT:
        a = idx[:, None, None]
        b = idx[None, :, None]
        c = idx[None, None, :]
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, m, size=(3, RANDOM_AXIOM_TRIPLES))

    if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
        errors.append("la suma no es asociativa")
    if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
        errors.append("el producto no es asociativo")
    if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
        errors.append("falla la distributividad a izquierda")
    if not np.array_equal(mul[add[a, b], c], add[mul[a, c], mul[b, c]]):
        errors.append("falla la distributividad a derecha")

    if errors:
        raise RingConstructionError(f"{ring.name}: " + "; ".join(errors))
    logger.debug(f"Axiomas verificados para {ring.name}")


def _coordinate_tables(coords: np.ndarray, weights: np.ndarray,
                       add_table: np.ndarray) -> np.ndarray:
    """Suma coordenada a coordenada, codificada con los pesos dados."""
    m = coords.shape[0]
    result = np.zeros((m, m), dtype=np.int64)
    for j, weight in enumerate(weights):
        result += add_table[coords[:, None, j], coords[None, :, j]].astype(np.int64) * int(weight)
    return result


def _build_zmod(spec: ZMod) -> RingTable:
    n = spec.n
    idx = np.arange(n, dtype=np.int64)
    return RingTable(
        add=np.add.outer(idx, idx) % n,
        mul=np.multiply.outer(idx, idx) % n,
        zero=0, one=1, labels=[str(i) for i in range(n)], spec=spec,
        coordinates=idx[:, None],
    )


def _build_gf(spec: GF) -> RingTable:
    field = galois_field(spec.p, spec.k, spec.modulus)
    ring = RingTable(
        add=field.add, mul=field.mul, zero=0, one=1, labels=field.labels, spec=spec,
        field=field, coordinates=np.arange(field.q, dtype=np.int64)[:, None],
    )
    if len(ring.units) != field.q - 1:
        raise RingConstructionError(f"{spec.canonical()} no resultó un cuerpo")
    return ring


def _build_mat(spec: Mat) -> RingTable:
    base = spec.base
    field = galois_field(base.p, base.k, base.modulus)
    n, q = spec.n, field.q
    n2 = n * n
    m = spec.size
    weights = q ** np.arange(n2 - 1, -1, -1, dtype=np.int64)
    indices = np.arange(m, dtype=np.int64)
    entries = np.stack([(indices // w) % q for w in weights], axis=1)

    add = _coordinate_tables(entries, weights, field.add)
    mul = np.zeros((m, m), dtype=np.int64)
    for r in range(n):
        for c in range(n):
            acc = np.zeros((m, m), dtype=np.int64)
            for s in range(n):
                acc = field.add[acc, field.mul[entries[:, None, r * n + s], entries[None, :, s * n + c]]]
            mul += acc * weights[r * n + c]

    identity = np.zeros(n2, dtype=np.int64)
    identity[[i * n + i for i in range(n)]] = 1
    one = int(identity @ weights)

    labels = []
    for e in entries:
        rows = [",".join(field.labels[e[r * n + c]] for c in range(n)) for r in range(n)]
        labels.append("[" + ",".join(f"[{row}]" for row in rows) + "]")

    ring = RingTable(add=add, mul=mul, zero=0, one=one, labels=labels, spec=spec,
                     field=field, coordinates=entries)
    # |GL_n(F_q)| >= |M_n(F_q)| / 4
    if 4 * len(ring.units) < m:
        raise RingConstructionError(f"{spec.canonical()}: muy pocas unidades ({len(ring.units)} de {m})")
    return ring


def _trunc_label(coefficients: np.ndarray, field: GaloisField) -> str:
    terms = []
    for power in range(len(coefficients) - 1, -1, -1):
        c = int(coefficients[power])
        if c == 0:
            continue
        text = field.labels[c]
        if power == 0:
            terms.append(text)
            continue
        monomial = "e" if power == 1 else f"e^{power}"
        if c == 1:
            terms.append(monomial)
        elif "+" in text:
            terms.append(f"({text}){monomial}")
        else:
            terms.append(f"{text}{monomial}")
    return "+".join(terms) if terms else "0"


def _build_trunc(spec: Trunc) -> RingTable:
    base = spec.base
    field = galois_field(base.p, base.k, base.modulus)
    q, k = field.q, spec.k
    m = spec.size
    weights = q ** np.arange(k, dtype=np.int64)
    indices = np.arange(m, dtype=np.int64)
    coeffs = np.stack([(indices // w) % q for w in weights], axis=1)

    add = _coordinate_tables(coeffs, weights, field.add)
    mul = np.zeros((m, m), dtype=np.int64)
    for degree in range(k):
        acc = np.zeros((m, m), dtype=np.int64)
        for i in range(degree + 1):
            acc = field.add[acc, field.mul[coeffs[:, None, i], coeffs[None, :, degree - i]]]
        mul += acc * weights[degree]

    labels = [_trunc_label(c, field) for c in coeffs]
    return RingTable(add=add, mul=mul, zero=0, one=1, labels=labels, spec=spec,
                     field=field, coordinates=coeffs)


def _build_prod(spec: Prod) -> RingTable:
    factors = tuple(build_ring(f) for f in spec.factors)
    sizes = [f.size for f in factors]
    radix = np.cumprod([1] + sizes[:-1]).astype(np.int64)
    m = spec.size
    indices = np.arange(m, dtype=np.int64)
    digits = np.stack([(indices // r) % s for r, s in zip(radix, sizes)], axis=1)

    add = np.zeros((m, m), dtype=np.int64)
    mul = np.zeros((m, m), dtype=np.int64)
    for j, factor in enumerate(factors):
        left, right = digits[:, None, j], digits[None, :, j]
        add += factor.add[left, right].astype(np.int64) * radix[j]
        mul += factor.mul[left, right].astype(np.int64) * radix[j]

    one = int(sum(f.one * r for f, r in zip(factors, radix)))
    labels = ["(" + ",".join(f.labels[d] for f, d in zip(factors, row)) + ")" for row in digits]
    ring = RingTable(add=add, mul=mul, zero=0, one=one, labels=labels, spec=spec,
                     coordinates=digits, factors=factors)

    expected_units = int(np.prod([len(f.units) for f in factors]))
    if len(ring.units) != expected_units:
        raise RingConstructionError(
            f"{spec.canonical()}: {len(ring.units)} unidades, se esperaban {expected_units}"
        )
    return ring


_BUILDERS = {
    ZMod: _build_zmod,
    GF: _build_gf,
    Mat: _build_mat,
    Trunc: _build_trunc,
    Prod: _build_prod,
}


@lru_cache(maxsize=64)
def build_ring(spec: RingSpec) -> RingTable:
    """
    Materializar un anillo a partir de su spec.

    Args:
        spec: Descripción simbólica del anillo

    Returns:
        RingTable: Anillo con tablas verificadas (inmutable, compartible entre hilos)

    Raises:
        ScaleError: Si |R| > 4096
        RingConstructionError: Si el módulo es reducible o falla algún axioma
    """
    builder = _BUILDERS.get(type(spec))
    if builder is None:
        raise RingConstructionError(f"Constructor no soportado: {spec!r}")
    if spec.size > MAX_RING_SIZE:
        raise ScaleError("|R|", spec.size, MAX_RING_SIZE)

    ring = builder(spec)
    if ring.size != spec.size:
        raise RingConstructionError(
            f"{spec.canonical()}: se materializaron {ring.size} elementos, se esperaban {spec.size}"
        )
    logger.info(f"Anillo construido: {spec.canonical()} (m={ring.size}, unidades={len(ring.units)})")
    return ring


def element_index(ring: RingTable, label: str) -> int:
    """
    Resolver una etiqueta legible al índice del elemento.

    La etiqueta "1" siempre designa la identidad del anillo y "0" el cero.

    Raises:
        ArgumentError: Si la etiqueta no corresponde a ningún elemento
    """
    text = "".join(str(label).split())
    if text == "1":
        return ring.one
    if text == "0":
        return ring.zero
    if ring._label_lookup is None:
        ring._label_lookup = {"".join(l.split()): i for i, l in enumerate(ring.labels)}
    if text not in ring._label_lookup:
        raise ArgumentError(f"'{label}' no es un elemento de {ring.name}")
    return ring._label_lookup[text]


def opposite_iso(ring: RingTable) -> Optional[np.ndarray]:
    """
    Isomorfismo phi: R -> R^op, es decir phi(xy) = phi(y)phi(x).

    Transposición para matrices, identidad para anillos conmutativos y
    componente a componente para productos.

    Returns:
        Arreglo de índices con la permutación, o None si no hay un mapa disponible
    """
    phi: Optional[np.ndarray] = None
    if ring.constructor == "mat":
        n = ring.spec.n
        q = ring.field.q
        entries = ring.coordinates.reshape(ring.size, n, n).transpose(0, 2, 1).reshape(ring.size, n * n)
        weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        phi = entries @ weights
    elif ring.is_commutative:
        phi = np.arange(ring.size, dtype=np.int64)
    elif ring.constructor == "prod":
        maps = [opposite_iso(f) for f in ring.factors]
        if any(m is None for m in maps):
            return None
        radix = np.cumprod([1] + [f.size for f in ring.factors[:-1]]).astype(np.int64)
        phi = sum(mp[ring.coordinates[:, j]] * radix[j] for j, mp in enumerate(maps))

    if phi is None:
        return None

    phi = np.asarray(phi, dtype=np.int64)
    if ring.size <= OPPOSITE_CHECK_LIMIT:
        if not np.array_equal(phi[ring.mul], ring.mul[np.ix_(phi, phi)].T):
            raise RingConstructionError(f"{ring.name}: el mapa opuesto no invierte el producto")
        if not np.array_equal(phi[ring.add], ring.add[np.ix_(phi, phi)]):
            raise RingConstructionError(f"{ring.name}: el mapa opuesto no es aditivo")
    phi.setflags(write=False)
    return phi
