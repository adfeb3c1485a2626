"""
Operador de incidencia A_t de la relación y·x = t sobre R^d.

A_t'f(x) = sum_{y : y·x = t} f(y), con y·x = y_1x_1 + ... + y_dx_d y cada
sumando multiplicado con y a la izquierda. La matriz se guarda en formato CSR
(scipy.sparse) junto con su transpuesta, que realiza la relación con los
papeles invertidos.
"""

from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..harmonic.characters import Character, character_values
from ..harmonic.grid import GridFunction
from ..rings.ring_table import RingTable
from ..utils.errors import ArgumentError, ScaleError
from ..utils.helpers import grid_coordinates
from ..utils.logging import get_logger
from ..utils.validation import validate_dimension, validate_element

logger = get_logger(__name__)

MAX_POINTS = 10_000_000
MAX_INCIDENCES = 100_000_000
CHUNK_ENTRIES = 1 << 21
PARALLEL_MIN_POINTS = 1 << 12


@dataclass(frozen=True, eq=False)
class IncidenceOperator:
    """
    Matriz dispersa 0/1 de la relación y·x = t.

    Attributes:
        ring: Anillo base
        d: Dimensión (>= 2)
        t: Índice de la unidad t
        matrix: CSR N x N con matrix[x, y] = 1 sii y·x = t
        transpose: CSR de la transpuesta (fila y: los x con y·x = t)
        workers: Hilos para los productos matriz-vector
    """

    ring: RingTable
    d: int
    t: int
    matrix: sparse.csr_matrix
    transpose: sparse.csr_matrix
    workers: int = 1

    @property
    def points(self) -> int:
        return self.matrix.shape[0]

    @property
    def t_label(self) -> str:
        return self.ring.labels[self.t]

    def rows(self, x: int) -> np.ndarray:
        """Índices y con y·x = t, ordenados."""
        start, end = self.matrix.indptr[x], self.matrix.indptr[x + 1]
        return self.matrix.indices[start:end]

    def transpose_rows(self, y: int) -> np.ndarray:
        """Índices x con y·x = t, ordenados."""
        start, end = self.transpose.indptr[y], self.transpose.indptr[y + 1]
        return self.transpose.indices[start:end]

    def row_sizes(self) -> np.ndarray:
        return np.diff(self.matrix.indptr)

    def column_sizes(self) -> np.ndarray:
        return np.diff(self.transpose.indptr)

    def describe(self) -> str:
        return f"{self.ring.name}, d={self.d}, t={self.t_label}"

    @property
    def parallel(self) -> bool:
        return self.workers > 1 and self.points >= PARALLEL_MIN_POINTS

    @cached_property
    def _row_blocks(self) -> Tuple[Tuple[sparse.csr_matrix, ...], Tuple[sparse.csr_matrix, ...]]:
        bounds = np.linspace(0, self.points, self.workers + 1).astype(np.int64)
        spans = [(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        return (tuple(self.matrix[a:b] for a, b in spans),
                tuple(self.transpose[a:b] for a, b in spans))

    def matvec(self, values: np.ndarray, transpose: bool = False,
               executor: Optional[Executor] = None) -> np.ndarray:
        """
        A @ values (o A^T @ values); acepta un vector o un bloque de columnas.

        Con varios hilos cada uno calcula un bloque contiguo de filas y los
        resultados se concatenan en orden, así que el valor no depende de la
        cantidad de hilos.
        """
        if not self.parallel:
            return (self.transpose if transpose else self.matrix) @ values
        blocks = self._row_blocks[1 if transpose else 0]
        if executor is None:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                parts = list(pool.map(lambda block: block @ values, blocks))
        else:
            parts = list(executor.map(lambda block: block @ values, blocks))
        return np.concatenate(parts, axis=0)


def _unit_solve_chunk(ring: RingTable, d: int, t: int, xs: np.ndarray,
                      position: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Filas para puntos x cuya coordenada `position` es unidad.

    Las coordenadas libres y_j (j != position) recorren R^{d-1} y
    y_position = (t - sum_{j != position} y_j x_j) x_position^{-1}.
    """
    m = ring.size
    coords = grid_coordinates(m, d)
    free = grid_coordinates(m, d - 1)
    free_positions = [j for j in range(d) if j != position]

    s = np.full((len(xs), free.shape[1]), ring.zero, dtype=np.int64)
    y = np.zeros_like(s)
    for k, j in enumerate(free_positions):
        y_j = free[k][None, :]
        s = ring.add[s, ring.mul[y_j, coords[j, xs][:, None]]]
        y += y_j * m ** j
    rhs = ring.add[t, ring.neg[s]]
    y_pos = ring.mul[rhs, ring.inv[coords[position, xs]][:, None]]
    y += y_pos.astype(np.int64) * m ** position

    x_rows = np.repeat(xs, free.shape[1])
    return x_rows, y.ravel()


def _scan_chunk(ring: RingTable, d: int, t: int, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Filas para puntos x sin coordenadas unidad: recorrido completo de y."""
    m = ring.size
    coords = grid_coordinates(m, d)
    s = np.full((len(xs), m ** d), ring.zero, dtype=np.int64)
    for j in range(d):
        s = ring.add[s, ring.mul[coords[j][None, :], coords[j, xs][:, None]]]
    x_local, y = np.nonzero(s == t)
    return xs[x_local], y.astype(np.int64)


def _split(indices: np.ndarray, width: int) -> List[np.ndarray]:
    size = max(1, CHUNK_ENTRIES // max(width, 1))
    return [indices[i:i + size] for i in range(0, len(indices), size)]


def build_incidence(ring: RingTable, d: int, t: int, workers: Optional[int] = None) -> IncidenceOperator:
    """
    Construir A_t sobre R^d.

    Args:
        ring: Anillo base
        d: Dimensión (>= 2)
        t: Índice de una unidad
        workers: Hilos para construir bloques de filas y para los productos (None = uno)

    Returns:
        IncidenceOperator: Operador con la matriz y su transpuesta

    Raises:
        ArgumentError: Si t no es unidad o d < 2
        ScaleError: Si m^d > 10^7 o N(R) > 10^8
    """
    d = validate_dimension(d, minimum=2)
    t = validate_element(ring, t)
    if not ring.is_unit[t]:
        raise ArgumentError(f"t = {ring.labels[t]} no es una unidad de {ring.name}")

    m = ring.size
    points = m ** d
    if points > MAX_POINTS:
        raise ScaleError("m^d", points, MAX_POINTS)

    coords = grid_coordinates(m, d)
    unit_coords = ring.is_unit[coords]
    has_unit = unit_coords.any(axis=0)
    first_unit = np.where(has_unit, np.argmax(unit_coords, axis=0), -1)

    estimate = int(has_unit.sum()) * m ** (d - 1)
    if estimate > MAX_INCIDENCES:
        raise ScaleError("N(R)", estimate, MAX_INCIDENCES)

    tasks = []
    for position in range(d):
        xs = np.flatnonzero(first_unit == position)
        tasks.extend(("unit", chunk, position) for chunk in _split(xs, m ** (d - 1)))
    tasks.extend(("scan", chunk, -1) for chunk in _split(np.flatnonzero(~has_unit), points))

    def run(task):
        kind, xs, position = task
        if kind == "unit":
            return _unit_solve_chunk(ring, d, t, xs, position)
        return _scan_chunk(ring, d, t, xs)

    if workers and workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, tasks))
    else:
        results = [run(task) for task in tasks]

    total = sum(len(x_rows) for x_rows, _ in results)
    if total > MAX_INCIDENCES:
        raise ScaleError("N(R)", total, MAX_INCIDENCES)

    x_all = np.concatenate([x for x, _ in results]) if results else np.zeros(0, dtype=np.int64)
    y_all = np.concatenate([y for _, y in results]) if results else np.zeros(0, dtype=np.int64)
    matrix = sparse.csr_matrix(
        (np.ones(total, dtype=np.float64), (x_all, y_all)), shape=(points, points)
    )
    matrix.sort_indices()
    transpose = matrix.T.tocsr()
    transpose.sort_indices()

    logger.info(f"Operador de incidencia construido: {ring.name}, d={d}, t={ring.labels[t]}, "
                f"N(R)={matrix.nnz}")
    return IncidenceOperator(ring, d, t, matrix, transpose, max(1, workers or 1))


def _check_function(op: IncidenceOperator, f: GridFunction):
    if f.ring is not op.ring or f.d != op.d:
        raise ArgumentError(
            f"La función ({f.ring.name}^{f.d}) no corresponde al operador ({op.ring.name}^{op.d})"
        )


def apply(op: IncidenceOperator, f: GridFunction) -> GridFunction:
    """(A_t'f)(x) = sum_{y en rows[x]} f(y)."""
    _check_function(op, f)
    return GridFunction(op.ring, op.d, op.matvec(f.values))


def apply_transpose(op: IncidenceOperator, g: GridFunction) -> GridFunction:
    """Adjunto de apply: (A_t'^T g)(y) = sum_{x : y·x = t} g(x)."""
    _check_function(op, g)
    return GridFunction(op.ring, op.d, op.matvec(g.values, transpose=True))


def mean_zero_project(f: GridFunction) -> GridFunction:
    """Restar la media; el resultado queda certificado en W."""
    values = f.values - f.values.mean()
    return GridFunction(f.ring, f.d, values, mean_zero=True)


def count_incidences(op: IncidenceOperator) -> int:
    """N(R) = #{(x, y) : y·x = t}."""
    return int(op.matrix.nnz)


def indicator_count(op: IncidenceOperator, points: Iterable[int]) -> int:
    """nu(t) = #{(x, y) en E x E : y·x = t} = 1_E^T A 1_E."""
    mask = np.zeros(op.points, dtype=np.float64)
    mask[np.asarray(list(points), dtype=np.int64)] = 1.0
    return int(round(float(mask @ (op.matrix @ mask))))


def character_ratio(op: IncidenceOperator, chi: Character) -> Tuple[float, float]:
    """
    (||A_t' chi||_2, ||chi||_2) para un carácter materializado.
    """
    if chi.ring is not op.ring or chi.d != op.d:
        raise ArgumentError("El carácter no corresponde al operador")
    values = character_values(chi)
    return apply(op, values).norm(), values.norm()


def trivial_character_ratio(op: IncidenceOperator) -> float:
    """||A_t' 1||_2 / ||1||_2 en aritmética entera: sqrt(sum |rows[x]|^2) / m^{d/2}."""
    sizes = op.row_sizes().astype(np.int64)
    return float(np.sqrt(float(np.sum(sizes * sizes)) / op.points))
