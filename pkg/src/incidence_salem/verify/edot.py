"""
Experimento E·E: si |E| supera el umbral de la cota de Incidence-Salem,
toda unidad t pertenece a E·E = {x·y : x, y en E}.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np

from ..incidence.operator import IncidenceOperator, count_incidences, indicator_count
from ..incidence.spectral import norm_on_meanzero
from ..rings.ideals import principal_left_ideals
from ..rings.ring_table import RingTable, build_ring, element_index, opposite_iso
from ..rings.spec import RingSpec
from ..utils.errors import ArgumentError, ScaleError
from ..utils.helpers import grid_coordinates
from ..utils.logging import get_logger
from .checks import TheoremCheck, cached_incidence, instance_name, make_check

logger = get_logger(__name__)

DEFAULT_TRIALS = 200
HALVING_TRIALS = 50
ORACLE_POINT_LIMIT = 100
ORACLE_SETS = 50
OBSTRUCTION_POINT_LIMIT = 1_000_000


@dataclass
class EdotEReport:
    """
    Resultado del experimento E·E.

    Attributes:
        spec, d, t_label: Instancia
        measured_salem: C medido sobre la misma instancia
        incidences: N(R)
        threshold: 2 C |R|^{(d-1)/2} |R|^{2d} / N(R)
        set_size: |E| usado en los ensayos
        trials, failures: Ensayos y ensayos con t fuera de E·E
        seed: Semilla
        vacuous: El umbral alcanza |R|^d
        corollary_threshold: Umbral del corolario (cuerpos o matrices), si aplica
        min_working_size: Menor |E| con todos los ensayos exitosos (por bisección)
    """

    spec: str
    d: int
    t_label: str
    measured_salem: float
    incidences: int
    threshold: float
    set_size: int
    trials: int
    failures: int
    seed: int
    vacuous: bool = False
    corollary_threshold: Optional[float] = None
    min_working_size: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['passed'] = self.passed
        return data


def edot_threshold(salem: float, ring_size: int, d: int, incidences: int) -> float:
    """2 C |R|^{(d-1)/2} |R|^{2d} / N(R)."""
    return 2 * salem * ring_size ** ((d - 1) / 2) * float(ring_size) ** (2 * d) / incidences


def corollary_threshold(ring: RingTable, d: int, salem: float) -> Optional[float]:
    """Umbral explícito para cuerpos y anillos de matrices."""
    m = ring.size
    if ring.constructor == "gf":
        return 2 * math.sqrt(2) / (1 - m ** (-d)) * m ** ((d + 1) / 2)
    if ring.constructor == "mat":
        return 8 * salem * m ** ((d + 1) / 2)
    return None


def contains_target(op: IncidenceOperator, members: np.ndarray) -> bool:
    """t en E·E: recorrer x en E y cortar en el primer y en E con y·x = t."""
    mask = np.zeros(op.points, dtype=bool)
    mask[members] = True
    for x in members:
        if mask[op.rows(int(x))].any():
            return True
    return False


def _failures(op: IncidenceOperator, size: int, trials: int, rng: np.random.Generator) -> int:
    failures = 0
    for _ in range(trials):
        members = rng.choice(op.points, size=size, replace=False)
        if not contains_target(op, members):
            failures += 1
    return failures


def working_set_size(threshold: float, points: int) -> Tuple[int, bool]:
    """
    Menor |E| estrictamente mayor que el umbral, acotado por |R|^d.

    Returns:
        Tuple[int, bool]: (tamaño, vacuo); vacuo si ningún E supera el umbral
    """
    vacuous = threshold >= points
    return min(max(math.floor(threshold) + 1, 1), points), vacuous


def edot_experiment(spec: RingSpec, d: int, t: str = "1", trials: int = DEFAULT_TRIALS,
                    seed: int = 42, tol: float = 1e-10) -> EdotEReport:
    """
    Muestrear conjuntos E al azar por encima del umbral y contar fallos.

    Args:
        spec: Anillo isomorfo a su opuesto
        d: Dimensión
        t: Etiqueta de la unidad objetivo
        trials: Cantidad de ensayos
        seed: Semilla del generador
        tol: Tolerancia del cálculo de C

    Returns:
        EdotEReport: failures debe ser 0 salvo umbral vacuo

    Raises:
        ArgumentError: Si el anillo no admite isomorfismo con su opuesto
    """
    if trials < 1:
        raise ArgumentError(f"trials debe ser positivo, se obtuvo {trials}")
    ring = build_ring(spec)
    if opposite_iso(ring) is None:
        raise ArgumentError(f"{ring.name} no tiene un isomorfismo con su anillo opuesto disponible")
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    salem = norm_on_meanzero(op, tol=tol, seed=seed).salem
    incidences = count_incidences(op)
    threshold = edot_threshold(salem, ring.size, d, incidences)

    set_size, vacuous = working_set_size(threshold, op.points)
    if vacuous:
        logger.warning(f"⚠️ Umbral vacuo para {instance_name(ring, d, t_index)}: "
                       f"{threshold:.3f} >= {op.points}")

    rng = np.random.default_rng(seed)
    failures = _failures(op, set_size, trials, rng)

    # bisección hacia abajo mientras todos los ensayos sigan funcionando
    working = set_size if failures == 0 else None
    size = set_size // 2
    while working is not None and size >= 1:
        if _failures(op, size, min(trials, HALVING_TRIALS), rng) > 0:
            break
        working = size
        size //= 2

    report = EdotEReport(ring.name, d, ring.labels[t_index], salem, incidences, threshold,
                         set_size, trials, failures, seed, vacuous,
                         corollary_threshold(ring, d, salem), working)
    if failures and not vacuous:
        logger.error(f"❌ E·E: {failures} fallos sobre {trials} ensayos con |E| = {set_size} "
                     f"> {threshold:.3f} en {report.spec}")
    else:
        logger.info(f"✅ E·E {report.spec} d={d}: {trials} ensayos con |E| = {set_size}, "
                    f"{failures} fallos")
    return report


def check_edot(spec: RingSpec, d: int, t: str = "1", trials: int = DEFAULT_TRIALS,
               seed: int = 42) -> TheoremCheck:
    """TheoremCheck con la cantidad de fallos del experimento E·E."""
    report = edot_experiment(spec, d, t, trials, seed)
    return make_check("EdotE", f"{report.spec} d={d} t={report.t_label}", report.failures, 0, "<=",
                      tolerance=0.0, set_size=report.set_size, threshold=report.threshold,
                      vacuous=report.vacuous)


def incidence_count_oracle(op: IncidenceOperator, points: Iterable[int]) -> int:
    """nu(t) = 1_E^T A 1_E por el operador disperso."""
    return indicator_count(op, points)


def brute_force_count(ring: RingTable, d: int, t: int, points: Iterable[int]) -> int:
    """nu(t) = #{(x, y) en E x E : y·x = t} por doble recorrido."""
    members = np.asarray(sorted(set(int(p) for p in points)), dtype=np.int64)
    coords = grid_coordinates(ring.size, d)[:, members]
    count = 0
    for a in range(len(members)):
        x = coords[:, a]
        for b in range(len(members)):
            y = coords[:, b]
            total = ring.zero
            for i in range(d):
                total = ring.add[total, ring.mul[y[i], x[i]]]
            if total == t:
                count += 1
    return count


def check_count_oracle(spec: RingSpec, d: int, t: str = "1", sets: int = ORACLE_SETS,
                       seed: int = 0) -> TheoremCheck:
    """
    El conteo por operador coincide con el doble recorrido en `sets` conjuntos aleatorios.

    Raises:
        ScaleError: Si |R|^d > 100
    """
    ring = build_ring(spec)
    points = ring.size ** d
    if points > ORACLE_POINT_LIMIT:
        raise ScaleError("|R|^d", points, ORACLE_POINT_LIMIT)
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(sets):
        size = int(rng.integers(1, points + 1))
        members = rng.choice(points, size=size, replace=False)
        if incidence_count_oracle(op, members) != brute_force_count(ring, d, t_index, members):
            mismatches += 1
    return make_check("nuOracle", instance_name(ring, d, t_index), mismatches, 0, "<=", tolerance=0.0,
                      sets=sets)


def ideal_obstruction(spec: RingSpec, d: int, t: str = "1") -> TheoremCheck:
    """
    E = I^d con I el mayor ideal izquierdo principal propio: t no está en E·E.

    Registra sin afirmarla la cota (2C/c)^{1/d} q^{1/2 + 1/(2d)} para |I|,
    leyendo q = |R| y c = N(R) / |R|^{2d-1}.

    Raises:
        ArgumentError: Si el anillo no tiene ideales propios no nulos
    """
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    proper = [ideal for ideal in principal_left_ideals(ring) if ideal.is_proper and not ideal.is_zero]
    if not proper:
        raise ArgumentError(f"{ring.name} no tiene ideales izquierdos principales propios no nulos")
    ideal = max(proper, key=lambda i: (i.size, i.members))
    if len(ideal.members) ** d > OBSTRUCTION_POINT_LIMIT:
        raise ScaleError("|I|^d", len(ideal.members) ** d, OBSTRUCTION_POINT_LIMIT)

    op = cached_incidence(ring, d, t_index)
    members = np.asarray(ideal.members, dtype=np.int64)
    grid = members[grid_coordinates(len(members), d)]
    points = (ring.size ** np.arange(d, dtype=np.int64)) @ grid
    nu = incidence_count_oracle(op, points)

    salem = norm_on_meanzero(op).salem
    c = count_incidences(op) / ring.size ** (2 * d - 1)
    bound = (2 * salem / c) ** (1 / d) * ring.size ** (0.5 + 1 / (2 * d))
    return make_check("idealBound", instance_name(ring, d, t_index), nu, 0, "<=", tolerance=0.0,
                      ideal_size=ideal.size, ideal_bound=bound)
