"""
Verificaciones de las cotas de Incidence-Salem a escala de escritorio.

Cada verificación devuelve un TheoremCheck con la magnitud observada, la cota
y la dirección de la desigualdad. Un TheoremCheck fallido es un defecto.
"""

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..harmonic.characters import (Character, character, character_values,
                                  matrix_witness_character)
from ..incidence.operator import (IncidenceOperator, build_incidence,
                                  character_ratio, count_incidences,
                                  trivial_character_ratio)
from ..incidence.spectral import norm_on_meanzero
from ..rings.ideals import (ideal_product, jacobson_radical, quotient_ring)
from ..rings.ring_table import RingTable, build_ring, element_index
from ..rings.spec import GF, Mat, Prod, RingSpec, field_spec
from ..utils.errors import ArgumentError, ScaleError
from ..utils.helpers import grid_coordinates, relative_deviation
from ..utils.logging import get_logger, log_check_result

logger = get_logger(__name__)

CHECK_TOLERANCE = 1e-6
RELATIVE_TOLERANCE = 1e-8
SQRT2 = math.sqrt(2.0)
PER_FACTOR_CONSTANT = math.sqrt(17) / 4
WITNESS_SET_LIMIT = 100_000
MATRIX_WITNESS_LIMIT = 10_000_000


@dataclass
class TheoremCheck:
    """
    Resultado de una verificación.

    Attributes:
        id: Nombre del enunciado verificado
        instance: Instancia (spec, d, t)
        claimed_bound: Cota enunciada
        observed: Valor observado
        direction: '<=' si se exige observed <= cota, '>=' si observed >= cota
        margin: Holgura con signo (positiva cuando se cumple)
        passed: Resultado
        details: Magnitudes auxiliares
    """

    id: str
    instance: str
    claimed_bound: float
    observed: float
    direction: str = "<="
    margin: float = 0.0
    passed: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def make_check(check_id: str, instance: str, observed: float, bound: float,
               direction: str = "<=", tolerance: float = CHECK_TOLERANCE,
               **details) -> TheoremCheck:
    """Construir un TheoremCheck y registrar el resultado."""
    if direction == "<=":
        margin = bound - observed
    elif direction == ">=":
        margin = observed - bound
    elif direction == "==":
        margin = -abs(observed - bound)
    else:
        raise ArgumentError(f"Dirección inválida: {direction}")
    passed = margin >= -tolerance and bool(details.pop('extra_ok', True))
    check = TheoremCheck(check_id, instance, float(bound), float(observed), direction,
                         float(margin), bool(passed), details)
    log_check_result(check)
    return check


def instance_name(ring: RingTable, d: int, t: Optional[int] = None) -> str:
    if t is None:
        return f"{ring.name} d={d}"
    return f"{ring.name} d={d} t={ring.labels[t]}"


@lru_cache(maxsize=32)
def cached_incidence(ring: RingTable, d: int, t: int) -> IncidenceOperator:
    """Operadores memorizados por (anillo, d, t)."""
    return build_incidence(ring, d, t)


def normalized(value: float, ring_size: int, d: int) -> float:
    """Dividir por |R|^{(d-1)/2}."""
    return value / ring_size ** ((d - 1) / 2)


def check_field_upper(q: int, d: int, t: str = "1", tol: float = 1e-10,
                      seed: int = 42) -> TheoremCheck:
    """
    Cota de cuerpos finitos: el número de Incidence-Salem es <= sqrt(2).
    """
    ring = build_ring(field_spec(q))
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    report = norm_on_meanzero(op, tol=tol, seed=seed)
    return make_check("finiteFieldsBound", instance_name(ring, d, t_index), report.salem, SQRT2, "<=",
                      method=report.method, norm_W=report.norm_W, converged=report.converged,
                      extra_ok=report.converged)


def unit_norms(ring: RingTable, d: int, tol: float = 1e-10, seed: int = 42,
               method: str = "auto") -> Dict[str, float]:
    """norm_W para cada unidad t, indexado por etiqueta."""
    norms = {}
    for t in ring.units:
        op = cached_incidence(ring, d, int(t))
        norms[ring.labels[t]] = norm_on_meanzero(op, tol=tol, method=method, seed=seed).norm_W
    return norms


def check_unit_independence(spec: RingSpec, d: int, tol: float = 1e-10,
                            seed: int = 42) -> TheoremCheck:
    """
    ||A_t|| no depende de la unidad t: desvío relativo máximo <= 1e-8.
    """
    ring = build_ring(spec)
    norms = unit_norms(ring, d, tol, seed)
    values = list(norms.values())
    deviation = max(relative_deviation(v, values[0]) for v in values)
    return make_check("allUnitsCreatedEqual", instance_name(ring, d), deviation, RELATIVE_TOLERANCE,
                      "<=", tolerance=0.0, norms=norms)


def check_incidence_count(spec: RingSpec, d: int, t: str = "1") -> TheoremCheck:
    """
    N(R): fórmula cerrada q^{2d-1} - q^{d-1} sobre cuerpos, >= |R|^{2d-1}/4 sobre matrices.
    """
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    count = count_incidences(op)
    m = ring.size
    if isinstance(spec, GF):
        expected = m ** (2 * d - 1) - m ** (d - 1)
        return make_check("N(R)", instance_name(ring, d, t_index), count, expected, "==", tolerance=0.0)
    if isinstance(spec, Mat):
        return make_check("N(R)", instance_name(ring, d, t_index), count, m ** (2 * d - 1) / 4, ">=",
                          tolerance=0.0)
    raise ArgumentError(f"N(R) solo tiene forma cerrada para cuerpos y matrices, no para {ring.name}")


def witness_set(ring: RingTable, d: int) -> Tuple[int, Optional[np.ndarray]]:
    """
    Conjunto S de la cota de matrices.

    S = {x : x_1 invertible y, para i >= 2, las filas de x_i' (x_i con
    fila_1(x_i) - fila_1(x_1) en la primera fila) están en el span de las
    filas 2..n de x_1}.

    Returns:
        (|S|, índices de S o None si |S| supera el límite de enumeración)
    """
    field_tables = ring.field
    n, q = ring.spec.n, field_tables.q
    entries = ring.coordinates.reshape(ring.size, n, n)
    row_weights = q ** np.arange(n, dtype=np.int64)

    def encode_rows(rows: np.ndarray) -> np.ndarray:
        return rows @ row_weights

    combos = grid_coordinates(q, n - 1).T if n > 1 else np.zeros((1, 0), dtype=np.int64)
    admissible = {}
    for u in ring.units:
        lower = entries[u, 1:, :]
        span = np.zeros((combos.shape[0], n), dtype=np.int64)
        for k in range(n - 1):
            span = field_tables.add[span, field_tables.mul[combos[:, k][:, None], lower[k][None, :]]]
        span_codes = encode_rows(span)

        shifted = entries.copy()
        shifted[:, 0, :] = field_tables.add[entries[:, 0, :], field_tables.neg[entries[u, 0, :]][None, :]]
        inside = np.isin(encode_rows(shifted), span_codes).all(axis=1)
        admissible[int(u)] = np.flatnonzero(inside)

    size = sum(len(c) ** (d - 1) for c in admissible.values())
    if size > WITNESS_SET_LIMIT:
        return size, None

    m = ring.size
    points = []
    for u, candidates in admissible.items():
        if len(candidates) == 0:
            continue
        grid = grid_coordinates(len(candidates), d - 1)
        index = np.full(grid.shape[1], u, dtype=np.int64)
        for i in range(d - 1):
            index += candidates[grid[i]] * m ** (i + 1)
        points.append(index)
    return size, np.sort(np.concatenate(points)) if points else np.zeros(0, dtype=np.int64)


def check_matrix_lower(n: int, q: int, d: int, t: str = "1") -> TheoremCheck:
    """
    Carácter testigo en M_n(F_q): cociente normalizado >= q^{(n^2-n)(d-1)/2} / 2.

    También verifica ||chi||_2 = q^{n^2 d/2} y |S| = |R^x| q^{(n^2-n)(d-1)}.
    """
    if n * n * d * math.log2(q) > math.log2(MATRIX_WITNESS_LIMIT):
        raise ScaleError("q^{n^2 d}", q ** (n * n * d), MATRIX_WITNESS_LIMIT)
    ring = build_ring(Mat(n, field_spec(q)))
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    chi = matrix_witness_character(ring, d)
    image_norm, chi_norm = character_ratio(op, chi)
    ratio = normalized(image_norm / chi_norm, ring.size, d)
    bound = 0.5 * q ** ((n * n - n) * (d - 1) / 2)

    expected_norm = q ** (n * n * d / 2)
    expected_s = len(ring.units) * q ** ((n * n - n) * (d - 1))
    s_size, s_points = witness_set(ring, d)
    details = {
        'chi_norm': chi_norm,
        'expected_chi_norm': expected_norm,
        'witness_set_size': s_size,
        'expected_witness_set_size': expected_s,
    }
    ok = abs(chi_norm - expected_norm) <= 1e-9 * expected_norm and s_size == expected_s
    if s_points is not None and len(s_points):
        values = character_values_on(op, chi, s_points)
        constant = q ** (n * n * (d - 1))
        details['witness_set_constant'] = float(np.abs(values).min())
        ok = ok and bool(np.allclose(np.abs(values), constant, rtol=1e-9))
    check_id = "matrixRings" if n >= 2 else "generalLower"
    return make_check(check_id, instance_name(ring, d, t_index), ratio, bound, ">=",
                      extra_ok=ok, **details)


def character_values_on(op: IncidenceOperator, chi: Character, points: np.ndarray) -> np.ndarray:
    """(A_t' chi)(x) en los puntos dados."""
    values = character_values(chi).values
    return op.matrix[points] @ values


def check_trivial_char(spec: RingSpec, d: int, t: str = "1") -> TheoremCheck:
    """
    Carácter trivial: ||A_t' chi_0|| / ||chi_0|| >= |R^x| |R|^{d-2}.
    """
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    observed = trivial_character_ratio(op)
    bound = len(ring.units) * ring.size ** (d - 2)
    details = {}
    if isinstance(spec, Mat):
        details['matrix_form_bound'] = ring.size ** (d - 1) / 4
    return make_check("trivialChar", instance_name(ring, d, t_index), observed, bound, ">=", **details)


def boolean_ratio(d: int) -> float:
    """2^{d/2 - 1} (2^d - 1)^{1/2}."""
    return 2 ** (d / 2 - 1) * math.sqrt(2 ** d - 1)


def check_boolean_exact(d: int) -> TheoremCheck:
    """Sobre F_2 el cociente del carácter trivial es exactamente 2^{d/2-1}(2^d-1)^{1/2}."""
    ring = build_ring(GF(2))
    op = cached_incidence(ring, d, ring.one)
    observed = trivial_character_ratio(op)
    expected = boolean_ratio(d)
    deviation = relative_deviation(observed, expected)
    return make_check("BooleanRings", instance_name(ring, d, ring.one), deviation, 1e-10, "<=",
                      tolerance=0.0, ratio=observed, expected=expected)


def odd_subset_count(k: int) -> int:
    """
    Cantidad de subconjuntos de cardinal impar de un conjunto de k elementos,
    por enumeración directa (k <= 20).

    Raises:
        ArgumentError: Si k < 1 o k > 20
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ArgumentError(f"k debe ser un entero >= 1, se obtuvo {k!r}")
    if k > 20:
        raise ArgumentError(f"La enumeración directa admite k <= 20, se obtuvo {k}")
    masks = np.arange(2 ** k, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(k)) & 1
    count = int(np.count_nonzero(bits.sum(axis=1) % 2))
    if count != 2 ** (k - 1):
        raise ArgumentError(f"Conteo de subconjuntos impares inconsistente: {count} != {2 ** (k - 1)}")
    return count


def _product_parts(spec: Prod) -> Tuple[RingTable, List[RingTable]]:
    ring = build_ring(spec)
    return ring, list(ring.factors)


def _combine(values: Sequence[int], factors: Sequence[RingTable]) -> int:
    index, radix = 0, 1
    for value, factor in zip(values, factors):
        index += int(value) * radix
        radix *= factor.size
    return index


def check_product_factorization(spec1: RingSpec, spec2: RingSpec, d: int,
                                t1: str = "1", t2: str = "1",
                                dual1: Optional[Sequence[int]] = None,
                                dual2: Optional[Sequence[int]] = None) -> TheoremCheck:
    """
    ||A_t' chi||_2 = ||A_{t1}' chi_1||_2 ||A_{t2}' chi_2||_2 sobre R_1 x R_2.
    """
    ring, (ring1, ring2) = _product_parts(Prod((spec1, spec2)))
    t1_index, t2_index = element_index(ring1, t1), element_index(ring2, t2)
    dual1 = tuple(dual1) if dual1 is not None else (ring1.zero,) * d
    dual2 = tuple(dual2) if dual2 is not None else (ring2.zero,) * d
    if len(dual1) != d or len(dual2) != d:
        raise ArgumentError("Los duales deben tener dimensión d")

    chi1, chi2 = character(ring1, dual1), character(ring2, dual2)
    norm1, _ = character_ratio(cached_incidence(ring1, d, t1_index), chi1)
    norm2, _ = character_ratio(cached_incidence(ring2, d, t2_index), chi2)

    t = _combine((t1_index, t2_index), (ring1, ring2))
    dual = tuple(_combine((a, b), (ring1, ring2)) for a, b in zip(dual1, dual2))
    chi = character(ring, dual)
    norm, _ = character_ratio(cached_incidence(ring, d, t), chi)

    product = norm1 * norm2
    deviation = relative_deviation(norm, product)
    in_w = character_values(chi).is_mean_zero()
    return make_check("Products", instance_name(ring, d, t), deviation, RELATIVE_TOLERANCE, "<=",
                      tolerance=0.0, direct=norm, factor_product=product, dual=list(dual),
                      in_W=in_w, extra_ok=in_w != chi.is_trivial)


def semisimple_factors(spec: RingSpec) -> List[RingSpec]:
    """Factores M_n(F_q) de un spec semisimple explícito."""
    factors = list(spec.factors) if isinstance(spec, Prod) else [spec]
    for factor in factors:
        if not isinstance(factor, (GF, Mat)):
            raise ArgumentError(f"{factor.canonical()} no es un anillo de matrices sobre un cuerpo")
    return factors


def field_witness(ring: RingTable, d: int) -> Character:
    """Carácter chi_F(x_1 + ... + x_d) con chi_F de dual 1 (caso n = 1)."""
    if ring.constructor == "mat":
        return matrix_witness_character(ring, d)
    return character(ring, (ring.one,) * d)


def semisimple_witness_ratio(spec: RingSpec, d: int, t: str = "1") -> Dict[str, Any]:
    """
    Testigo del caso semisimple: testigo en el primer factor y trivial en el
    resto. Devuelve el cociente normalizado directo y el producto de los
    cocientes normalizados de cada factor.
    """
    factor_specs = semisimple_factors(spec)
    ring = build_ring(spec)
    factors = list(ring.factors) if isinstance(spec, Prod) else [ring]
    t_index = element_index(ring, t)
    t_parts = (ring.coordinates[t_index] if isinstance(spec, Prod) else [t_index])

    per_factor = []
    duals = []
    for j, (factor, t_j) in enumerate(zip(factors, t_parts)):
        op_j = cached_incidence(factor, d, int(t_j))
        chi_j = field_witness(factor, d) if j == 0 else character(factor, (factor.zero,) * d)
        image, norm = character_ratio(op_j, chi_j)
        per_factor.append(normalized(image / norm, factor.size, d))
        duals.append(chi_j.dual)

    if isinstance(spec, Prod):
        dual = tuple(_combine([duals[j][i] for j in range(len(factors))], factors) for i in range(d))
    else:
        dual = duals[0]
    op = cached_incidence(ring, d, t_index)
    image, norm = character_ratio(op, character(ring, dual))
    return {
        'ring': ring,
        't': t_index,
        'direct': normalized(image / norm, ring.size, d),
        'product': float(np.prod(per_factor)),
        'per_factor': per_factor,
        'factor_specs': [f.canonical() for f in factor_specs],
    }


def check_semisimple_witness(spec: RingSpec, d: int, t: str = "1") -> TheoremCheck:
    """
    Cota inferior semisimple: existe chi con cociente normalizado >= 1/2.

    Además el cociente directo coincide con el producto por factores y cada
    factor trivial supera sqrt(17)/4.
    """
    data = semisimple_witness_ratio(spec, d, t)
    trailing = data['per_factor'][1:]
    agree = relative_deviation(data['direct'], data['product']) <= RELATIVE_TOLERANCE
    trailing_ok = all(value > PER_FACTOR_CONSTANT for value in trailing)
    return make_check("lowerBoundSemisimple", instance_name(data['ring'], d, data['t']),
                      data['direct'], 0.5, ">=", factor_product=data['product'],
                      per_factor=data['per_factor'], extra_ok=agree and trailing_ok)


def check_nakayama(spec: RingSpec) -> TheoremCheck:
    """
    Si J != 0 y R/J = F_q, entonces q divide a |J| y J/J^2 != 0.

    Raises:
        ArgumentError: Si J = 0 o R/J no es un cuerpo
    """
    ring = build_ring(spec)
    radical = jacobson_radical(ring)
    if radical.is_zero:
        raise ArgumentError(f"{ring.name} tiene radical trivial")
    quotient, _ = quotient_ring(ring, radical)
    if not (quotient.is_commutative and len(quotient.units) == quotient.size - 1):
        raise ArgumentError(f"{ring.name}/J no es un cuerpo")
    q = quotient.size
    square = ideal_product(radical, radical)
    remainder = radical.size % q
    return make_check("Nakayama", instance_name(ring, 1), remainder, 0, "==", tolerance=0.0,
                      radical_size=radical.size, q=q, square_size=square.size,
                      extra_ok=square.size < radical.size)


def check_radical_size(spec: RingSpec, d: int, t: str = "1", tol: float = 1e-10,
                       seed: int = 42) -> TheoremCheck:
    """|J| <= (2C)^{2/(d-1)} con C el número de Incidence-Salem medido."""
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    report = norm_on_meanzero(cached_incidence(ring, d, t_index), tol=tol, seed=seed)
    radical = jacobson_radical(ring)
    bound = (2 * report.salem) ** (2 / (d - 1))
    return make_check("radicalSize", instance_name(ring, d, t_index), radical.size, bound, "<=",
                      salem=report.salem)


def check_solver_agreement(spec: RingSpec, d: int, t: str = "1", tol: float = 1e-12,
                           seed: int = 42) -> TheoremCheck:
    """SVD densa e iteración de potencias coinciden en norm_W a 1e-8 relativo."""
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    dense = norm_on_meanzero(op, tol=tol, method="dense-svd")
    iterative = norm_on_meanzero(op, tol=tol, method="power-iteration", seed=seed)
    deviation = relative_deviation(iterative.norm_W, dense.norm_W)
    return make_check("solverAgreement", instance_name(ring, d, t_index), deviation,
                      RELATIVE_TOLERANCE, "<=", tolerance=0.0, dense=dense.norm_W,
                      power_iteration=iterative.norm_W, iterations=iterative.iterations,
                      extra_ok=iterative.converged)
