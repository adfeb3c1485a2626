"""
Amplificación por el radical de Jacobson.

Para R con radical J no trivial y cociente Q = R/J, cada carácter no trivial
de Q^d se levanta a R^d y el cociente ||A_t chi|| / ||chi|| supera al del
cociente multiplicado por |J|^{d-1}.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from ..harmonic.characters import Character, character, character_values, pullback_character
from ..harmonic.pairing import build_pairing
from ..incidence.operator import IncidenceOperator, character_ratio
from ..rings.ideals import Ideal, jacobson_radical, quotient_ring
from ..rings.ring_table import RingTable, build_ring, element_index
from ..rings.spec import RingSpec
from ..utils.errors import ArgumentError
from ..utils.helpers import grid_coordinates
from ..utils.logging import get_logger
from .checks import TheoremCheck, cached_incidence, instance_name, make_check, normalized

logger = get_logger(__name__)

CHARACTER_SAMPLE = 16
LIFT_SAMPLES = 100
SLACK = 1e-8
KERNEL_ENUMERATION_LIMIT = 20_000_000


@dataclass
class JacobsonSetting:
    """Anillo, radical, cociente y operadores de ambos lados."""

    ring: RingTable
    radical: Ideal
    quotient: RingTable
    projection: np.ndarray
    d: int
    t: int
    op: IncidenceOperator
    quotient_op: IncidenceOperator

    def project_points(self) -> np.ndarray:
        """Índice en Q^d de la clase de cada punto de R^d."""
        coords = grid_coordinates(self.ring.size, self.d)
        weights = self.quotient.size ** np.arange(self.d, dtype=np.int64)
        return weights @ self.projection[coords]


def jacobson_setting(ring: RingTable, d: int, t: int) -> JacobsonSetting:
    """
    Preparar la instancia de amplificación.

    Raises:
        ArgumentError: Si el radical es trivial
    """
    radical = jacobson_radical(ring)
    if radical.is_zero:
        raise ArgumentError(
            f"{ring.name} tiene radical de Jacobson trivial; usar las verificaciones semisimples"
        )
    quotient, projection = quotient_ring(ring, radical)
    t_tilde = int(projection[t])
    return JacobsonSetting(ring, radical, quotient, projection, d, t,
                           cached_incidence(ring, d, t), cached_incidence(quotient, d, t_tilde))


def quotient_duals(quotient: RingTable, d: int, limit: int = CHARACTER_SAMPLE) -> List[tuple]:
    """Duales no triviales de Q^d; muestreo determinista por paso cuando son más de `limit`."""
    total = quotient.size ** d
    zero_point = sum(quotient.zero * quotient.size ** i for i in range(d))
    nontrivial = np.delete(np.arange(total, dtype=np.int64), zero_point)
    if len(nontrivial) > limit:
        nontrivial = nontrivial[::len(nontrivial) // limit][:limit]
    coords = grid_coordinates(quotient.size, d)
    return [tuple(int(c) for c in coords[:, i]) for i in nontrivial]


def amplification_pairs(setting: JacobsonSetting,
                        limit: int = CHARACTER_SAMPLE) -> List[Dict[str, Any]]:
    """Cocientes ||A chi|| / ||chi|| en R y en Q para cada carácter levantado."""
    pairing = build_pairing(setting.ring)
    pairs = []
    for dual in quotient_duals(setting.quotient, setting.d, limit):
        chi_tilde = character(setting.quotient, dual)
        chi = pullback_character(setting.projection, chi_tilde, pairing)
        image, norm = character_ratio(setting.op, chi)
        image_q, norm_q = character_ratio(setting.quotient_op, chi_tilde)
        pairs.append({
            'dual': list(dual),
            'chi': chi,
            'chi_tilde': chi_tilde,
            'ratio': image / norm,
            'quotient_ratio': image_q / norm_q,
        })
    return pairs


def kernel_sizes(setting: JacobsonSetting) -> np.ndarray:
    """
    |ker(p^d) ∩ ker(phi_x)| = #{r en J^d : r·x = 0} para cada x.
    """
    ring, d = setting.ring, setting.d
    members = np.asarray(setting.radical.members, dtype=np.int64)
    points = ring.size ** d
    if points * len(members) ** d > KERNEL_ENUMERATION_LIMIT:
        raise ArgumentError(f"Conteo de núcleos demasiado grande para {instance_name(ring, d)}")
    x = grid_coordinates(ring.size, d)
    r = members[grid_coordinates(len(members), d)]
    sizes = np.zeros(points, dtype=np.int64)
    chunk = max(1, KERNEL_ENUMERATION_LIMIT // (10 * r.shape[1]))
    for start in range(0, points, chunk):
        xs = x[:, start:start + chunk]
        total = np.full((xs.shape[1], r.shape[1]), ring.zero, dtype=np.int64)
        for i in range(d):
            total = ring.add[total, ring.mul[r[i][None, :], xs[i][:, None]]]
        sizes[start:start + chunk] = np.count_nonzero(total == ring.zero, axis=1)
    return sizes


def lift_solution(setting: JacobsonSetting, x: np.ndarray, y_tilde: np.ndarray) -> np.ndarray:
    """
    Levantar una solución del cociente: y = t (1 + t^{-1} s)^{-1} t^{-1} y'.

    y' es cualquier preimagen de y~ y s = y'·x - t está en J.
    """
    ring, t = setting.ring, setting.t
    y_prime = np.array([int(np.flatnonzero(setting.projection == c)[0]) for c in y_tilde])
    dot = ring.zero
    for yi, xi in zip(y_prime, x):
        dot = ring.add[dot, ring.mul[yi, xi]]
    s = ring.add[dot, ring.neg[t]]
    t_inv = ring.inv[t]
    u = ring.add[ring.one, ring.mul[t_inv, s]]
    if ring.inv[u] < 0:
        raise ArgumentError(f"1 + t^-1 s no es unidad en {ring.name}")
    factor = ring.mul[ring.mul[t, ring.inv[u]], t_inv]
    return ring.mul[factor, y_prime]


def _dot(ring: RingTable, y: np.ndarray, x: np.ndarray) -> int:
    total = ring.zero
    for yi, xi in zip(y, x):
        total = ring.add[total, ring.mul[yi, xi]]
    return int(total)


def check_lifts(setting: JacobsonSetting, samples: int = LIFT_SAMPLES, seed: int = 0) -> int:
    """Cantidad de levantamientos incorrectos sobre `samples` instancias aleatorias (x, y~)."""
    ring, quotient, d = setting.ring, setting.quotient, setting.d
    rng = np.random.default_rng(seed)
    admissible = np.flatnonzero(setting.op.row_sizes() > 0)
    projected = setting.project_points()
    failures = 0
    for _ in range(samples):
        x_index = int(rng.choice(admissible))
        x = grid_coordinates(ring.size, d)[:, x_index]
        solutions = setting.quotient_op.rows(int(projected[x_index]))
        if len(solutions) == 0:
            failures += 1
            continue
        y_tilde_index = int(rng.choice(solutions))
        y_tilde = grid_coordinates(quotient.size, d)[:, y_tilde_index]
        y = lift_solution(setting, x, y_tilde)
        if _dot(ring, y, x) != setting.t or not np.array_equal(setting.projection[y], y_tilde):
            failures += 1
    return failures


def check_jacobson_amplification(spec: RingSpec, d: int, t: str = "1",
                                 limit: int = CHARACTER_SAMPLE,
                                 lift_samples: int = LIFT_SAMPLES,
                                 seed: int = 0) -> TheoremCheck:
    """
    Verificar la amplificación por el radical en una instancia.

    Además de la desigualdad para cada carácter levantado se comprueban sobre
    la misma instancia:

    - la equivalencia de sobreyectividad rows[x] != {} sii rows_Q[x~] != {}
    - la cota de núcleos |ker(p^d) ∩ ker(phi_x)| >= |J|^{d-1}
    - la identidad exacta A_t chi(x) = |ker(p^d) ∩ ker(phi_x)| A_t~ chi~(x~)
    - el levantamiento constructivo de soluciones del cociente

    Args:
        spec: Anillo con radical no trivial
        d: Dimensión
        t: Etiqueta de la unidad
        limit: Máximo de caracteres del cociente a levantar
        lift_samples: Instancias aleatorias del levantamiento
        seed: Semilla del muestreo

    Returns:
        TheoremCheck: observed = min ratio_R / ratio_Q, cota |J|^{d-1}

    Raises:
        ArgumentError: Si el radical es trivial
    """
    ring = build_ring(spec)
    t_index = element_index(ring, t)
    setting = jacobson_setting(ring, d, t_index)
    amplification = setting.radical.size ** (d - 1)

    pairs = amplification_pairs(setting, limit)
    violations = [p['dual'] for p in pairs
                  if p['ratio'] < amplification * p['quotient_ratio'] - SLACK * max(1.0, p['ratio'])]
    quotients = [p['ratio'] / p['quotient_ratio'] for p in pairs if p['quotient_ratio'] > 0]
    observed = min(quotients) if quotients else float(amplification)

    projected = setting.project_points()
    surjective = setting.op.row_sizes() > 0
    surjective_q = setting.quotient_op.row_sizes()[projected] > 0
    surjectivity_ok = bool(np.array_equal(surjective, surjective_q))

    kernels = kernel_sizes(setting)
    kernel_ok = bool(np.all(kernels[surjective] >= amplification))

    fibre_errors = 0
    for pair in pairs:
        lifted = setting.op.matrix @ character_values(pair['chi']).values
        reduced = setting.quotient_op.matrix @ character_values(pair['chi_tilde']).values
        expected = kernels * reduced[projected]
        expected[~surjective] = 0
        fibre_errors += int(np.count_nonzero(~np.isclose(lifted, expected, rtol=1e-9, atol=1e-9)))

    lift_failures = check_lifts(setting, lift_samples, seed)

    return make_check(
        "JacobsonBound", instance_name(ring, d, t_index), observed, amplification, ">=",
        tolerance=SLACK * amplification,
        radical_size=setting.radical.size, quotient_size=setting.quotient.size,
        characters=len(pairs), violations=violations,
        surjectivity_equivalence=surjectivity_ok,
        min_kernel=int(kernels[surjective].min()) if surjective.any() else 0,
        fibre_mismatches=fibre_errors, lift_failures=lift_failures,
        extra_ok=not violations and surjectivity_ok and kernel_ok
        and fibre_errors == 0 and lift_failures == 0,
    )


def jacobson_witness_bound(ring: RingTable, d: int, t: int,
                           limit: int = CHARACTER_SAMPLE) -> Optional[float]:
    """
    Mejor cociente normalizado entre los caracteres levantados del cociente.

    Cota inferior del número de Incidence-Salem; None si el radical es trivial.
    """
    if jacobson_radical(ring).is_zero:
        return None
    setting = jacobson_setting(ring, d, t)
    pairs = amplification_pairs(setting, limit)
    if not pairs:
        return None
    return max(normalized(p['ratio'], ring.size, d) for p in pairs)


def witness_characters(ring: RingTable, d: int, limit: int = CHARACTER_SAMPLE) -> List[Character]:
    """Caracteres no triviales de R^d muestreados por paso (fallback del escaneo)."""
    return [character(ring, dual) for dual in quotient_duals(ring, d, limit)]
