"""
Escaneo del número de Incidence-Salem sobre familias de anillos.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..incidence.operator import character_ratio
from ..incidence.spectral import norm_on_meanzero
from ..rings.ideals import ring_summary
from ..rings.ring_table import build_ring
from ..rings.spec import RingSpec, field_spec
from ..utils.errors import IncidenceSalemError
from ..utils.helpers import prime_power
from ..utils.logging import get_logger
from .checks import cached_incidence, normalized, semisimple_factors, semisimple_witness_ratio
from .jacobson import jacobson_witness_bound, witness_characters

logger = get_logger(__name__)

SCAN_COLUMNS = [
    'spec', 'size', 'radical_size', 'quotient_shape', 'd', 't_label', 'salem', 'norm_W',
    'method', 'residual', 'converged', 'lower_bound', 'exceeds_field_bound', 'error',
]
FIELD_BOUND = math.sqrt(2)


def lower_bound(spec: RingSpec, d: int, t: int) -> Optional[float]:
    """
    Mejor cociente testigo normalizado para la fila.

    Levantamientos del cociente cuando J != 0, el testigo semisimple cuando el
    spec es un producto de anillos de matrices y, en otro caso, el mejor de una
    muestra de caracteres no triviales.
    """
    ring = build_ring(spec)
    bound = jacobson_witness_bound(ring, d, t)
    if bound is not None:
        return bound
    try:
        semisimple_factors(spec)
    except IncidenceSalemError:
        op = cached_incidence(ring, d, t)
        ratios = [image / norm for image, norm in
                  (character_ratio(op, chi) for chi in witness_characters(ring, d))]
        return normalized(max(ratios), ring.size, d) if ratios else None
    return semisimple_witness_ratio(spec, d, ring.labels[t])['direct']


def scan_row(spec: RingSpec, d: int, tol: float = 1e-10, seed: int = 42) -> Dict[str, Any]:
    """
    Una fila del escaneo con t = 1 como representante de la órbita de unidades.

    Los errores de la instancia quedan registrados en la columna 'error'.
    """
    row: Dict[str, Any] = {column: None for column in SCAN_COLUMNS}
    row.update({'spec': spec.canonical(), 'size': spec.size, 'd': d, 't_label': "1"})
    try:
        ring = build_ring(spec)
        summary = ring_summary(ring)
        row.update({
            'radical_size': summary['radical_size'],
            'quotient_shape': summary['quotient_shape'],
        })
        report = norm_on_meanzero(cached_incidence(ring, d, ring.one), tol=tol, seed=seed)
        row.update({
            'salem': report.salem,
            'norm_W': report.norm_W,
            'method': report.method,
            'residual': report.residual,
            'converged': report.converged,
            'lower_bound': lower_bound(spec, d, ring.one),
            'exceeds_field_bound': report.salem > FIELD_BOUND + 1e-6,
        })
    except IncidenceSalemError as e:
        logger.error(f"❌ Escaneo de {spec.canonical()} d={d}: {e}")
        row['error'] = str(e)
    return row


def scan_salem(family: Sequence[RingSpec], d: int, tol: float = 1e-10, seed: int = 42,
               workers: Optional[int] = None) -> pd.DataFrame:
    """
    Calcular el número de Incidence-Salem de cada anillo de la familia.

    Args:
        family: Specs de anillos
        d: Dimensión
        tol: Tolerancia del cálculo espectral
        seed: Semilla de la iteración de potencias
        workers: Hilos para las filas (None = paralelismo disponible)

    Returns:
        pd.DataFrame: Una fila por anillo, ordenada por tamaño y spec
    """
    unique = list(dict.fromkeys(family))
    logger.info(f"Escaneando {len(unique)} anillo(s) en dimensión {d}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda spec: scan_row(spec, d, tol, seed), unique))

    table = pd.DataFrame(rows, columns=SCAN_COLUMNS)
    table = table.sort_values(['size', 'spec'], kind='mergesort').reset_index(drop=True)
    failed = int(table['error'].notna().sum())
    if failed:
        logger.warning(f"⚠️ {failed} fila(s) del escaneo con error")
    exceeding = table.loc[table['exceeds_field_bound'] == True, 'spec'].tolist()  # noqa: E712
    if exceeding:
        logger.info(f"Anillos por encima de sqrt(2): {', '.join(exceeding)}")
    return table


def field_family(max_q: int = 9) -> List[RingSpec]:
    """gf(q) para toda potencia de primo q <= max_q."""
    return [field_spec(q) for q in range(2, max_q + 1) if prime_power(q) is not None]


def scan_summary(table: pd.DataFrame) -> Dict[str, Any]:
    """Resumen numérico de la tabla de escaneo."""
    ok = table[table['error'].isna()]
    return {
        'rows': int(len(table)),
        'errors': int(len(table) - len(ok)),
        'max_salem': float(ok['salem'].max()) if len(ok) else float('nan'),
        'min_salem': float(ok['salem'].min()) if len(ok) else float('nan'),
        'not_converged': int((ok['converged'] == False).sum()),  # noqa: E712
        'median_residual': float(np.median(ok['residual'])) if len(ok) else float('nan'),
    }
