"""
Normas de operador de A_t: sobre todas las funciones (V) y sobre las de
media cero (W), y el número de Incidence-Salem.

La norma sobre W se realiza como la norma de A_t'∘P con P el proyector de
media cero. Hasta m^d = 512 se usa SVD densa; por encima, iteración de
potencias sobre P A^T A P con varios arranques aleatorios con semilla.
"""

from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..utils.errors import ArgumentError
from ..utils.logging import get_logger, log_solver_event
from ..utils.validation import validate_tolerance
from .operator import IncidenceOperator

logger = get_logger(__name__)

DENSE_LIMIT = 512
MAX_ITERATIONS = 100_000
RESTARTS = 8
METHODS = ("auto", "dense-svd", "power-iteration")


@dataclass
class SpectralReport:
    """
    Resultado de un cálculo espectral.

    Attributes:
        spec: Spec canónico del anillo
        d: Dimensión
        t_label: Etiqueta de t
        norm_W: ||A_t|| sobre funciones de media cero (None si no se calculó)
        norm_V: ||A_t'|| sobre todas las funciones (None si no se calculó)
        salem: norm_W / |R|^{(d-1)/2}
        method: 'dense-svd' o 'power-iteration'
        iterations, residual, tolerance, converged: Diagnóstico del resolvedor
    """

    spec: str
    d: int
    t_label: str
    norm_W: Optional[float] = None
    norm_V: Optional[float] = None
    salem: Optional[float] = None
    method: str = "dense-svd"
    iterations: int = 0
    residual: float = 0.0
    tolerance: float = 1e-10
    converged: bool = True
    incidences: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        extra = data.pop('extra')
        data.update(extra)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpectralReport":
        known = {k: data[k] for k in cls.__dataclass_fields__ if k in data and k != 'extra'}
        extra = {k: v for k, v in data.items() if k not in cls.__dataclass_fields__}
        return cls(**known, extra=extra)


def _resolve_method(op: IncidenceOperator, method: str) -> str:
    if method not in METHODS:
        raise ArgumentError(f"Método desconocido: {method} (opciones: {', '.join(METHODS)})")
    if method == "auto":
        return "dense-svd" if op.points <= DENSE_LIMIT else "power-iteration"
    return method


def _dense_norm(op: IncidenceOperator, project: bool) -> float:
    dense = op.matrix.toarray()
    if project:
        dense = dense - dense.mean(axis=1, keepdims=True)
    return float(np.linalg.svd(dense, compute_uv=False)[0])


def power_iteration(op: IncidenceOperator, project: bool, tol: float,
                    seed: int = 42, restarts: int = RESTARTS,
                    max_iterations: int = MAX_ITERATIONS) -> Tuple[float, int, float, bool]:
    """
    Mayor valor singular de A (o de A∘P) por iteración de potencias sobre A^T A.

    Los `restarts` vectores iniciales se iteran en bloque, sin ortogonalizar,
    y se toma el máximo cociente de Rayleigh. Se detiene cuando el cambio
    relativo del cociente y la estimación geométrica de la cola son < tol.
    Los productos se reparten entre op.workers hilos (ver IncidenceOperator.matvec).

    Returns:
        (norma, iteraciones, residuo relativo, convergió)
    """
    executor = ThreadPoolExecutor(max_workers=op.workers) if op.parallel else None
    try:
        return _power_iteration(op, project, tol, seed, restarts, max_iterations, executor)
    finally:
        if executor is not None:
            executor.shutdown()


def _power_iteration(op: IncidenceOperator, project: bool, tol: float, seed: int, restarts: int,
                     max_iterations: int, executor: Optional[Executor]) -> Tuple[float, int, float, bool]:
    def forward(v: np.ndarray) -> np.ndarray:
        return op.matvec(v, executor=executor)

    def backward(v: np.ndarray) -> np.ndarray:
        return op.matvec(v, transpose=True, executor=executor)

    rng = np.random.default_rng(seed)
    block = rng.standard_normal((op.points, restarts))

    def project_block(v: np.ndarray) -> np.ndarray:
        return v - v.mean(axis=0, keepdims=True) if project else v

    block = project_block(block)
    block /= np.linalg.norm(block, axis=0, keepdims=True)

    history = []
    rayleigh = 0.0
    converged = False
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        image = forward(block)
        rayleigh = float(np.sum(image * image, axis=0).max())
        block = project_block(backward(image))
        norms = np.linalg.norm(block, axis=0, keepdims=True)
        norms[norms == 0] = 1.0
        block /= norms

        if rayleigh == 0.0:
            converged = True
            break
        history = (history + [rayleigh])[-3:]
        if len(history) < 3:
            continue
        delta = abs(history[2] - history[1]) / history[2]
        previous_delta = abs(history[1] - history[0]) / history[1]
        if delta < max(tol * 1e-3, 1e-15):
            converged = True
            break
        if delta < tol:
            ratio = delta / previous_delta if previous_delta > 0 else 0.0
            tail = delta * ratio / (1 - ratio) if ratio < 1 else float("inf")
            if tail < tol:
                converged = True
                break

    best = int(np.argmax(np.sum(forward(block) ** 2, axis=0)))
    v = block[:, best]
    image = forward(v)
    value = float(image @ image)
    gram_v = backward(image)
    if project:
        gram_v = gram_v - gram_v.mean()
    residual = float(np.linalg.norm(gram_v - value * v) / value) if value > 0 else 0.0
    norm = float(np.sqrt(max(value, rayleigh)))

    log_solver_event("power-iteration", iteration, residual, converged)
    return norm, iteration, residual, converged


def _report(op: IncidenceOperator, tol: float) -> SpectralReport:
    return SpectralReport(spec=op.ring.name, d=op.d, t_label=op.t_label, tolerance=tol,
                          incidences=int(op.matrix.nnz))


def norm_on_meanzero(op: IncidenceOperator, tol: float = 1e-10, method: str = "auto",
                     seed: int = 42) -> SpectralReport:
    """
    ||A_t|| sobre W y el número de Incidence-Salem.

    Args:
        op: Operador de incidencia
        tol: Tolerancia del cambio relativo del cociente de Rayleigh
        method: 'auto', 'dense-svd' o 'power-iteration'
        seed: Semilla de los arranques aleatorios

    Returns:
        SpectralReport con norm_W y salem (converged=False si se agotaron las iteraciones)
    """
    tol = validate_tolerance(tol)
    report = _report(op, tol)
    report.method = _resolve_method(op, method)
    if report.method == "dense-svd":
        report.norm_W = _dense_norm(op, project=True)
        log_solver_event("dense-svd", 1, 0.0)
    else:
        norm, iterations, residual, converged = power_iteration(op, True, tol, seed)
        report.norm_W, report.iterations = norm, iterations
        report.residual, report.converged = residual, converged
    report.salem = report.norm_W / op.ring.size ** ((op.d - 1) / 2)
    return report


def norm_on_all(op: IncidenceOperator, tol: float = 1e-10, method: str = "auto",
                seed: int = 42) -> SpectralReport:
    """
    ||A_t'|| sobre V, acotada por la cota trivial max(|rows|, |transpose_rows|).

    Raises:
        ArgumentError: Si el valor calculado viola la cota trivial
    """
    tol = validate_tolerance(tol)
    report = _report(op, tol)
    report.method = _resolve_method(op, method)
    if report.method == "dense-svd":
        report.norm_V = _dense_norm(op, project=False)
        log_solver_event("dense-svd", 1, 0.0)
    else:
        norm, iterations, residual, converged = power_iteration(op, False, tol, seed)
        report.norm_V, report.iterations = norm, iterations
        report.residual, report.converged = residual, converged

    degree_bound = float(max(op.row_sizes().max(), op.column_sizes().max()))
    report.extra['trivial_bound'] = degree_bound
    if report.norm_V > degree_bound * (1 + 1e-9):
        raise ArgumentError(f"norm_V = {report.norm_V} excede la cota trivial {degree_bound}")
    return report


def spectral_report(op: IncidenceOperator, tol: float = 1e-10, method: str = "auto",
                    seed: int = 42) -> SpectralReport:
    """
    Ambas normas en un único reporte, con norm_W <= norm_V.

    Raises:
        ArgumentError: Si ambas normas convergieron y norm_W > norm_V
    """
    on_w = norm_on_meanzero(op, tol, method, seed)
    on_v = norm_on_all(op, tol, method, seed)
    report = on_w
    report.norm_V = on_v.norm_V
    report.iterations += on_v.iterations
    report.residual = max(report.residual, on_v.residual)
    report.converged = on_w.converged and on_v.converged
    report.extra.update(on_v.extra)
    if report.norm_W > report.norm_V * (1 + 1e-8):
        message = f"norm_W = {report.norm_W} > norm_V = {report.norm_V} en {op.describe()}"
        if report.converged:
            raise ArgumentError(message)
        logger.warning(f"⚠️  {message} (sin convergencia)")
    return report
