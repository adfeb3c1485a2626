"""
Utilidades de logging para Incidence-Salem.

Este módulo provee configuración centralizada de logging y utilidades.
"""

import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: Union[int, str] = logging.INFO, log_file: Optional[str] = None):
    """
    Configurar logging.

    Los mensajes van al stream de diagnóstico (stderr) para no mezclarse con
    los reportes JSON/CSV emitidos por stdout.

    Args:
        level: Nivel de logging (por defecto: INFO)
        log_file: Ruta opcional del archivo de log
    """
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        level = resolved if isinstance(resolved, int) else logging.INFO

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))

    # force=True reemplaza los manejadores de una configuración previa
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def get_logger(name):
    """
    Obtener un logger con el nombre especificado.

    Args:
        name: Nombre del logger (típicamente __name__)

    Returns:
        logging.Logger: Logger configurado
    """
    return logging.getLogger(name)


def log_check_result(check: Any):
    """
    Registrar el resultado de una verificación con formato consistente.

    Args:
        check: TheoremCheck (cualquier objeto con id, instance, observed,
            claimed_bound y passed)
    """
    logger = get_logger("verify")
    message = (f"{check.id} [{check.instance}]: observado={check.observed:.12g} "
               f"cota={check.claimed_bound:.12g}")

    if check.passed:
        logger.info(f"✅ {message}")
    else:
        logger.error(f"❌ {message}")


def log_solver_event(method: str, iterations: int, residual: float, converged: bool = True):
    """
    Registrar eventos del resolvedor espectral.

    Args:
        method: 'dense-svd' o 'power-iteration'
        iterations: Iteraciones realizadas
        residual: Residuo final relativo
        converged: False si se alcanzó el tope de iteraciones
    """
    logger = get_logger("spectral")

    if converged:
        logger.debug(f"Resolvedor {method}: {iterations} iteraciones, residuo {residual:.3e}")
    else:
        logger.warning(f"⚠️  Resolvedor {method} NO convergió tras {iterations} iteraciones "
                       f"(residuo {residual:.3e})")
