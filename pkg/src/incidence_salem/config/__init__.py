"""
Módulo de gestión de configuración para Incidence-Salem.

Este módulo proporciona gestión centralizada de la configuración con
soporte para variables de entorno usando python-dotenv.
"""

from .run_config import (ALL_UNITS, CACHE_DIR, COMMANDS, LOG_LEVEL, SEED, TOL, WORKERS, RunConfig,
                         apply_settings, load_run_config, validate_run_config)

__all__ = [
    'ALL_UNITS', 'CACHE_DIR', 'COMMANDS', 'LOG_LEVEL', 'SEED', 'TOL', 'WORKERS',
    'RunConfig', 'apply_settings', 'load_run_config', 'validate_run_config',
]
