"""
Configuración de ejecución de Incidence-Salem.

Las variables de entorno (o un archivo .env) definen los valores por defecto;
un archivo de configuración con la misma superficie key=value que las
opciones de la línea de comandos los sobrescribe, y las opciones explícitas
sobrescriben al archivo.
"""

import io
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from dotenv import dotenv_values, load_dotenv

from ..utils.errors import ArgumentError
from ..utils.validation import safe_float_conversion, safe_int_conversion

# Load .env from project root
load_dotenv()

CACHE_DIR = os.getenv('INCIDENCE_SALEM_CACHE_DIR', './data/cache')
TOL = safe_float_conversion(os.getenv('INCIDENCE_SALEM_TOL', '1e-10'), 1e-10)
SEED = safe_int_conversion(os.getenv('INCIDENCE_SALEM_SEED', '42'), 42)
WORKERS = safe_int_conversion(os.getenv('INCIDENCE_SALEM_WORKERS', '0'), 0) or (os.cpu_count() or 1)
LOG_LEVEL = os.getenv('INCIDENCE_SALEM_LOG_LEVEL', 'INFO').upper()

COMMANDS = ("info", "salem", "verify", "scan", "edot", "graph")
FORMATS = ("json", "csv", "text")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
ALL_UNITS = "all-units"
FAMILY_SEPARATOR = ";"


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "si", "sí", "on")


def _to_family(value: Any) -> Tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(str(v).strip() for v in value if str(v).strip())
    return tuple(part.strip() for part in str(value).split(FAMILY_SEPARATOR) if part.strip())


def _to_optional_int(value: Any) -> Optional[int]:
    if value is None or str(value).strip() in ("", "None"):
        return None
    return int(value)


def _to_optional_str(value: Any) -> Optional[str]:
    if value is None or str(value).strip() in ("", "None"):
        return None
    return str(value)


# clave del archivo / opción -> (campo de RunConfig, conversión)
FILE_KEYS: Dict[str, Tuple[str, Callable[[Any], Any]]] = {
    'command': ('command', str),
    'ring': ('ring_spec', _to_optional_str),
    'd': ('d', int),
    't': ('t_label', str),
    'tol': ('tol', float),
    'seed': ('seed', int),
    'workers': ('workers', int),
    'output': ('output', str),
    'format': ('format', str),
    'suite': ('suite', str),
    'family': ('family', _to_family),
    'trials': ('trials', int),
    'q': ('q', _to_optional_int),
    'cache': ('use_cache', _to_bool),
    'cache_dir': ('cache_dir', str),
    'log_level': ('log_level', lambda v: str(v).upper()),
    'dump_adjacency': ('dump_adjacency', _to_optional_str),
}
FIELD_KEYS = {field_name: key for key, (field_name, _) in FILE_KEYS.items()}


@dataclass(frozen=True)
class RunConfig:
    """
    Parámetros de una ejecución.

    Attributes:
        command: Subcomando (info, salem, verify, scan, edot, graph)
        ring_spec: Spec textual del anillo
        d: Dimensión
        t_label: Etiqueta de la unidad o 'all-units'
        tol: Tolerancia del cálculo espectral
        seed: Semilla
        workers: Hilos de trabajo
        output: Ruta de salida o '-' para stdout
        format: json, csv o text
        suite: Suite de verificación
        family: Specs del escaneo
        trials: Ensayos del experimento E·E
        q: Orden del cuerpo del grafo
        use_cache: Consultar la caché antes de resolver
        cache_dir: Directorio de la caché
        log_level: Nivel de logging
        dump_adjacency: Ruta opcional para volcar la adyacencia del operador
    """

    command: str = "salem"
    ring_spec: Optional[str] = None
    d: int = 2
    t_label: str = "1"
    tol: float = TOL
    seed: int = SEED
    workers: int = WORKERS
    output: str = "-"
    format: str = "json"
    suite: str = "quick"
    family: Tuple[str, ...] = ()
    trials: int = 200
    q: Optional[int] = None
    use_cache: bool = True
    cache_dir: str = CACHE_DIR
    log_level: str = LOG_LEVEL
    dump_adjacency: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['family'] = list(self.family)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in data.items() if k in known}
        if 'family' in values:
            values['family'] = _to_family(values['family'])
        return cls(**values)

    def to_lines(self) -> str:
        """Representación key=value, legible por from_lines y como archivo de configuración."""
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == 'family':
                value = FAMILY_SEPARATOR.join(value)
            elif value is None:
                value = ""
            lines.append(f"{FIELD_KEYS[f.name]}={_quote(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_lines(cls, text: str) -> "RunConfig":
        return apply_settings(cls(), dotenv_values(stream=io.StringIO(text)))

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copia con los valores no nulos de overrides."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _quote(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    text = str(value)
    if any(c in text for c in " #'\"(),;[]"):
        return '"' + text.replace('"', '\\"') + '"'
    return text


def apply_settings(config: RunConfig, settings: Mapping[str, Any]) -> RunConfig:
    """
    Aplicar pares key=value (archivo de configuración) sobre una RunConfig.

    Raises:
        ArgumentError: Si hay claves desconocidas o valores no convertibles
    """
    updates: Dict[str, Any] = {}
    for key, raw in settings.items():
        normalized = key.strip().lower().replace("-", "_")
        if normalized not in FILE_KEYS:
            raise ArgumentError(f"Clave de configuración desconocida: {key}")
        field_name, convert = FILE_KEYS[normalized]
        if raw is None:
            raw = ""
        try:
            updates[field_name] = convert(raw)
        except (TypeError, ValueError) as e:
            raise ArgumentError(f"Valor inválido para {key}: {raw!r} ({e})") from e
    return replace(config, **updates)


def load_run_config(config_file: Optional[str] = None, **flags) -> RunConfig:
    """
    Construir la configuración con precedencia opciones > archivo > entorno > defaults.

    Args:
        config_file: Archivo key=value opcional
        **flags: Opciones explícitas (None = no indicada)

    Returns:
        RunConfig: Configuración combinada

    Raises:
        ArgumentError: Si el archivo no existe o contiene claves desconocidas
    """
    config = RunConfig()
    if config_file:
        if not os.path.exists(config_file):
            raise ArgumentError(f"Archivo de configuración no encontrado: {config_file}")
        config = apply_settings(config, dotenv_values(config_file))
    return config.with_overrides(**flags)


def validate_run_config(config: RunConfig) -> List[str]:
    """
    Validar una configuración de ejecución.
    Devuelve lista de errores, lista vacía si todos son válidos.
    """
    from ..io.spec_parser import parse_ring_spec
    from ..verify.suite import SUITE_NAMES

    errors = []

    if config.command not in COMMANDS:
        errors.append(f"Comando inválido: {config.command}. Se esperaba uno de: {', '.join(COMMANDS)}")

    if config.d < 1:
        errors.append(f"d debe ser un entero positivo, obtenido: {config.d}")

    if not 0 < config.tol < 1:
        errors.append(f"tol debe estar en (0, 1), obtenido: {config.tol}")

    if config.seed < 0:
        errors.append(f"seed debe ser no negativa, obtenida: {config.seed}")

    if config.workers < 1:
        errors.append(f"workers debe ser al menos 1, obtenido: {config.workers}")

    if config.format not in FORMATS:
        errors.append(f"Formato inválido: {config.format}. Se esperaba uno de: {', '.join(FORMATS)}")

    if config.log_level not in LOG_LEVELS:
        errors.append(f"Nivel de log inválido: {config.log_level}")

    if config.trials < 1:
        errors.append(f"trials debe ser positivo, obtenido: {config.trials}")

    if not config.t_label.strip():
        errors.append("t no puede estar vacío")

    if config.command in ("info", "salem", "edot"):
        if not config.ring_spec:
            errors.append(f"El comando {config.command} requiere --ring")
        else:
            try:
                parse_ring_spec(config.ring_spec)
            except ArgumentError as e:
                errors.append(f"Spec de anillo inválido '{config.ring_spec}': {e}")

    if config.command == "edot" and config.t_label == ALL_UNITS:
        errors.append("edot requiere una unidad concreta, no all-units")

    if config.command == "verify" and config.suite not in SUITE_NAMES:
        errors.append(f"Suite inválida: {config.suite}. Se esperaba una de: {', '.join(SUITE_NAMES)}")

    if config.command == "scan":
        if not config.family:
            errors.append("El comando scan requiere al menos un --family")
        for text in config.family:
            try:
                parse_ring_spec(text)
            except ArgumentError as e:
                errors.append(f"Spec de anillo inválido '{text}': {e}")

    if config.command == "graph" and (config.q is None or config.q < 2):
        errors.append(f"El comando graph requiere --q >= 2, obtenido: {config.q}")

    return errors
