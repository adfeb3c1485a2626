"""
Caché de reportes espectrales.

Estrategia de dos niveles:
1. Memoria (más rápido)
2. Archivo JSON por clave en el directorio de caché

La clave es el sha256 de (spec canónico, d, etiqueta de t, tol), de modo que
cambiar la tolerancia nunca sirve una entrada vieja. Un acierto devuelve el
texto exacto que se escribió.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..incidence.spectral import SpectralReport
from ..utils.logging import get_logger
from .report_writer import to_json

logger = get_logger(__name__)


def cache_key(spec: str, d: int, t_label: str, tol: float) -> str:
    """Clave estable de una instancia."""
    payload = json.dumps([spec.replace(" ", ""), int(d), "".join(t_label.split()), repr(float(tol))])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResultCache:
    """
    Administra los reportes espectrales ya calculados.

    Las escrituras son atómicas: se escribe un temporal en el mismo directorio
    y se renombra con os.replace.
    """

    def __init__(self, cache_dir: Optional[Union[str, Path]] = None):
        """
        Inicializar caché de resultados.

        Args:
            cache_dir: Directorio de los archivos (por defecto data/cache)
        """
        self.cache_dir = Path(cache_dir) if cache_dir is not None else Path("data") / "cache"
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._memory: Dict[str, str] = {}
        self.hits = 0
        self.misses = 0
        logger.info(f"Caché de resultados inicializado: {self.cache_dir}")

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def get_text(self, key: str) -> Optional[str]:
        """
        Texto JSON guardado para la clave, o None.

        Usa primero la memoria y después el archivo.
        """
        if key in self._memory:
            self.hits += 1
            logger.debug(f"✓ Caché en MEMORIA para {key[:12]}")
            return self._memory[key]

        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            text = path.read_text(encoding="utf-8")
            json.loads(text)
        except (OSError, ValueError) as e:
            logger.warning(f"⚠️ Entrada de caché ilegible {path.name}: {e}")
            self.misses += 1
            return None
        self._memory[key] = text
        self.hits += 1
        logger.debug(f"✓ Caché de ARCHIVO para {key[:12]}")
        return text

    def get_report(self, spec: str, d: int, t_label: str, tol: float) -> Optional[SpectralReport]:
        """SpectralReport en caché para la instancia, o None."""
        text = self.get_text(cache_key(spec, d, t_label, tol))
        if text is None:
            return None
        return SpectralReport.from_dict(json.loads(text))

    def put_text(self, key: str, text: str):
        """Guardar el texto en memoria y, atómicamente, en archivo."""
        self._memory[key] = text
        fd, temporary = tempfile.mkstemp(dir=self.cache_dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(temporary, self._path(key))
        except OSError:
            if os.path.exists(temporary):
                os.unlink(temporary)
            raise

    def put_report(self, report: SpectralReport) -> str:
        """
        Guardar un reporte y devolver el texto escrito.

        Returns:
            str: JSON exacto que devolverá un acierto posterior
        """
        text = to_json(report.to_dict())
        self.put_text(cache_key(report.spec, report.d, report.t_label, report.tolerance), text)
        logger.info(f"✓ Reporte guardado en caché: {report.spec} d={report.d} t={report.t_label}")
        return text

    def clear(self):
        """Limpiar memoria y archivos."""
        self._memory.clear()
        for path in self.cache_dir.glob("*.json"):
            path.unlink()
        logger.info("✓ Caché LIMPIADO: MEMORIA + ARCHIVO")

    def stats(self) -> Dict[str, Any]:
        return {
            'directory': str(self.cache_dir),
            'memory_entries': len(self._memory),
            'file_entries': len(list(self.cache_dir.glob("*.json"))),
            'hits': self.hits,
            'misses': self.misses,
        }
