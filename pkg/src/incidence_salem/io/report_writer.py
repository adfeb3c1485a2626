"""
Emisión de reportes en JSON, CSV y texto.

Los flotantes se escriben con 17 dígitos significativos en JSON (ida y vuelta
exacta) y con 12 en CSV y texto.
"""

import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Union

import numpy as np
import pandas as pd

from ..incidence.operator import IncidenceOperator
from ..utils.errors import ArgumentError
from ..utils.helpers import format_float
from ..utils.logging import get_logger

logger = get_logger(__name__)

FORMATS = ("json", "csv", "text")
JSON_DIGITS = 17
TABLE_DIGITS = 12
CSV_FLOAT_FORMAT = f"%.{TABLE_DIGITS}g"


def plain(value: Any) -> Any:
    """Convertir tipos de numpy y dataclasses con to_dict a tipos nativos."""
    if hasattr(value, "to_dict") and not isinstance(value, (pd.DataFrame, pd.Series)):
        return plain(value.to_dict())
    if isinstance(value, Mapping):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _emit(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = format_float(value, JSON_DIGITS)
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_emit(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in value):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in value) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise ArgumentError(f"Tipo no serializable en el reporte: {type(value).__name__}")


def to_json(data: Any, indent: int = 2) -> str:
    """JSON determinista con flotantes de 17 dígitos significativos."""
    return _emit(plain(data), indent, 0) + "\n"


def to_frame(records: Union[pd.DataFrame, Iterable[Any], Any]) -> pd.DataFrame:
    """Tabla de pandas a partir de reportes o diccionarios."""
    if isinstance(records, pd.DataFrame):
        return records
    if isinstance(records, (list, tuple)):
        rows = [flatten(plain(r)) for r in records]
    else:
        rows = [flatten(plain(records))]
    return pd.DataFrame(rows)


def flatten(record: Dict[str, Any]) -> Dict[str, Any]:
    """Aplanar diccionarios anidados con claves 'padre.hijo'; las listas quedan como texto."""
    flat: Dict[str, Any] = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for inner, item in flatten(value).items():
                flat[f"{key}.{inner}"] = item
        elif isinstance(value, list):
            flat[key] = json.dumps(value, ensure_ascii=False)
        else:
            flat[key] = value
    return flat


def to_csv(records: Any) -> str:
    """CSV con flotantes de 12 dígitos significativos."""
    return to_frame(records).to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def to_text(records: Any) -> str:
    """Tabla de texto legible."""
    frame = to_frame(records)
    if len(frame) == 1 and not isinstance(records, (pd.DataFrame, list, tuple)):
        width = max(len(str(c)) for c in frame.columns)
        lines = []
        for column, value in frame.iloc[0].items():
            shown = format_float(value, TABLE_DIGITS) if isinstance(value, float) else value
            lines.append(f"{str(column).ljust(width)}  {shown}")
        return "\n".join(lines) + "\n"
    return frame.to_string(index=False, float_format=lambda v: format_float(v, TABLE_DIGITS)) + "\n"


def render(records: Any, fmt: str) -> str:
    """
    Renderizar reportes en el formato pedido.

    Raises:
        ArgumentError: Si el formato no es json, csv o text
    """
    if fmt == "json":
        return to_json(records)
    if fmt == "csv":
        return to_csv(records)
    if fmt == "text":
        return to_text(records)
    raise ArgumentError(f"Formato desconocido: {fmt}. Opciones: {', '.join(FORMATS)}")


def write_output(text: str, output: Optional[str] = "-"):
    """Escribir en stdout ('-') o en un archivo."""
    if output in (None, "", "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"✅ Reporte escrito en {path}")


def adjacency_dump(op: IncidenceOperator) -> Dict[str, str]:
    """
    Volcado del operador: encabezado JSON y líneas CSV 'x_index,y_index'.
    """
    header = {'spec': op.ring.name, 'd': op.d, 't_label': op.t_label, 'incidences': int(op.matrix.nnz)}
    coo = op.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    lines: List[str] = ["x_index,y_index"]
    lines += [f"{x},{y}" for x, y in zip(coo.row[order].tolist(), coo.col[order].tolist())]
    return {'header': to_json(header), 'csv': "\n".join(lines) + "\n"}


def write_adjacency(op: IncidenceOperator, path: Union[str, Path]):
    """Escribir el volcado en PATH (CSV) y PATH con sufijo .json (encabezado)."""
    path = Path(path)
    dump = adjacency_dump(op)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump['csv'], encoding="utf-8")
    path.with_suffix(".json").write_text(dump['header'], encoding="utf-8")
    logger.info(f"Adyacencia de {op.describe()} escrita en {path}")
