"""Parser de specs, caché de resultados y emisión de reportes."""

from .report_writer import (FORMATS, adjacency_dump, render, to_csv, to_json, to_text,
                            write_adjacency, write_output)
from .result_cache import ResultCache, cache_key
from .spec_parser import canonical_spec, parse_ring_spec

__all__ = [
    'FORMATS', 'adjacency_dump', 'render', 'to_csv', 'to_json', 'to_text', 'write_adjacency',
    'write_output', 'ResultCache', 'cache_key', 'canonical_spec', 'parse_ring_spec',
]
