"""
Anillos finitos: specs, tablas materializadas, radical y cocientes.
"""

from .ideals import (Ideal, central_idempotents, format_shape, ideal_product,
                     jacobson_radical, principal_left_ideals, quotient_ring,
                     ring_summary, semisimple_shape)
from .ring_table import (MAX_RING_SIZE, RingTable, build_ring, element_index,
                         opposite_iso)
from .spec import GF, Mat, Prod, RingSpec, Trunc, ZMod, field_spec

__all__ = [
    'RingSpec', 'ZMod', 'GF', 'Mat', 'Prod', 'Trunc', 'field_spec',
    'RingTable', 'build_ring', 'element_index', 'opposite_iso', 'MAX_RING_SIZE',
    'Ideal', 'jacobson_radical', 'quotient_ring', 'principal_left_ideals',
    'ideal_product', 'central_idempotents', 'semisimple_shape', 'format_shape',
    'ring_summary',
]
