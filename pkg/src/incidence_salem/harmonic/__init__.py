"""
Análisis armónico sobre R^d: emparejamientos, caracteres y transformada de Fourier.
"""

from .characters import (Character, char_eval, character, character_values,
                         matrix_witness_character, pullback_character,
                         trivial_character)
from .fourier import fourier_transform, inverse_fourier, parseval_gap
from .grid import GridFunction
from .pairing import Pairing, additive_decomposition, build_pairing

__all__ = [
    'Pairing', 'build_pairing', 'additive_decomposition',
    'Character', 'character', 'trivial_character', 'char_eval', 'character_values',
    'pullback_character', 'matrix_witness_character',
    'GridFunction', 'fourier_transform', 'inverse_fourier', 'parseval_gap',
]
