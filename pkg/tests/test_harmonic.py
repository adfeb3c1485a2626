"""
Tests de emparejamientos, caracteres y transformada de Fourier.
"""

import numpy as np
import pytest

from incidence_salem.harmonic import (GridFunction, additive_decomposition,
                                      build_pairing, char_eval, character,
                                      character_values, fourier_transform,
                                      inverse_fourier, matrix_witness_character,
                                      parseval_gap, pullback_character,
                                      trivial_character)
from incidence_salem.incidence import character_ratio
from incidence_salem.rings import jacobson_radical, quotient_ring
from incidence_salem.utils.errors import ArgumentError
from incidence_salem.utils.helpers import decode_point, encode_point, encode_points, grid_coordinates


def test_zmod_pairing_denominator(zmod4):
    """Z/4 usa fases a·x/4."""
    pairing = build_pairing(zmod4)
    assert pairing.denominator == 4
    assert pairing.phase(1, 1) == (1, 4)
    assert pairing.phase(2, 3) == (2, 4)


def test_gf4_pairing_is_trace(gf4):
    """GF(4) tiene fases Tr(ax)/2."""
    pairing = build_pairing(gf4)
    assert pairing.denominator == 2
    assert set(np.unique(pairing.beta)) == {0, 1}


def test_exact_roots_of_unity(zmod4):
    """Las raíces 1, i, -1, -i se guardan exactas."""
    roots = build_pairing(zmod4).roots
    assert roots[0] == 1
    assert roots[1] == 1j
    assert roots[2] == -1
    assert roots[3] == -1j


@pytest.mark.parametrize("fixture,orders", [
    ("zmod4", [4]),
    ("gf4", [2, 2]),
    ("trunc2", [2, 2]),
])
def test_additive_decomposition(request, fixture, orders):
    """Descomposición cíclica del grupo aditivo."""
    ring = request.getfixturevalue(fixture)
    found, coordinates = additive_decomposition(ring)
    assert sorted(found) == sorted(orders)
    assert coordinates.shape == (ring.size, len(orders))
    assert len({tuple(row) for row in coordinates}) == ring.size


def test_quotient_pairing(zmod9):
    """El cociente Z/9 / (3) recibe un emparejamiento no degenerado."""
    quotient, _ = quotient_ring(zmod9, jacobson_radical(zmod9))
    pairing = build_pairing(quotient)
    assert pairing.denominator == 3
    assert pairing.kind == "quotient"


def test_trivial_character_values(gf3):
    """El carácter trivial vale 1 en todo punto."""
    chi = trivial_character(gf3, 2)
    values = character_values(chi)
    assert chi.is_trivial
    assert np.allclose(values.values, 1)
    assert not values.mean_zero


def test_characters_orthogonal(zmod4):
    """<chi_a, chi_b> = m^d si a = b y 0 si no."""
    duals = [(0, 0), (1, 0), (2, 3), (3, 3)]
    values = [character_values(character(zmod4, dual)) for dual in duals]
    for i, f in enumerate(values):
        for j, g in enumerate(values):
            expected = 16 if i == j else 0
            assert f.inner(g) == pytest.approx(expected, abs=1e-9)


def test_nontrivial_character_is_mean_zero(gf3):
    """Un carácter no trivial queda certificado en W."""
    values = character_values(character(gf3, (1, 2)))
    assert values.mean_zero
    assert abs(values.total()) < 1e-9


def test_char_eval_matches_materialized(zmod4):
    """Evaluar en un punto coincide con la tabla completa."""
    chi = character(zmod4, (1, 3))
    values = character_values(chi)
    for point in [(0, 0), (1, 0), (2, 1), (3, 3)]:
        assert char_eval(chi, point) == pytest.approx(values.values[encode_point(point, 4)])
    assert char_eval(chi, (1, 0)) == 1j


def test_char_eval_dimension_mismatch(zmod4):
    """Un punto de otra dimensión es un error."""
    chi = character(zmod4, (1, 1))
    with pytest.raises(ArgumentError):
        char_eval(chi, (1, 1, 1))


def test_character_dual_out_of_range(zmod4):
    """Un dual fuera del anillo se rechaza."""
    with pytest.raises(ArgumentError):
        character(zmod4, (4, 0))


def test_grid_function_shape(gf3):
    """La cantidad de valores debe ser m^d."""
    with pytest.raises(ArgumentError):
        GridFunction(gf3, 2, np.zeros(8))
    with pytest.raises(ArgumentError):
        GridFunction(gf3, 2, np.ones(9), mean_zero=True)


def test_fourier_of_constant(gf3):
    """La constante 1 tiene un único coeficiente en el dual 0."""
    coefficients = fourier_transform(GridFunction.constant(gf3, 2))
    assert coefficients[0] == pytest.approx(1)
    assert np.allclose(coefficients[1:], 0)


@pytest.mark.parametrize("fixture", ["gf3", "zmod4", "trunc2", "mat2"])
def test_fourier_inversion_and_parseval(request, fixture):
    """Inversión y Parseval para 100 funciones aleatorias."""
    ring = request.getfixturevalue(fixture)
    rng = np.random.default_rng(7)
    size = ring.size ** 2
    for _ in range(100):
        f = GridFunction(ring, 2, rng.normal(size=size) + 1j * rng.normal(size=size))
        coefficients = fourier_transform(f)
        restored = inverse_fourier(coefficients, ring, 2)
        assert np.allclose(restored.values, f.values, rtol=1e-10, atol=1e-10)
        assert parseval_gap(f, coefficients) < 1e-10


def test_pullback_from_quotient(zmod4, zmod4_operator):
    """El carácter de F_2 levantado a Z/4 es (-1)^(x_1 + x_2)."""
    quotient, projection = quotient_ring(zmod4, jacobson_radical(zmod4))
    one = quotient.labels.index("1+J")
    chi_tilde = character(quotient, (one, one))
    chi = pullback_character(projection, chi_tilde, build_pairing(zmod4))

    assert chi.dual == (2, 2)
    assert not chi.is_trivial
    assert char_eval(chi, (1, 0)) == -1
    assert char_eval(chi, (1, 1)) == 1

    image_norm, chi_norm = character_ratio(zmod4_operator, chi)
    assert chi_norm == pytest.approx(4)
    assert image_norm == pytest.approx(8)


def test_pullback_rejects_wrong_projection(zmod4):
    """Una proyección de otro tamaño se rechaza."""
    quotient, _ = quotient_ring(zmod4, jacobson_radical(zmod4))
    chi_tilde = character(quotient, (1, 1))
    with pytest.raises(ArgumentError):
        pullback_character(np.zeros(3, dtype=np.int64), chi_tilde, build_pairing(zmod4))


def test_matrix_witness_character(mat2):
    """El testigo de M_2(F_2) lee la entrada superior izquierda."""
    chi = matrix_witness_character(mat2, 2)
    e11 = mat2.labels.index("[[1,0],[0,0]]")
    e22 = mat2.labels.index("[[0,0],[0,1]]")
    assert chi.dual == (e11, e11)
    assert char_eval(chi, (e11, mat2.zero)) == -1
    assert char_eval(chi, (e22, mat2.zero)) == 1
    assert char_eval(chi, (e11, e11)) == 1


def test_matrix_witness_requires_matrices(gf3):
    """Solo tiene sentido para anillos de matrices."""
    with pytest.raises(ArgumentError):
        matrix_witness_character(gf3, 2)


def _all_duals(ring, d=2):
    return [decode_point(index, ring.size, d) for index in range(ring.size ** d)]


@pytest.mark.parametrize("fixture", ["gf3", "gf4", "zmod4", "trunc2", "zmod9"])
def test_characters_orthogonal_on_all_duals(request, fixture):
    """La matriz de Gram de todos los caracteres es m^d por la identidad."""
    ring = request.getfixturevalue(fixture)
    table = np.array([character_values(character(ring, dual)).values for dual in _all_duals(ring)])
    gram = table @ table.conj().T
    assert np.allclose(gram, ring.size ** 2 * np.eye(len(table)), atol=1e-8)


@pytest.mark.parametrize("fixture", ["zmod4", "trunc2", "zmod9"])
def test_characters_constant_on_radical_cosets_are_pullbacks(request, fixture):
    """Los caracteres constantes en las clases de J^d son exactamente los levantados de (R/J)^d."""
    ring = request.getfixturevalue(fixture)
    quotient, projection = quotient_ring(ring, jacobson_radical(ring))
    cosets = encode_points(projection[grid_coordinates(ring.size, 2)], quotient.size)

    constant = set()
    for dual in _all_duals(ring):
        values = character_values(character(ring, dual)).values
        representatives = np.zeros(quotient.size ** 2, dtype=complex)
        representatives[cosets] = values
        if np.allclose(values, representatives[cosets]):
            constant.add(dual)

    pairing = build_pairing(ring)
    lifted = {pullback_character(projection, character(quotient, dual), pairing).dual
              for dual in _all_duals(quotient)}
    assert len(lifted) == quotient.size ** 2
    assert constant == lifted
