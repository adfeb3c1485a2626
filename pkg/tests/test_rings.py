"""
Tests de construcción de anillos, radical de Jacobson y cocientes.

Verifica que:
1. Los specs se normalizan a su forma canónica
2. Las tablas materializadas tienen el tamaño y las unidades esperadas
3. El radical y el cociente coinciden con los valores conocidos
"""

import pytest

from incidence_salem.rings import (GF, Mat, Prod, Trunc, ZMod, build_ring, element_index,
                                   field_spec, ideal_product, jacobson_radical, opposite_iso,
                                   principal_left_ideals, quotient_ring, ring_summary)
from incidence_salem.rings.galois import CONWAY_MODULI, default_modulus, is_irreducible
from incidence_salem.utils.errors import (ArgumentError, RingConstructionError, ScaleError,
                                          SpecSemanticError)


def test_field_spec_expands_prime_powers():
    """gf(q) se expande a gf(p, k) con el módulo por defecto."""
    assert field_spec(9) == GF(3, 2)
    assert field_spec(9).modulus == CONWAY_MODULI[(3, 2)]
    assert field_spec(7).canonical() == "gf(7,1)"
    with pytest.raises(SpecSemanticError, match="6 no es potencia de un primo"):
        field_spec(6)


def test_canonical_strings_are_nested():
    """La forma canónica incluye los valores por defecto de los factores."""
    spec = Prod((GF(2), Mat(2, GF(2))))
    assert spec.canonical() == "prod(gf(2,1),mat(2,gf(2,1)))"
    assert spec.size == 32
    assert str(Trunc(GF(2), 2)) == "trunc(gf(2,1),2)"


def test_default_modulus_is_irreducible():
    """El módulo por defecto es irreducible y mónico."""
    for p, k in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]:
        modulus = default_modulus(p, k)
        assert len(modulus) == k + 1
        assert modulus[-1] == 1
        assert is_irreducible(modulus, p)


@pytest.mark.parametrize("spec, size, units", [
    (ZMod(4), 4, 2),
    (ZMod(6), 6, 2),
    (GF(2), 2, 1),
    (GF(3, 2), 9, 8),
    (Mat(2, GF(2)), 16, 6),
    (Prod((GF(2), GF(3))), 6, 2),
    (Trunc(GF(2), 2), 4, 2),
])
def test_build_ring_sizes_and_units(spec, size, units):
    """Tamaño y cantidad de unidades de los anillos de prueba."""
    ring = build_ring(spec)
    assert ring.size == size
    assert len(ring.units) == units
    assert ring.mul[ring.one, ring.one] == ring.one
    for u in ring.units:
        assert ring.mul[u, ring.inv[u]] == ring.one
        assert ring.mul[ring.inv[u], u] == ring.one


def test_matrix_ring_is_noncommutative(mat2):
    """M_2(F_2) no es conmutativo y la transposición es el mapa opuesto."""
    assert not mat2.is_commutative
    phi = opposite_iso(mat2)
    assert phi is not None
    x = element_index(mat2, "[[1,1],[0,1]]")
    assert mat2.labels[phi[x]] == "[[1,0],[1,1]]"


def test_reducible_modulus_is_rejected():
    """x^2 + 1 = (x + 1)^2 sobre F_2 no define un cuerpo."""
    with pytest.raises(RingConstructionError):
        build_ring(GF(2, 2, (1, 0, 1)))


def test_scale_limit():
    """Los anillos de más de 4096 elementos se rechazan con diagnóstico."""
    with pytest.raises(ScaleError) as error:
        build_ring(ZMod(5000))
    assert error.value.limit == 4096


def test_element_labels(gf4, trunc2):
    """Las etiquetas resuelven a índices y '1' es siempre la identidad."""
    assert element_index(gf4, "1") == gf4.one
    assert element_index(gf4, "a + 1") == element_index(gf4, "a+1")
    assert trunc2.labels[element_index(trunc2, "e")] == "e"
    with pytest.raises(ArgumentError):
        element_index(gf4, "b")


def test_jacobson_radicals(zmod4, zmod9, trunc2, mat2):
    """Radicales conocidos por fuerza bruta."""
    assert jacobson_radical(zmod4).members == (0, 2)
    assert jacobson_radical(zmod9).members == (0, 3, 6)
    assert jacobson_radical(trunc2).members == (0, element_index(trunc2, "e"))
    assert jacobson_radical(mat2).is_zero
    assert jacobson_radical(build_ring(GF(5))).is_zero


@pytest.mark.parametrize("spec", [ZMod(4), ZMod(8), ZMod(9), ZMod(12), Trunc(GF(2), 2), Trunc(GF(3), 2)])
def test_quotient_by_radical_is_semisimple(spec):
    """R/J tiene radical trivial."""
    ring = build_ring(spec)
    radical = jacobson_radical(ring)
    quotient, projection = quotient_ring(ring, radical)
    assert quotient.size * radical.size == ring.size
    assert jacobson_radical(quotient).is_zero
    assert projection[ring.one] == quotient.one
    assert quotient.labels[quotient.zero] == "0+J"


def test_radical_square_is_smaller(zmod9):
    """J^2 != J para anillos locales no triviales."""
    radical = jacobson_radical(zmod9)
    assert ideal_product(radical, radical).is_zero


def test_principal_left_ideals(zmod4, mat2):
    """Ideales principales a izquierda, ordenados por tamaño."""
    assert [ideal.members for ideal in principal_left_ideals(zmod4)] == [(0,), (0, 2), (0, 1, 2, 3)]
    sizes = [ideal.size for ideal in principal_left_ideals(mat2)]
    assert sizes[0] == 1 and sizes[-1] == 16
    assert 4 in sizes


def test_ring_summary(zmod4, mat2):
    """Resumen estructural usado por 'info' y por el escaneo."""
    summary = ring_summary(zmod4)
    assert summary['radical_size'] == 2
    assert summary['quotient_shape'] == "F2"
    assert not summary['is_field']

    summary = ring_summary(mat2)
    assert summary['units'] == 6
    assert summary['quotient_shape'] == "M2(F2)"
    assert summary['opposite_map']

    summary = ring_summary(build_ring(Prod((GF(2), GF(3)))))
    assert summary['quotient_shape'] in ("F2 x F3", "F3 x F2")


@pytest.mark.parametrize("factors", [
    (ZMod(4), Trunc(GF(2), 2)),
    (ZMod(9), GF(2)),
    (GF(3), ZMod(4)),
])
def test_radical_of_product_is_product_of_radicals(factors):
    """J(R_1 x R_2) = J(R_1) x J(R_2), con el primer factor como dígito menos significativo."""
    ring = build_ring(Prod(factors))
    first, second = (build_ring(spec) for spec in factors)
    expected = sorted(a + first.size * b
                      for a in jacobson_radical(first).members
                      for b in jacobson_radical(second).members)
    assert sorted(jacobson_radical(ring).members) == expected
