"""
Tests del operador de incidencia y de las normas espectrales.
"""

import math

import numpy as np
import pytest

from incidence_salem.harmonic import GridFunction, character
from incidence_salem.incidence import (SpectralReport, apply, apply_transpose,
                                       build_incidence, character_ratio, count_incidences,
                                       indicator_count, mean_zero_project,
                                       norm_on_all, norm_on_meanzero, power_iteration,
                                       spectral_report,
                                       trivial_character_ratio)
from incidence_salem.incidence import operator as operator_module
from incidence_salem.incidence import spectral as spectral_module
from incidence_salem.rings import GF, Trunc, ZMod, build_ring, field_spec
from incidence_salem.utils.errors import ArgumentError, ScaleError
from incidence_salem.utils.helpers import decode_point, encode_point


@pytest.mark.parametrize("q,d", [(2, 2), (3, 2), (2, 3), (5, 2), (4, 2)])
def test_field_incidence_count(q, d):
    """Sobre F_q hay q^{2d-1} - q^{d-1} incidencias."""
    ring = build_ring(field_spec(q))
    op = build_incidence(ring, d, ring.one)
    assert count_incidences(op) == q ** (2 * d - 1) - q ** (d - 1)


def test_rows_solve_dot_product(zmod4_operator, zmod4):
    """Cada fila contiene exactamente los y con y·x = 1."""
    op = zmod4_operator
    for x in range(op.points):
        x1, x2 = x % 4, x // 4
        expected = [y for y in range(op.points) if ((y % 4) * x1 + (y // 4) * x2) % 4 == 1]
        assert list(op.rows(x)) == expected


def test_zero_row_is_empty(gf3_operator):
    """El origen no tiene incidencias porque t es unidad."""
    assert len(gf3_operator.rows(0)) == 0
    assert len(gf3_operator.transpose_rows(0)) == 0


def test_small_field_adjacency():
    """Sobre F_2^2 la matriz restringida a puntos no nulos es la esperada."""
    ring = build_ring(GF(2))
    op = build_incidence(ring, 2, ring.one)
    dense = op.matrix.toarray()
    points = [encode_point(p, 2) for p in [(1, 0), (0, 1), (1, 1)]]
    block = dense[np.ix_(points, points)]
    assert np.array_equal(block, [[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert not dense[0].any()


@pytest.mark.parametrize("fixture", ["gf3", "gf4", "zmod4", "zmod9", "trunc2", "mat2"])
def test_adjoint_consistency(request, fixture):
    """<A f, g> = <f, A^T g> en 100 pares aleatorios."""
    ring = request.getfixturevalue(fixture)
    op = build_incidence(ring, 2, ring.one)
    rng = np.random.default_rng(3)
    for _ in range(100):
        f, g = (GridFunction(ring, 2, rng.normal(size=op.points) + 1j * rng.normal(size=op.points))
                for _ in range(2))
        lhs = apply(op, f).inner(g)
        rhs = f.inner(apply_transpose(op, g))
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), 1.0)


def test_mat_rows_follow_left_action(mat2_operator, mat2):
    """En M_2(F_2) la relación usa y·x (y a la izquierda)."""
    op = mat2_operator
    mul, add = mat2.mul, mat2.add
    x = 37
    x1, x2 = x % 16, x // 16
    expected = [y for y in range(op.points)
                if add[mul[y % 16, x1], mul[y // 16, x2]] == mat2.one]
    assert list(op.rows(x)) == expected


def test_non_unit_t_rejected(zmod4):
    """t debe ser una unidad."""
    with pytest.raises(ArgumentError):
        build_incidence(zmod4, 2, 2)


def test_dimension_at_least_two(gf3):
    """d = 1 no define un operador de incidencia."""
    with pytest.raises(ArgumentError):
        build_incidence(gf3, 1, gf3.one)


def test_scale_limit(gf2):
    """m^d > 10^7 se rechaza antes de materializar."""
    with pytest.raises(ScaleError) as excinfo:
        build_incidence(gf2, 24, gf2.one)
    assert excinfo.value.limit == 10_000_000


def test_workers_give_same_matrix(zmod9):
    """Construir con varios hilos no cambia la matriz."""
    single = build_incidence(zmod9, 2, zmod9.one)
    threaded = build_incidence(zmod9, 2, zmod9.one, workers=4)
    assert (single.matrix != threaded.matrix).nnz == 0


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_field_salem_is_one(q):
    """Sobre F_q con q >= 3 el número de Salem vale 1."""
    ring = build_ring(field_spec(q))
    report = norm_on_meanzero(build_incidence(ring, 2, ring.one))
    assert report.salem == pytest.approx(1.0, abs=1e-8)
    assert report.method == "dense-svd"


def test_gf2_salem(gf2):
    """Sobre F_2 el número de Salem vale 2^{-1/2}."""
    report = norm_on_meanzero(build_incidence(gf2, 2, gf2.one))
    assert report.salem == pytest.approx(2 ** -0.5, abs=1e-8)


def test_norm_on_all_bounded_by_degree(gf3_operator):
    """||A|| sobre V no excede el grado máximo."""
    report = norm_on_all(gf3_operator)
    assert report.norm_V <= 3 + 1e-9
    assert report.extra['trivial_bound'] == 3.0


def test_spectral_report_orders_norms(zmod4_operator):
    """norm_W <= norm_V y el reporte cuenta incidencias."""
    report = spectral_report(zmod4_operator)
    assert report.norm_W <= report.norm_V * (1 + 1e-8)
    assert report.incidences == count_incidences(zmod4_operator)
    assert report.spec == "zmod(4)"
    assert report.t_label == "1"


def test_power_iteration_matches_dense():
    """Ambos resolvedores coinciden en un caso chico."""
    ring = build_ring(GF(5))
    op = build_incidence(ring, 2, ring.one)
    dense = norm_on_meanzero(op, method="dense-svd")
    power = norm_on_meanzero(op, tol=1e-12, method="power-iteration", seed=1)
    assert power.norm_W == pytest.approx(dense.norm_W, rel=1e-8)


def test_unknown_method(gf3_operator):
    with pytest.raises(ArgumentError):
        norm_on_meanzero(gf3_operator, method="lanczos")


def test_report_round_trip_keeps_extra(gf3_operator):
    """to_dict aplana extra y from_dict lo recupera."""
    report = spectral_report(gf3_operator)
    data = report.to_dict()
    assert 'trivial_bound' in data
    restored = SpectralReport.from_dict(data)
    assert restored.extra['trivial_bound'] == report.extra['trivial_bound']
    assert restored.salem == report.salem


@pytest.mark.parametrize("d,expected", [(2, math.sqrt(3)), (3, math.sqrt(14))])
def test_trivial_character_ratio(gf2, d, expected):
    """||A 1|| / ||1|| sobre F_2^d."""
    op = build_incidence(gf2, d, gf2.one)
    assert trivial_character_ratio(op) == pytest.approx(expected)


def test_indicator_count(gf3_operator):
    """nu(t) sobre todo el espacio es N(R)."""
    assert indicator_count(gf3_operator, range(9)) == 24
    assert indicator_count(gf3_operator, [0]) == 0


def test_mean_zero_project(gf3):
    """La proyección deja una función certificada en W."""
    f = GridFunction(gf3, 2, np.arange(9, dtype=float))
    projected = mean_zero_project(f)
    assert projected.mean_zero
    assert abs(projected.total()) < 1e-9


@pytest.mark.parametrize("fixture", ["gf3", "zmod4", "zmod9", "trunc2"])
def test_character_ratio_bounded_by_meanzero_norm(request, fixture):
    """Todo carácter no trivial está en W: ||A chi|| / ||chi|| <= norm_W."""
    ring = request.getfixturevalue(fixture)
    op = build_incidence(ring, 2, ring.one)
    norm_w = norm_on_meanzero(op, method="dense-svd").norm_W
    for index in range(1, op.points):
        image_norm, chi_norm = character_ratio(op, character(ring, decode_point(index, ring.size, 2)))
        assert image_norm / chi_norm <= norm_w * (1 + 1e-10)


@pytest.mark.parametrize("spec", [GF(3), GF(5), ZMod(4), ZMod(9), Trunc(GF(2), 2)])
def test_power_iteration_never_exceeds_dense(spec):
    """Los cocientes de Rayleigh acotan por debajo: la iteración no supera a la SVD densa."""
    ring = build_ring(spec)
    op = build_incidence(ring, 2, ring.one)
    for project, norm in ((True, norm_on_meanzero), (False, norm_on_all)):
        dense = getattr(norm(op, method="dense-svd"), "norm_W" if project else "norm_V")
        for seed in (0, 1, 2):
            value, _, _, _ = power_iteration(op, project, 1e-12, seed)
            assert value <= dense * (1 + 1e-12)


def test_spectral_report_rejects_meanzero_above_all(gf3_operator, monkeypatch):
    """norm_W > norm_V con ambos resolvedores convergidos es un error."""
    def shrunk_norm_on_all(op, tol=1e-10, method="auto", seed=42):
        return SpectralReport(spec=op.ring.name, d=op.d, t_label=op.t_label, norm_V=0.5)

    monkeypatch.setattr(spectral_module, "norm_on_all", shrunk_norm_on_all)
    with pytest.raises(ArgumentError):
        spectral_report(gf3_operator)


def test_parallel_products_match_serial(zmod9, monkeypatch):
    """Repartir filas entre hilos da exactamente el mismo resultado."""
    monkeypatch.setattr(operator_module, "PARALLEL_MIN_POINTS", 0)
    serial = build_incidence(zmod9, 2, zmod9.one, workers=1)
    threaded = build_incidence(zmod9, 2, zmod9.one, workers=3)
    assert threaded.parallel
    assert not serial.parallel

    rng = np.random.default_rng(11)
    block = rng.normal(size=(serial.points, 4))
    for transpose in (False, True):
        assert np.array_equal(threaded.matvec(block, transpose), serial.matvec(block, transpose))
        assert np.array_equal(threaded.matvec(block[:, 0], transpose),
                              serial.matvec(block[:, 0], transpose))

    assert power_iteration(threaded, True, 1e-12, 5) == power_iteration(serial, True, 1e-12, 5)
