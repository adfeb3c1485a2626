"""
Tests del parser de specs, la emisión de reportes y el caché de resultados.
"""

import json

import pandas as pd
import pytest

from incidence_salem.incidence import SpectralReport, spectral_report
from incidence_salem.io import (ResultCache, adjacency_dump, cache_key,
                                canonical_spec, parse_ring_spec, render,
                                to_csv, to_json, to_text, write_adjacency,
                                write_output)
from incidence_salem.rings import GF, Mat, Prod, Trunc, ZMod
from incidence_salem.utils.errors import (ArgumentError, SpecParseError,
                                          SpecSemanticError)


class TestSpecParser:
    """Mini-lenguaje de specs."""

    @pytest.mark.parametrize("text,expected", [
        ("zmod(4)", ZMod(4)),
        ("gf(3)", GF(3)),
        ("gf(4)", GF(2, 2)),
        ("gf(2, 2)", GF(2, 2)),
        ("gf(2,2,[1,1,1])", GF(2, 2, (1, 1, 1))),
        ("mat(2, gf(2))", Mat(2, GF(2))),
        ("prod(gf(2), gf(3))", Prod((GF(2), GF(3)))),
        ("trunc(gf(2), 2)", Trunc(GF(2), 2)),
        ("prod(zmod(4), mat(2, gf(3)))", Prod((ZMod(4), Mat(2, GF(3))))),
    ])
    def test_parse(self, text, expected):
        assert parse_ring_spec(text) == expected

    @pytest.mark.parametrize("text,canonical", [
        ("  zmod( 4 ) ", "zmod(4)"),
        ("gf(3)", "gf(3,1)"),
        ("gf(4)", "gf(2,2,[1,1,1])"),
        ("mat(2,gf(3))", "mat(2,gf(3,1))"),
        ("prod(gf(2), zmod(4))", "prod(gf(2,1),zmod(4))"),
        ("trunc(gf(2),2)", "trunc(gf(2,1),2)"),
    ])
    def test_canonical(self, text, canonical):
        assert canonical_spec(text) == canonical

    def test_canonical_is_fixed_point(self):
        text = "prod(gf(9), trunc(gf(3), 3))"
        once = canonical_spec(text)
        assert canonical_spec(once) == once

    def test_non_prime_power_field(self):
        """gf(6) es sintácticamente válido pero no es un cuerpo."""
        with pytest.raises(SpecSemanticError, match="6 no es potencia de un primo"):
            parse_ring_spec("gf(6)")

    @pytest.mark.parametrize("text,position", [
        ("zmod(4", 6),
        ("zmod(4))", 7),
        ("foo(3)", 0),
        ("zmod(4 $)", 7),
        ("zmod()", 5),
    ])
    def test_parse_error_position(self, text, position):
        with pytest.raises(SpecParseError) as excinfo:
            parse_ring_spec(text)
        assert excinfo.value.position == position

    def test_parse_error_names_expected_token(self):
        with pytest.raises(SpecParseError) as excinfo:
            parse_ring_spec("zmod(4")
        assert excinfo.value.expected == "',' o ')'"

    def test_unknown_constructor_lists_options(self):
        with pytest.raises(SpecParseError) as excinfo:
            parse_ring_spec("poly(3)")
        assert "zmod" in excinfo.value.expected

    @pytest.mark.parametrize("text", ["mat(2, zmod(4))", "trunc(zmod(4), 2)", "zmod(gf(2))",
                                      "gf(2, 2, 3)", "prod(3)"])
    def test_semantic_errors(self, text):
        with pytest.raises(SpecSemanticError):
            parse_ring_spec(text)

    def test_empty_spec(self):
        with pytest.raises(SpecParseError):
            parse_ring_spec("   ")

    def test_errors_are_argument_errors(self):
        """Los errores del parser se tratan como errores de argumentos."""
        with pytest.raises(ArgumentError):
            parse_ring_spec("gf(6)")


class TestReportWriter:
    """Formatos de salida."""

    def test_json_float_digits(self):
        text = to_json({'value': 0.1, 'one': 1.0, 'n': 3, 'flag': True})
        data = json.loads(text)
        assert '"value": 0.10000000000000001' in text
        assert '"one": 1.0' in text
        assert data == {'value': 0.1, 'one': 1.0, 'n': 3, 'flag': True}

    def test_json_round_trips_exactly(self):
        value = 2 ** -0.5
        assert json.loads(to_json({'salem': value}))['salem'] == value

    def test_json_non_finite_is_null(self):
        data = json.loads(to_json({'a': float('nan'), 'b': float('inf'), 'c': None}))
        assert data == {'a': None, 'b': None, 'c': None}

    def test_json_is_deterministic(self):
        payload = {'b': [1, 2.5], 'a': {'x': "ñ"}}
        assert to_json(payload) == to_json(payload)
        assert "ñ" in to_json(payload)

    def test_csv_digits(self):
        text = to_csv([{'spec': "gf(3,1)", 'salem': 1 / 3}])
        lines = text.splitlines()
        assert lines[0] == "spec,salem"
        assert lines[1] == "gf(3,1),0.333333333333"

    def test_csv_flattens_nested(self):
        text = to_csv({'id': "x", 'details': {'norm': 2.0}, 'dual': [1, 2]})
        header = text.splitlines()[0].split(",")
        assert "details.norm" in header
        assert "dual" in header

    def test_text_single_record(self):
        text = to_text({'spec': "zmod(4)", 'salem': 1.0})
        assert text.splitlines()[0].startswith("spec")
        assert "zmod(4)" in text

    def test_render_dataframe(self):
        frame = pd.DataFrame([{'spec': "gf(2,1)", 'salem': 0.5}])
        assert render(frame, "csv").startswith("spec,salem")
        assert "gf(2,1)" in render(frame, "text")

    def test_render_unknown_format(self):
        with pytest.raises(ArgumentError):
            render({'a': 1}, "yaml")

    def test_render_report(self, gf3_operator):
        report = spectral_report(gf3_operator)
        data = json.loads(render(report, "json"))
        assert data['spec'] == "gf(3,1)"
        assert data['salem'] == pytest.approx(1.0)

    def test_write_output_file(self, tmp_path):
        target = tmp_path / "out" / "report.json"
        write_output("{}\n", str(target))
        assert target.read_text(encoding="utf-8") == "{}\n"

    def test_write_output_stdout(self, capsys):
        write_output("hola\n", "-")
        assert capsys.readouterr().out == "hola\n"

    def test_adjacency_dump(self, gf3_operator):
        dump = adjacency_dump(gf3_operator)
        lines = dump['csv'].splitlines()
        assert lines[0] == "x_index,y_index"
        assert len(lines) == 1 + 24
        pairs = [tuple(map(int, line.split(","))) for line in lines[1:]]
        assert pairs == sorted(pairs)
        header = json.loads(dump['header'])
        assert header == {'spec': "gf(3,1)", 'd': 2, 't_label': "1", 'incidences': 24}

    def test_write_adjacency(self, gf3_operator, tmp_path):
        path = tmp_path / "adjacency.csv"
        write_adjacency(gf3_operator, path)
        assert path.exists()
        assert json.loads(path.with_suffix(".json").read_text())['incidences'] == 24


class TestResultCache:
    """Caché de reportes en memoria y archivo."""

    def test_key_depends_on_tolerance(self):
        assert cache_key("gf(3,1)", 2, "1", 1e-10) != cache_key("gf(3,1)", 2, "1", 1e-9)
        assert cache_key("gf(3,1)", 2, "1", 1e-10) == cache_key("gf(3,1)", 2, "1", 1e-10)

    def test_key_ignores_whitespace(self):
        assert cache_key("mat(2, gf(2,1))", 2, "1", 1e-10) == cache_key("mat(2,gf(2,1))", 2, "1", 1e-10)

    def test_miss_then_hit(self, cache_dir, gf3_operator):
        cache = ResultCache(cache_dir)
        assert cache.get_report("gf(3,1)", 2, "1", 1e-10) is None
        report = spectral_report(gf3_operator)
        text = cache.put_report(report)
        key = cache_key(report.spec, report.d, report.t_label, report.tolerance)
        assert cache.get_text(key) == text
        cached = cache.get_report(report.spec, report.d, report.t_label, report.tolerance)
        assert cached.salem == report.salem
        assert cache.stats()['hits'] == 2
        assert cache.stats()['misses'] == 1

    def test_file_level_hit_is_byte_identical(self, cache_dir, gf3_operator):
        """Un proceso nuevo lee exactamente el mismo texto del archivo."""
        text = ResultCache(cache_dir).put_report(spectral_report(gf3_operator))
        fresh = ResultCache(cache_dir)
        key = cache_key("gf(3,1)", 2, "1", 1e-10)
        assert fresh.get_text(key) == text
        assert fresh.stats()['memory_entries'] == 1

    def test_other_tolerance_misses(self, cache_dir, gf3_operator):
        cache = ResultCache(cache_dir)
        cache.put_report(spectral_report(gf3_operator))
        assert cache.get_report("gf(3,1)", 2, "1", 1e-6) is None

    def test_unreadable_entry_is_a_miss(self, cache_dir):
        cache = ResultCache(cache_dir)
        key = cache_key("gf(3,1)", 2, "1", 1e-10)
        (cache_dir / f"{key}.json").write_text("{roto", encoding="utf-8")
        assert cache.get_text(key) is None

    def test_no_temporary_files_left(self, cache_dir, gf3_operator):
        cache = ResultCache(cache_dir)
        cache.put_report(spectral_report(gf3_operator))
        assert not list(cache_dir.glob(".tmp-*"))

    def test_clear(self, cache_dir, gf3_operator):
        cache = ResultCache(cache_dir)
        cache.put_report(spectral_report(gf3_operator))
        cache.clear()
        assert cache.stats()['file_entries'] == 0
        assert cache.stats()['memory_entries'] == 0

    def test_report_round_trip(self, cache_dir, gf3_operator):
        cache = ResultCache(cache_dir)
        report = spectral_report(gf3_operator)
        cache.put_report(report)
        restored = cache.get_report(report.spec, report.d, report.t_label, report.tolerance)
        assert isinstance(restored, SpectralReport)
        assert restored.to_dict() == report.to_dict()
