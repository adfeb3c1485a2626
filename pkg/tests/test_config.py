"""
Tests de la configuración de ejecución.
"""

import pytest

from incidence_salem.config import (ALL_UNITS, RunConfig, apply_settings,
                                    load_run_config, validate_run_config)
from incidence_salem.utils.errors import ArgumentError


def test_defaults_are_valid_for_salem():
    """Con --ring, la configuración por defecto es válida."""
    config = RunConfig(ring_spec="gf(3)", workers=1)
    assert validate_run_config(config) == []
    assert config.d == 2
    assert config.t_label == "1"
    assert config.format == "json"


def test_lines_round_trip():
    """to_lines y from_lines son inversas."""
    config = RunConfig(command="scan", ring_spec="mat(2, gf(2))", d=3, t_label="[[1,1],[0,1]]",
                       tol=1e-9, seed=7, workers=2, output="out/tabla.csv", format="csv",
                       family=("gf(2,1)", "zmod(4)", "prod(gf(2),gf(3))"), trials=30, q=None,
                       use_cache=False, cache_dir="tmp/cache", log_level="DEBUG",
                       dump_adjacency=None)
    assert RunConfig.from_lines(config.to_lines()) == config


def test_dict_round_trip():
    config = RunConfig(ring_spec="zmod(4)", family=("gf(3)",))
    data = config.to_dict()
    assert data['family'] == ["gf(3)"]
    assert RunConfig.from_dict(data) == config


def test_with_overrides_ignores_none():
    config = RunConfig(d=3)
    updated = config.with_overrides(d=None, seed=5)
    assert updated.d == 3
    assert updated.seed == 5


def test_apply_settings_converts_values():
    """Las claves del archivo usan los nombres de las opciones."""
    config = apply_settings(RunConfig(), {
        'ring': "gf(5)", 't': "2", 'tol': "1e-8", 'cache': "false",
        'family': "gf(2); gf(3)", 'log-level': "debug", 'q': "",
    })
    assert config.ring_spec == "gf(5)"
    assert config.t_label == "2"
    assert config.tol == 1e-8
    assert config.use_cache is False
    assert config.family == ("gf(2)", "gf(3)")
    assert config.log_level == "DEBUG"
    assert config.q is None


def test_unknown_key_rejected():
    with pytest.raises(ArgumentError):
        apply_settings(RunConfig(), {'colour': "red"})


def test_invalid_value_rejected():
    with pytest.raises(ArgumentError):
        apply_settings(RunConfig(), {'d': "dos"})


def test_precedence_flags_over_file(tmp_path):
    """Opciones explícitas > archivo > valores por defecto."""
    path = tmp_path / "run.env"
    path.write_text('ring="gf(7)"\nd=3\nseed=11\n', encoding="utf-8")
    config = load_run_config(str(path), d=2, seed=None)
    assert config.ring_spec == "gf(7)"
    assert config.d == 2
    assert config.seed == 11


def test_missing_config_file(tmp_path):
    with pytest.raises(ArgumentError):
        load_run_config(str(tmp_path / "no-existe.env"))


@pytest.mark.parametrize("overrides,fragment", [
    ({'command': "plot"}, "Comando inválido"),
    ({'d': 0}, "d debe ser"),
    ({'tol': 0.0}, "tol"),
    ({'workers': 0}, "workers"),
    ({'format': "yaml"}, "Formato inválido"),
    ({'log_level': "LOUD"}, "Nivel de log"),
    ({'trials': 0}, "trials"),
    ({'ring_spec': None}, "requiere --ring"),
    ({'ring_spec': "gf(6)"}, "6 no es potencia de un primo"),
])
def test_validation_errors(overrides, fragment):
    config = RunConfig(ring_spec="gf(3)", workers=1)
    config = RunConfig.from_dict({**config.to_dict(), **overrides})
    errors = validate_run_config(config)
    assert any(fragment in error for error in errors)


def test_validation_of_other_commands():
    assert validate_run_config(RunConfig(command="verify", suite="nope", workers=1))
    assert validate_run_config(RunConfig(command="verify", suite="graphs", workers=1)) == []
    assert validate_run_config(RunConfig(command="scan", workers=1))
    assert validate_run_config(RunConfig(command="scan", family=("gf(2)", "zmod(x)"), workers=1))
    assert validate_run_config(RunConfig(command="graph", workers=1))
    assert validate_run_config(RunConfig(command="graph", q=3, workers=1)) == []
    edot_all = RunConfig(command="edot", ring_spec="gf(5)", t_label=ALL_UNITS, workers=1)
    assert any("all-units" in error for error in validate_run_config(edot_all))
