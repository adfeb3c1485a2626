"""
Punto de entrada principal de Incidence-Salem.

Este módulo provee la interfaz de línea de comandos y coordina los
componentes: anillos, operador de incidencia, verificaciones y reportes.
"""

import json
import sys
from typing import Any, Dict, List, Optional, Tuple

import click

from .config import ALL_UNITS, RunConfig, load_run_config, validate_run_config
from .incidence import SpectralReport, build_incidence, spectral_report
from .io import ResultCache, parse_ring_spec, render, write_adjacency, write_output
from .io.result_cache import cache_key
from .rings import build_ring, element_index, principal_left_ideals, ring_summary
from .utils import IncidenceSalemError, get_logger, setup_logging
from .utils.helpers import relative_deviation
from .verify import (edot_experiment, failing_ids, graph_analysis, run_suite, scan_salem,
                     scan_summary)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


class IncidenceSalemApp:
    """Aplicación de línea de comandos de Incidence-Salem."""

    def __init__(self, config: RunConfig):
        """
        Inicializar la aplicación.

        Args:
            config: Configuración ya combinada (opciones > archivo > entorno)
        """
        self.config = config
        self._cache: Optional[ResultCache] = None

    @property
    def cache(self) -> ResultCache:
        if self._cache is None:
            self._cache = ResultCache(self.config.cache_dir)
        return self._cache

    def run(self) -> int:
        """
        Ejecutar el comando configurado.

        Returns:
            int: 0 si todo pasó, 1 si alguna verificación falló o no convergió,
            2 ante errores de argumentos o de escala
        """
        errors = validate_run_config(self.config)
        if errors:
            logger.error("❌ Errores de configuración:")
            for error in errors:
                logger.error(f"  - {error}")
            return EXIT_ERROR

        handler = getattr(self, f"_run_{self.config.command}")
        try:
            return handler()
        except IncidenceSalemError as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            return EXIT_ERROR

    def _emit(self, payload: Any):
        write_output(render(payload, self.config.format), self.config.output)

    def _run_info(self) -> int:
        spec = parse_ring_spec(self.config.ring_spec)
        ring = build_ring(spec)
        summary = ring_summary(ring)
        summary['principal_left_ideals'] = len(principal_left_ideals(ring))
        summary['unit_labels'] = [ring.labels[u] for u in ring.units]
        self._emit(summary)
        return EXIT_OK

    def _solve(self, spec_text: str, d: int, t: int, ring) -> Tuple[SpectralReport, Optional[str]]:
        """Reporte espectral de una unidad, consultando la caché antes de resolver."""
        config = self.config
        t_label = ring.labels[t]
        op = None
        # El volcado se escribe también cuando el reporte sale de la caché
        if config.dump_adjacency:
            op = build_incidence(ring, d, t, workers=config.workers)
            write_adjacency(op, config.dump_adjacency)

        if config.use_cache:
            text = self.cache.get_text(cache_key(spec_text, d, t_label, config.tol))
            if text is not None:
                logger.info(f"Reporte de caché para {spec_text} d={d} t={t_label}")
                report = SpectralReport.from_dict(json.loads(text))
                return report, text

        if op is None:
            op = build_incidence(ring, d, t, workers=config.workers)
        report = spectral_report(op, tol=config.tol, seed=config.seed)
        text = self.cache.put_report(report) if config.use_cache else None
        return report, text

    def _run_salem(self) -> int:
        config = self.config
        spec = parse_ring_spec(config.ring_spec)
        ring = build_ring(spec)
        canonical = spec.canonical()

        if config.t_label == ALL_UNITS:
            units = [int(u) for u in ring.units]
        else:
            units = [element_index(ring, config.t_label)]

        results: List[Tuple[SpectralReport, Optional[str]]] = [
            self._solve(canonical, config.d, t, ring) for t in units
        ]
        reports = [report for report, _ in results]

        if len(reports) == 1:
            report, text = results[0]
            if config.format == "json" and text is not None:
                write_output(text, config.output)
            else:
                self._emit(report)
        else:
            norms = [r.norm_W for r in reports]
            deviation = max(relative_deviation(n, norms[0]) for n in norms)
            logger.info(f"Desvío relativo máximo de norm_W entre {len(norms)} unidades: {deviation:.3e}")
            if config.format == "json":
                self._emit({'reports': reports, 'max_relative_deviation': deviation})
            else:
                self._emit(reports)

        not_converged = [r.t_label for r in reports if not r.converged]
        if not_converged:
            logger.error(f"❌ Sin convergencia para t en {', '.join(not_converged)}")
            return EXIT_FAILED
        return EXIT_OK

    def _run_verify(self) -> int:
        checks = run_suite(self.config.suite)
        self._emit(checks)
        failing = failing_ids(checks)
        if failing:
            logger.error(f"❌ {len(failing)} verificación(es) fallidas:")
            for check_id in failing:
                logger.error(f"  - {check_id}")
            return EXIT_FAILED
        logger.info(f"✅ Las {len(checks)} verificaciones pasaron")
        return EXIT_OK

    def _run_scan(self) -> int:
        config = self.config
        family = [parse_ring_spec(text) for text in config.family]
        table = scan_salem(family, config.d, tol=config.tol, seed=config.seed, workers=config.workers)
        payload: Any = table.to_dict(orient="records") if config.format == "json" else table
        self._emit(payload)
        summary = scan_summary(table)
        logger.info(f"Escaneo: {summary['rows']} filas, {summary['errors']} con error, "
                    f"salem máximo {summary['max_salem']:.6f}")
        return EXIT_FAILED if summary['errors'] or summary['not_converged'] else EXIT_OK

    def _run_edot(self) -> int:
        config = self.config
        spec = parse_ring_spec(config.ring_spec)
        report = edot_experiment(spec, config.d, config.t_label, trials=config.trials,
                                 seed=config.seed, tol=config.tol)
        self._emit(report)
        return EXIT_OK if report.passed or report.vacuous else EXIT_FAILED

    def _run_graph(self) -> int:
        config = self.config
        report = graph_analysis(config.q, config.d, config.t_label)
        self._emit(report)
        return EXIT_OK if report.passed else EXIT_FAILED


def run(config: RunConfig) -> int:
    """Ejecutar una configuración y devolver el código de salida."""
    return IncidenceSalemApp(config).run()


def _common_options(function):
    """Opciones compartidas por todos los subcomandos."""
    options = [
        click.option("--format", "format", type=click.Choice(["json", "csv", "text"]), default=None,
                     help="Formato de salida (json por defecto)"),
        click.option("--output", default=None, help="Archivo de salida o '-' para stdout"),
        click.option("--workers", type=int, default=None, help="Hilos de trabajo"),
        click.option("--seed", type=int, default=None, help="Semilla"),
        click.option("--tol", type=float, default=None, help="Tolerancia del cálculo espectral"),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def _execute(ctx: click.Context, command: str, **flags: Any):
    """Combinar configuración, ejecutar y salir con el código correspondiente."""
    settings: Dict[str, Any] = ctx.obj or {}
    try:
        config = load_run_config(settings.get('config_file'), command=command, **flags)
    except IncidenceSalemError as e:
        setup_logging(settings.get('log_level') or "INFO")
        logger.error(f"❌ {e}")
        ctx.exit(EXIT_ERROR)
    setup_logging(settings.get('log_level') or config.log_level)
    ctx.exit(run(config))


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Logging en nivel DEBUG")
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None,
              help="Archivo key=value con opciones")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, config_file: Optional[str]):
    """Números de Incidence-Salem del producto punto sobre anillos finitos."""
    ctx.ensure_object(dict)
    ctx.obj['config_file'] = config_file
    ctx.obj['log_level'] = "DEBUG" if verbose else None


@cli.command()
@click.option("--ring", "ring_spec", default=None, help="Spec del anillo, p. ej. 'mat(2,gf(2))'")
@_common_options
@click.pass_context
def info(ctx: click.Context, **flags):
    """Resumen estructural de un anillo."""
    _execute(ctx, "info", **flags)


@cli.command()
@click.option("--ring", "ring_spec", default=None, help="Spec del anillo")
@click.option("--d", type=int, default=None, help="Dimensión")
@click.option("--t", "t_label", default=None, help="Etiqueta de la unidad o 'all-units'")
@click.option("--cache/--no-cache", "use_cache", default=None, help="Consultar la caché de resultados")
@click.option("--dump-adjacency", default=None, help="Volcar la adyacencia del operador en CSV")
@_common_options
@click.pass_context
def salem(ctx: click.Context, **flags):
    """Normas del operador de incidencia y número de Incidence-Salem."""
    _execute(ctx, "salem", **flags)


@cli.command()
@click.option("--suite", type=click.Choice(["all", "quick", "fields", "matrix", "products",
                                            "jacobson", "edot", "graphs", "solvers"]),
              default=None, help="Suite de verificaciones")
@_common_options
@click.pass_context
def verify(ctx: click.Context, **flags):
    """Verificar las cotas a escala de escritorio."""
    _execute(ctx, "verify", **flags)


@cli.command()
@click.option("--family", multiple=True, help="Spec de anillo (repetible)")
@click.option("--d", type=int, default=None, help="Dimensión")
@_common_options
@click.pass_context
def scan(ctx: click.Context, family: Tuple[str, ...], **flags):
    """Escanear el número de Incidence-Salem sobre una familia de anillos."""
    _execute(ctx, "scan", family=family or None, **flags)


@cli.command()
@click.option("--ring", "ring_spec", default=None, help="Spec del anillo")
@click.option("--d", type=int, default=None, help="Dimensión")
@click.option("--t", "t_label", default=None, help="Etiqueta de la unidad")
@click.option("--trials", type=int, default=None, help="Cantidad de ensayos")
@_common_options
@click.pass_context
def edot(ctx: click.Context, **flags):
    """Experimento E·E sobre conjuntos aleatorios por encima del umbral."""
    _execute(ctx, "edot", **flags)


@cli.command()
@click.option("--q", type=int, default=None, help="Orden del cuerpo")
@click.option("--d", type=int, default=None, help="Dimensión")
@click.option("--t", "t_label", default=None, help="Etiqueta de la unidad")
@_common_options
@click.pass_context
def graph(ctx: click.Context, **flags):
    """Grafo de producto punto sobre F_q^d."""
    _execute(ctx, "graph", **flags)


def main():
    """Punto de entrada principal para la aplicación."""
    cli(obj={})


if __name__ == "__main__":
    sys.exit(main())
