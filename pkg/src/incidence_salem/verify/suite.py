"""
Suites de verificación ejecutables desde la línea de comandos.
"""

from functools import partial
from typing import Callable, Dict, List, Sequence, Tuple

from ..rings.spec import GF, Mat, Prod, Trunc, ZMod, field_spec
from ..utils.errors import ArgumentError, IncidenceSalemError
from ..utils.logging import get_logger
from .checks import (TheoremCheck, check_boolean_exact, check_field_upper, check_incidence_count,
                     check_matrix_lower, check_nakayama, check_product_factorization,
                     check_radical_size, check_semisimple_witness, check_solver_agreement,
                     check_trivial_char, check_unit_independence, make_check,
                     odd_subset_count)
from .edot import check_count_oracle, check_edot, ideal_obstruction
from .graphs import check_graph
from .jacobson import check_jacobson_amplification

logger = get_logger(__name__)

CheckFactory = Callable[[], TheoremCheck]

F2, F3 = GF(2), GF(3)
JACOBSON_RINGS = (ZMod(4), ZMod(9), Trunc(F2, 2))

# m^d <= 100
ORACLE_CASES = tuple(
    [(field_spec(q), 2) for q in (2, 3, 4, 5, 7, 8, 9)]
    + [(ZMod(n), 2) for n in (4, 6, 8, 9, 10)]
    + [(Prod((F2, F2)), 2), (Trunc(F2, 2), 2), (Trunc(F3, 2), 2)]
    + [(spec, 3) for spec in (F2, F3, field_spec(4), ZMod(4), Prod((F2, F2)), Trunc(F2, 2))]
)
# m^3 <= 512
SOLVER_CASES_D3 = (F2, F3, field_spec(4), field_spec(5), field_spec(7), field_spec(8),
                   ZMod(4), Prod((F2, F2)), Trunc(F2, 2))


def _odd_subsets() -> TheoremCheck:
    counts = [odd_subset_count(k) for k in range(1, 13)]
    expected = [2 ** (k - 1) for k in range(1, 13)]
    mismatches = sum(1 for a, b in zip(counts, expected) if a != b)
    return make_check("oddSubsets", "k=1..12", mismatches, 0, "<=", tolerance=0.0)


def _fields(full: bool) -> List[CheckFactory]:
    cases = [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2), (7, 2)]
    if full:
        cases += [(8, 2), (9, 2), (3, 3), (4, 3), (5, 3), (7, 3), (8, 3), (9, 3)]
    factories: List[CheckFactory] = [partial(check_field_upper, q, d) for q, d in cases]
    factories += [partial(check_unit_independence, field_spec(q), 2) for q in (4, 5)]
    counted = [(q, d) for q in (2, 3, 4, 5, 7) for d in (2, 3)] if full else [(3, 2), (2, 3)]
    factories += [partial(check_incidence_count, field_spec(q), d) for q, d in counted]
    factories += [partial(check_boolean_exact, d) for d in range(2, 7 if full else 4)]
    factories += [partial(check_trivial_char, F2, d) for d in (2, 3)]
    factories.append(_odd_subsets)
    return factories


def _matrix(full: bool) -> List[CheckFactory]:
    factories: List[CheckFactory] = [
        partial(check_matrix_lower, 2, 2, 2),
        partial(check_matrix_lower, 1, 3, 2),
        partial(check_incidence_count, Mat(2, F2), 2),
        partial(check_trivial_char, Mat(2, F2), 2),
        partial(check_unit_independence, Mat(2, F2), 2),
    ]
    if full:
        factories.append(partial(check_matrix_lower, 2, 3, 2))
    return factories


def _products(full: bool) -> List[CheckFactory]:
    factories: List[CheckFactory] = [
        partial(check_product_factorization, F2, F3, 2),
        partial(check_product_factorization, F2, F3, 2, dual1=(1, 0)),
        partial(check_product_factorization, F2, F3, 2, dual1=(1, 1), dual2=(0, 2)),
        partial(check_product_factorization, F2, F2, 2),
        partial(check_product_factorization, F2, F2, 2, dual1=(1, 0)),
        partial(check_product_factorization, F2, F2, 2, dual2=(0, 1)),
        partial(check_product_factorization, F2, F2, 2, dual1=(1, 1), dual2=(1, 0)),
        partial(check_semisimple_witness, Prod((F2, F3)), 2),
        partial(check_semisimple_witness, Prod((F2, F2)), 3),
    ]
    if full:
        factories += [
            partial(check_product_factorization, F2, F3, 2, t2="2", dual1=(0, 1), dual2=(1, 1)),
            partial(check_semisimple_witness, Prod((Mat(2, F2), F2)), 2),
        ]
    return factories


def _jacobson(full: bool) -> List[CheckFactory]:
    rings = JACOBSON_RINGS if full else JACOBSON_RINGS[:1]
    factories: List[CheckFactory] = [partial(check_jacobson_amplification, spec, 2) for spec in rings]
    factories += [partial(check_nakayama, spec) for spec in rings + ((Trunc(F3, 2),) if full else ())]
    factories += [partial(check_radical_size, spec, 2) for spec in rings]
    factories.append(partial(check_unit_independence, ZMod(4), 2))
    return factories


def _edot(full: bool) -> List[CheckFactory]:
    trials = 200 if full else 50
    factories: List[CheckFactory] = [partial(check_edot, spec, 2, trials=trials) for spec in (GF(5), GF(7))]
    factories.append(partial(ideal_obstruction, ZMod(4), 2))
    oracle_cases = ORACLE_CASES if full else ((F3, 2), (ZMod(4), 2))
    factories += [partial(check_count_oracle, spec, d) for spec, d in oracle_cases]
    return factories


def _solvers(full: bool) -> List[CheckFactory]:
    specs = [GF(2), GF(3), ZMod(4), Trunc(F2, 2)]
    if full:
        specs += [field_spec(q) for q in (4, 5, 7, 8, 9)] + [ZMod(6), ZMod(8), ZMod(9), Mat(2, F2)]
    factories: List[CheckFactory] = [partial(check_solver_agreement, spec, 2) for spec in specs]
    if full:
        factories += [partial(check_solver_agreement, spec, 3) for spec in SOLVER_CASES_D3]
    return factories


def _graphs(full: bool) -> List[CheckFactory]:
    cases = [(3, 2), (2, 3), (2, 2)] + ([(5, 2), (3, 3)] if full else [])
    return [partial(check_graph, q, d) for q, d in cases]


SUITES: Dict[str, Callable[[bool], List[CheckFactory]]] = {
    'fields': _fields,
    'matrix': _matrix,
    'products': _products,
    'jacobson': _jacobson,
    'edot': _edot,
    'graphs': _graphs,
    'solvers': _solvers,
}
SUITE_NAMES: Tuple[str, ...] = ("all", "quick") + tuple(SUITES)


def suite_factories(name: str) -> List[CheckFactory]:
    """
    Verificaciones de una suite.

    'all' recorre todas las suites completas y 'quick' la versión reducida de
    cada una.

    Raises:
        ArgumentError: Si la suite no existe
    """
    if name == "all":
        return [f for builder in SUITES.values() for f in builder(True)]
    if name == "quick":
        return [f for builder in SUITES.values() for f in builder(False)]
    if name not in SUITES:
        raise ArgumentError(f"Suite desconocida: {name}. Opciones: {', '.join(SUITE_NAMES)}")
    return SUITES[name](True)


def _describe(factory: CheckFactory) -> str:
    if isinstance(factory, partial):
        args = ", ".join(str(a) for a in factory.args)
        return f"{factory.func.__name__}({args})"
    return getattr(factory, "__name__", repr(factory))


def run_suite(name: str) -> List[TheoremCheck]:
    """
    Ejecutar una suite y devolver sus TheoremCheck en orden.

    Una verificación que lanza una excepción del dominio queda registrada como
    fallida, sin cortar el resto de la suite.
    """
    checks = []
    for factory in suite_factories(name):
        try:
            checks.append(factory())
        except IncidenceSalemError as e:
            logger.error(f"❌ {_describe(factory)}: {e}")
            checks.append(TheoremCheck(_describe(factory), "", float('nan'), float('nan'),
                                       passed=False, details={'error': str(e)}))
    passed = sum(1 for c in checks if c.passed)
    logger.info(f"Suite '{name}': {passed}/{len(checks)} verificaciones correctas")
    return checks


def failing_ids(checks: Sequence[TheoremCheck]) -> List[str]:
    return [f"{c.id} [{c.instance}]" for c in checks if not c.passed]
