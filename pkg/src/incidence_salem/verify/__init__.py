"""Verificación de las cotas, experimento E·E, grafos y escaneos."""

from .checks import (TheoremCheck, boolean_ratio, check_boolean_exact, check_field_upper,
                     check_incidence_count, check_matrix_lower, check_nakayama,
                     check_product_factorization, check_radical_size, check_semisimple_witness,
                     check_solver_agreement, check_trivial_char, check_unit_independence,
                     make_check, odd_subset_count, witness_set)
from .edot import (EdotEReport, brute_force_count, check_count_oracle, check_edot,
                   edot_experiment, ideal_obstruction, incidence_count_oracle)
from .graphs import GraphReport, check_graph, dot_product_graph, graph_analysis
from .jacobson import check_jacobson_amplification, jacobson_witness_bound
from .scan import SCAN_COLUMNS, field_family, scan_salem, scan_summary
from .suite import SUITE_NAMES, failing_ids, run_suite, suite_factories

__all__ = [
    'TheoremCheck', 'make_check', 'boolean_ratio', 'check_boolean_exact', 'check_field_upper',
    'check_incidence_count', 'check_matrix_lower', 'check_nakayama',
    'check_product_factorization', 'check_radical_size', 'check_semisimple_witness',
    'check_solver_agreement', 'check_trivial_char', 'check_unit_independence',
    'odd_subset_count', 'witness_set',
    'EdotEReport', 'brute_force_count', 'check_count_oracle', 'check_edot', 'edot_experiment',
    'ideal_obstruction', 'incidence_count_oracle',
    'GraphReport', 'check_graph', 'dot_product_graph', 'graph_analysis',
    'check_jacobson_amplification', 'jacobson_witness_bound',
    'SCAN_COLUMNS', 'field_family', 'scan_salem', 'scan_summary',
    'SUITE_NAMES', 'failing_ids', 'run_suite', 'suite_factories',
]
