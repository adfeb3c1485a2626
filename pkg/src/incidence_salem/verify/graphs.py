"""
Grafos de producto punto G(R, d, t).

Los vértices son los vectores no nulos de R^d y x ~ y cuando y·x = t. Sobre
un cuerpo la relación es simétrica y el grafo resulta no dirigido.
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import networkx as nx
import numpy as np

from ..incidence.operator import IncidenceOperator
from ..rings.ring_table import RingTable, build_ring, element_index
from ..rings.spec import field_spec
from ..utils.errors import ArgumentError, ScaleError
from ..utils.logging import get_logger
from .checks import TheoremCheck, cached_incidence, instance_name, make_check

logger = get_logger(__name__)

MAX_GRAPH_POINTS = 4096
EIGEN_ZERO = 1e-9


@dataclass
class GraphReport:
    """
    Estructura espectral y combinatoria de un grafo de producto punto.

    Attributes:
        spec, d, t_label: Instancia
        vertices: q^d - 1
        edges: Aristas no dirigidas (incluye lazos)
        self_loops: Vértices con x·x = t
        regular_degree: Grado común de las filas, o None si no es regular
        components: Cantidad de componentes conexas
        big_component_size: Tamaño de la mayor componente
        connected: El grafo es conexo
        laplacian_gap: Menor autovalor no nulo del laplaciano deg I - A
        laplacian_bound: q^{d-1} - sqrt(2) q^{(d-1)/2}
        adjacency_min, adjacency_max: Extremos del espectro de adyacencia
        connectivity_required: d > 2 o q > 2
    """

    spec: str
    d: int
    t_label: str
    vertices: int
    edges: int
    self_loops: int
    regular_degree: Optional[int]
    components: int
    big_component_size: int
    connected: bool
    laplacian_gap: float
    laplacian_bound: float
    adjacency_min: float
    adjacency_max: float
    connectivity_required: bool

    @property
    def adjacency_spectrum_extremes(self) -> Tuple[float, float]:
        return self.adjacency_min, self.adjacency_max

    @property
    def passed(self) -> bool:
        gap_ok = self.laplacian_gap >= self.laplacian_bound - 1e-6
        return gap_ok and (self.connected or not self.connectivity_required)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['passed'] = self.passed
        return data


def _adjacency(op: IncidenceOperator) -> np.ndarray:
    """Adyacencia densa restringida a los vértices no nulos (el 0 es el índice 0)."""
    dense = op.matrix.toarray()[1:, 1:]
    if not np.array_equal(dense, dense.T):
        raise ArgumentError(f"La relación y·x = t no es simétrica en {op.ring.name}")
    return dense


def dot_product_graph(ring: RingTable, d: int, t: int) -> nx.Graph:
    """
    Construir G(R, d, t) como grafo de networkx (nodos = índices de punto).

    Raises:
        ArgumentError: Si el anillo no es conmutativo
        ScaleError: Si |R|^d > 4096
    """
    if not ring.is_commutative:
        raise ArgumentError(f"{ring.name} no es conmutativo: el grafo de producto punto sería dirigido")
    points = ring.size ** d
    if points > MAX_GRAPH_POINTS:
        raise ScaleError("|R|^d", points, MAX_GRAPH_POINTS)
    op = cached_incidence(ring, d, t)
    adjacency = _adjacency(op)
    graph = nx.Graph()
    graph.add_nodes_from(range(1, points))
    rows, cols = np.nonzero(np.triu(adjacency))
    graph.add_edges_from(zip((rows + 1).tolist(), (cols + 1).tolist()))
    return graph


def graph_analysis(q: int, d: int, t: str = "1") -> GraphReport:
    """
    Analizar el grafo de producto punto sobre F_q^d.

    Args:
        q: Potencia de un primo
        d: Dimensión
        t: Etiqueta de la unidad

    Returns:
        GraphReport: Regularidad, conexidad y brecha espectral del laplaciano

    Raises:
        ArgumentError: Si q no es potencia de un primo
    """
    ring = build_ring(field_spec(q))
    t_index = element_index(ring, t)
    op = cached_incidence(ring, d, t_index)
    graph = dot_product_graph(ring, d, t_index)
    adjacency = _adjacency(op)

    # networkx cuenta los lazos dos veces en el grado
    degrees = adjacency.sum(axis=1)
    regular = int(degrees[0]) if np.all(degrees == degrees[0]) else None

    components = list(nx.connected_components(graph))
    biggest = max(len(c) for c in components)

    laplacian = np.diag(degrees) - adjacency
    eigenvalues = np.linalg.eigvalsh(laplacian)
    nonzero = eigenvalues[eigenvalues > EIGEN_ZERO]
    gap = float(nonzero.min()) if len(nonzero) else 0.0
    adjacency_spectrum = np.linalg.eigvalsh(adjacency)

    report = GraphReport(
        spec=ring.name, d=d, t_label=ring.labels[t_index],
        vertices=graph.number_of_nodes(), edges=graph.number_of_edges(),
        self_loops=nx.number_of_selfloops(graph),
        regular_degree=regular, components=len(components), big_component_size=biggest,
        connected=len(components) == 1, laplacian_gap=gap,
        laplacian_bound=q ** (d - 1) - math.sqrt(2) * q ** ((d - 1) / 2),
        adjacency_min=float(adjacency_spectrum.min()), adjacency_max=float(adjacency_spectrum.max()),
        connectivity_required=d > 2 or q > 2,
    )
    logger.info(f"Grafo {report.spec} d={d}: {report.vertices} vértices, grado {regular}, "
                f"{report.components} componente(s), lambda = {gap:.6f}")
    return report


def check_graph(q: int, d: int, t: str = "1") -> TheoremCheck:
    """Brecha del laplaciano >= q^{d-1} - sqrt(2) q^{(d-1)/2} y conexidad cuando corresponde."""
    report = graph_analysis(q, d, t)
    ring = build_ring(field_spec(q))
    regular_ok = report.regular_degree == q ** (d - 1)
    connected_ok = report.connected or not report.connectivity_required
    return make_check("dotProductGraph", instance_name(ring, d, element_index(ring, t)),
                      report.laplacian_gap, report.laplacian_bound, ">=",
                      regular_degree=report.regular_degree, connected=report.connected,
                      components=report.components,
                      extra_ok=regular_ok and connected_ok and report.big_component_size == q ** d - 1)
