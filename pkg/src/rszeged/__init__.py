"""Revised Szeged index of tricyclic graphs: exact indices, generators and extremal sweeps."""

from .canon import Certificate, certificate
from .families import (
    BaseMultigraph,
    SubdivisionAssignment,
    ThetaParams,
    base_multigraphs,
    enumerate_assignments,
    random_tricyclic_with_pendant,
    subdivide,
    theta,
)
from .graph import (
    UNREACHABLE,
    DistanceRow,
    Graph,
    GraphError,
    build_graph,
    cut_vertices,
    cyclomatic_class,
    distances_from,
    shortest_cycle_through_edge,
)
from .graph6 import decode as graph6_decode
from .graph6 import encode as graph6_encode
from .indices import (
    EdgePartition,
    IndexReport,
    delta,
    edge_partition,
    fn_closed_form_q,
    format_quarter,
    index_report,
    revised_szeged_q,
    revised_szeged_q_via_identity,
    szeged,
    wiener,
)
from .search import (
    ExtremalReport,
    check_lemma31,
    check_pendant_lemma,
    crossover_scan,
    enumerate_small,
    sweep_pendant_free,
    verify_bound,
)

__version__ = "0.1.0"
