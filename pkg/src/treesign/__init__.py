"""Spanning trees with monotone fundamental paths and alternating signs.

Every connected graph has a spanning tree on which signing each edge by
the parity of its deeper endpoint's depth alternates along every cotree
edge's fundamental path. The solver finds such a tree by potential
ascent, the verifier checks the property definitionally, and the oracle
validates both exhaustively on small graphs.
"""

from .graphs import (
    Edge,
    Graph,
    NormalizationLog,
    ParseError,
    Vertex,
    canonical_edge,
    connected_components,
    emit_edge_list,
    gnp_graph,
    graph_key,
    is_connected,
    make_graph,
    named_graph,
    parse_dimacs,
    parse_edge_list,
    to_dot,
)
from .oracle import (
    EnumerationLimitError,
    OracleReport,
    count_spanning_trees,
    enumerate_connected_graphs,
    enumerate_spanning_trees,
    exhaustive_check,
    max_potential_tree,
)
from .solver import (
    NoImprovingSwapError,
    Sign,
    SignLabeling,
    Solution,
    SolveTrace,
    VerificationReport,
    Violation,
    assign_signs,
    find_improving_swap,
    monotone_spanning_tree,
    solve,
    verify_alternating,
    verify_monotone,
)
from .trees import (
    DisconnectedGraphError,
    MonotoneReport,
    RootedTree,
    SwapMove,
    apply_swap,
    bfs_tree,
    cotree_edges,
    delta_potential,
    detached_component,
    fundamental_path,
    monotone_report,
    potential,
    require_connected,
    tree_from_edges,
)

__all__ = [
    "DisconnectedGraphError",
    "Edge",
    "EnumerationLimitError",
    "Graph",
    "MonotoneReport",
    "NoImprovingSwapError",
    "NormalizationLog",
    "OracleReport",
    "ParseError",
    "RootedTree",
    "Sign",
    "SignLabeling",
    "Solution",
    "SolveTrace",
    "SwapMove",
    "VerificationReport",
    "Vertex",
    "Violation",
    "apply_swap",
    "assign_signs",
    "bfs_tree",
    "canonical_edge",
    "connected_components",
    "cotree_edges",
    "count_spanning_trees",
    "delta_potential",
    "detached_component",
    "emit_edge_list",
    "enumerate_connected_graphs",
    "enumerate_spanning_trees",
    "exhaustive_check",
    "find_improving_swap",
    "fundamental_path",
    "gnp_graph",
    "graph_key",
    "is_connected",
    "make_graph",
    "max_potential_tree",
    "monotone_report",
    "monotone_spanning_tree",
    "named_graph",
    "parse_dimacs",
    "parse_edge_list",
    "potential",
    "require_connected",
    "solve",
    "to_dot",
    "tree_from_edges",
    "verify_alternating",
    "verify_monotone",
]
