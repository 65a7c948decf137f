"""Replacement paths on undirected graphs and DAGs via concise-matrix row minima."""
from ._accel import backend
from .concise_matrix import (
    INF, ConciseMatrix, KConciseMatrix, MatrixFormatError, MinimaResult, decompose_k_concise,
)
from .graph import Graph, GraphError, PathSpec, SsspResult, levels, sssp, sssp_to, tree_path
from .pred_structure import PredTable
from .reductions import (
    ReductionContext, build_g0, classify_negative_edges, edge_replacement_matrix,
    node_replacement_matrix, subdivide_for_node_reduction,
)
from .replacement_paths import (
    ReplacementReport, oracle_replacement, solve_edge_avoiding, solve_node_avoiding,
)
from .rowmin import (
    brush_split, naive_row_minima, row_minima_linear, row_minima_near_linear,
    row_minima_shallow, row_minima_thick, sort_columns,
)

__all__ = [
    "INF", "ConciseMatrix", "KConciseMatrix", "MatrixFormatError", "MinimaResult",
    "PredTable", "Graph", "GraphError", "PathSpec", "SsspResult", "ReductionContext",
    "ReplacementReport", "backend", "brush_split", "build_g0", "classify_negative_edges",
    "decompose_k_concise", "edge_replacement_matrix", "levels", "naive_row_minima",
    "node_replacement_matrix", "oracle_replacement", "row_minima_linear",
    "row_minima_near_linear", "row_minima_shallow", "row_minima_thick", "solve_edge_avoiding",
    "solve_node_avoiding", "sort_columns", "sssp", "sssp_to", "subdivide_for_node_reduction",
    "tree_path",
]
