from .graph import (
    UnitGraph, build, edge_count_formula, expected_degree,
    girth_witness, parity_bipartition, witness_is_cycle,
)
from .code import (
    LinearCode, conjecture_params, dual_min_distance, min_distance_exact, predict,
    DEFAULT_BUDGET, DEFAULT_DUAL_CAP,
)
from .export import ExportFormat, export_graph, write_export

__all__ = [
    # Graph
    "UnitGraph",
    "build",
    "edge_count_formula",
    "expected_degree",
    "girth_witness",
    "parity_bipartition",
    "witness_is_cycle",

    # Code
    "LinearCode",
    "predict",
    "conjecture_params",
    "min_distance_exact",
    "dual_min_distance",
    "DEFAULT_BUDGET",
    "DEFAULT_DUAL_CAP",

    # Export
    "ExportFormat",
    "export_graph",
    "write_export",
]
