import logging
from enum import Enum
from pathlib import Path
from typing import List, Union

from .graph import UnitGraph


class ExportFormat(str, Enum):
    EDGE_LIST = "EdgeList"
    DOT = "Dot"
    INCIDENCE_TEXT = "IncidenceText"


def _edge_list(graph: UnitGraph) -> List[str]:
    lines = [f"{graph.num_vertices} {graph.num_edges}"]
    lines.extend(f"{u} {w}" for u, w in graph.edges)
    return lines


def _incidence_text(graph: UnitGraph) -> List[str]:
    lines = [f"{graph.num_vertices} {graph.num_edges}"]
    for incident in graph.incident_edges:
        row = ["0"] * graph.num_edges
        for idx in incident:
            row[idx] = "1"
        lines.append(" ".join(row))
    return lines


def _dot(graph: UnitGraph) -> List[str]:
    lines = [f"graph unit_{graph.spec.n}_{graph.spec.m} {{"]
    lines.extend(f'  v{i} [label="{x}"];' for i, x in enumerate(graph.vertices))
    lines.extend(f"  v{u} -- v{w};" for u, w in graph.edges)
    lines.append("}")
    return lines


_WRITERS = {
    ExportFormat.EDGE_LIST: _edge_list,
    ExportFormat.DOT: _dot,
    ExportFormat.INCIDENCE_TEXT: _incidence_text,
}


def export_graph(graph: UnitGraph, fmt: ExportFormat) -> bytes:
    """
    Serialise a graph as ASCII, every line newline-terminated.

    Args:
        graph: Graph to export; vertices and edges are written in canonical order
        fmt: EdgeList, Dot or IncidenceText

    Example:
        >>> export_graph(UnitGraph.build(RingSpec(2, 2)), ExportFormat.EDGE_LIST)
        b'4 2\\n0 3\\n1 2\\n'
    """
    lines = _WRITERS[ExportFormat(fmt)](graph)
    return "".join(line + "\n" for line in lines).encode("ascii")


def write_export(graph: UnitGraph, fmt: ExportFormat, path: Union[str, Path]) -> None:
    """Write an export to disk. OSError propagates to the caller."""
    data = export_graph(graph, fmt)
    Path(path).write_bytes(data)
    logging.info(f"Wrote {ExportFormat(fmt).value} export of G(Z{graph.spec.n}+Z{graph.spec.m}) to {path}")
