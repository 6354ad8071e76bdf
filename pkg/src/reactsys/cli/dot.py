"""Graphviz DOT text for transition graphs."""

from __future__ import annotations

from ..core import ReactionSystem, popcount
from ..dynamics import transition_graph
from ..errors import CapabilityError

DOT_NODE_CAP = 1 << 8


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(sys: ReactionSystem, edges) -> str:
    """One ``"{...}" -> "{...}"`` line per edge, in the given order."""
    fmt = sys.format
    lines = [f"digraph {_quote(sys.name)} {{", "  node [shape=box];"]
    lines.extend(f"  {_quote(fmt(t))} -> {_quote(fmt(u))};" for t, u in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dot(sys: ReactionSystem, restrict: int | None = None, force: bool = False, cap: int | None = None) -> str:
    width = sys.size if restrict is None else popcount(restrict)
    if not force and (1 << width) > DOT_NODE_CAP:
        raise CapabilityError(
            f"graph would have 2^{width} nodes, above the DOT limit of {DOT_NODE_CAP}; "
            "restrict it to fewer entities (--restrict) or pass --force"
        )
    return emit_dot(sys, transition_graph(sys, restrict, cap))
