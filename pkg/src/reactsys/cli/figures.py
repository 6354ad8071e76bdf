"""PNG figures written next to the text reports (matplotlib, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from ..core import ReactionSystem, popcount  # noqa: E402

FIGURE_NODE_CAP = 1 << 6


def transition_figure(sys: ReactionSystem, edges, path, highlight=()) -> Path:
    """Draw a transition graph; fixed points get a thick outline and
    ``highlight`` states are filled."""
    g = nx.DiGraph()
    edges = list(edges)
    for t, u in edges:
        g.add_edge(t, u)
    fixed = {t for t, u in edges if t == u}
    highlight = set(highlight)
    # states grouped in rows by cardinality
    pos = {}
    rows: dict[int, list[int]] = {}
    for node in sorted(g.nodes):
        rows.setdefault(popcount(node), []).append(node)
    for k, row in rows.items():
        for i, node in enumerate(row):
            pos[node] = (i - (len(row) - 1) / 2, -k)
    width = max(len(r) for r in rows.values())
    fig, ax = plt.subplots(figsize=(max(4.0, 1.6 * width), max(3.0, 1.3 * len(rows))))
    colors = ["#f4c542" if n in highlight else "#dde6f0" for n in g.nodes]
    edgecolors = ["black" if n in fixed else "#7a8a99" for n in g.nodes]
    nx.draw_networkx_nodes(g, pos, ax=ax, node_color=colors, edgecolors=edgecolors,
                           linewidths=[2.5 if n in fixed else 1.0 for n in g.nodes], node_size=900)
    nx.draw_networkx_labels(g, pos, {n: sys.format(n) for n in g.nodes}, ax=ax, font_size=7)
    nx.draw_networkx_edges(g, pos, ax=ax, arrows=True, arrowsize=12, node_size=900,
                           connectionstyle="arc3,rad=0.12")
    ax.set_title(f"{sys.name}: transition graph")
    ax.axis("off")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def summary_figure(rows, path, title="fixed points") -> Path:
    """Bar chart of ``(label, count)`` rows."""
    labels = [r[0] for r in rows]
    counts = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(rows)), 3.0))
    ax.bar(labels, counts, color="#4c78a8")
    ax.set_ylabel("count")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
