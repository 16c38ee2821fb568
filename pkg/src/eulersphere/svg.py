"""Static SVG of a geodesic trajectory over a seeded spring layout."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .config import settings  # noqa: E402
from .geodesy import Trajectory  # noqa: E402
from .graph_core import Graph  # noqa: E402
from .graph_io import to_networkx  # noqa: E402

DPI = 100
# fixed salt: matplotlib derives SVG element ids from it
HASH_SALT = "eulersphere"

EDGE_COLOR = "#c8c8c8"
VERTEX_COLOR = "#333333"
PATH_COLOR = "#d62728"


def layout(G: Graph, seed: int, iterations: int | None = None) -> dict[int, tuple[float, float]]:
    """Spring layout positions rounded to 1e-6 so reruns are byte-identical."""
    iterations = settings.svg_layout_iterations if iterations is None else iterations
    if G.order == 0:
        return {}
    raw = nx.spring_layout(to_networkx(G), seed=seed, iterations=iterations)
    return {v: (round(float(raw[v][0]), 6), round(float(raw[v][1]), 6)) for v in G.vertices}


def render_trajectory(G: Graph, traj: Trajectory, seed: int, path: str | Path, size: int | None = None) -> Path:
    size = settings.svg_size if size is None else size
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    pos = layout(G, seed)
    xs = [pos[v][0] for v in traj.vertices]
    ys = [pos[v][1] for v in traj.vertices]
    sx, sy = pos[traj.edges[0].tail]

    with plt.rc_context({"svg.hashsalt": HASH_SALT}):
        fig, ax = plt.subplots(figsize=(size / DPI, size / DPI), dpi=DPI)
        try:
            g = to_networkx(G)
            nx.draw_networkx_edges(g, pos, ax=ax, edge_color=EDGE_COLOR, width=1.0)
            nx.draw_networkx_nodes(g, pos, ax=ax, node_size=12, node_color=VERTEX_COLOR)
            ax.plot(xs, ys, color=PATH_COLOR, linewidth=2.5)
            ax.plot(
                [sx], [sy], marker="o", markersize=10,
                markerfacecolor="none", markeredgecolor=PATH_COLOR, markeredgewidth=2,
            )
            ax.set_axis_off()
            fig.savefig(p, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return p
