"""Render a digraph with its disjoint paths and cut to an image file."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .digraph import Digraph, node_label  # noqa: E402
from .dot import PATH_COLORS  # noqa: E402


def layered_positions(dg: Digraph) -> dict:
    """Height = BFS distance from the source; nodes spread evenly inside each layer."""
    succ = dg.succ()
    start = dg.source if dg.source is not None else dg.nodes[0]
    depth = {start: 0}
    todo = [start]
    while todo:
        u = todo.pop(0)
        for w in succ[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                todo.append(w)
    top = max(depth.values(), default=0) + 1
    for v in dg.nodes:
        depth.setdefault(v, top)
    if dg.sink is not None:
        depth[dg.sink] = max(depth.values()) + (1 if any(d == depth[dg.sink] for v, d in depth.items()
                                                          if v != dg.sink) else 0)
    layers: dict = {}
    for v in sorted(dg.nodes, key=node_label):
        layers.setdefault(depth[v], []).append(v)
    pos = {}
    for d, vs in layers.items():
        for i, v in enumerate(vs):
            pos[v] = (i - (len(vs) - 1) / 2, d)
    return pos


def draw_digraph(dg: Digraph, path, paths=(), cut=(), title: str | None = None) -> None:
    if dg.positions and all(v in dg.positions for v in dg.nodes):
        pos = {v: (float(x), float(y)) for v, (x, y) in dg.positions.items()}
    else:
        pos = layered_positions(dg)
    arc_color = {}
    for i, p in enumerate(paths):
        for a in zip(p, p[1:]):
            arc_color.setdefault(a, PATH_COLORS[i % len(PATH_COLORS)])
    cut = set(cut)
    fig, ax = plt.subplots(figsize=(6, 6))
    for u, v in dg.arcs:
        color = arc_color.get((u, v), "0.6")
        ax.add_patch(FancyArrowPatch(pos[u], pos[v], arrowstyle="-|>", mutation_scale=14,
                                     color=color, lw=2.2 if (u, v) in arc_color else 1.0,
                                     shrinkA=12, shrinkB=12))
    for v in dg.nodes:
        x, y = pos[v]
        face = "#f4a6a6" if v in cut else "white"
        edge = "black"
        size = 420
        if v in (dg.source, dg.sink):
            ax.scatter([x], [y], s=size * 1.8, facecolors="none", edgecolors=edge, zorder=3)
        ax.scatter([x], [y], s=size, facecolors=face, edgecolors=edge, zorder=4)
        ax.annotate(node_label(v), (x, y), ha="center", va="center", fontsize=7, zorder=5)
    ax.set_title(title if title is not None else (dg.name or "digraph"))
    ax.set_aspect("equal", adjustable="datalim")
    ax.margins(0.15)
    ax.axis("off")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
