"""Graphviz DOT export for program and figure digraphs."""
from __future__ import annotations

from .digraph import Digraph, node_label

PATH_COLORS = ("blue", "darkgreen", "darkorange", "purple", "brown", "teal")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dg: Digraph, paths=(), cut=(), name: str | None = None) -> str:
    """DOT text; source is a double circle, sink a double octagon.

    ``paths`` (node sequences) colour their arcs; ``cut`` nodes are filled red.
    """
    cut = set(cut)
    arc_color = {}
    for i, p in enumerate(paths):
        for a in zip(p, p[1:]):
            arc_color.setdefault(a, PATH_COLORS[i % len(PATH_COLORS)])
    ids = {v: f"n{i}" for i, v in enumerate(dg.nodes)}
    title = name if name is not None else (dg.name or "K")
    out = [f"digraph {_quote(title)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for v in dg.nodes:
        attrs = [f"label={_quote(node_label(v))}"]
        if v == dg.source:
            attrs.append("shape=doublecircle")
        elif v == dg.sink:
            attrs.append("shape=doubleoctagon")
        if v in cut:
            attrs.append('style=filled fillcolor="#f4a6a6"')
        out.append(f"  {ids[v]} [{' '.join(attrs)}];")
    for u, v in dg.arcs:
        extra = f" [color={arc_color[(u, v)]} penwidth=2]" if (u, v) in arc_color else ""
        out.append(f"  {ids[u]} -> {ids[v]}{extra};")
    out.append("}")
    return "\n".join(out) + "\n"
