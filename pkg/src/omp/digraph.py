"""A small directed-graph container shared by program digraphs and transcribed figures."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable


class DigraphError(ValueError):
    pass


def _natural(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def node_label(node) -> str:
    """Facet sets render as comma-joined labels in natural order; other nodes as str."""
    if isinstance(node, frozenset):
        return ",".join(sorted(node, key=_natural)) or "{}"
    return str(node)


@dataclass
class Digraph:
    nodes: list
    arcs: list
    source: Hashable = None
    sink: Hashable = None
    dim: int | None = None
    name: str = ""
    facets: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = list(dict.fromkeys(self.nodes))
        known = set(self.nodes)
        seen = set()
        arcs = []
        for u, v in self.arcs:
            if u not in known or v not in known:
                raise DigraphError(f"arc {node_label(u)} -> {node_label(v)} uses an undeclared node")
            if u == v:
                raise DigraphError(f"self-arc at {node_label(u)}")
            if (u, v) in seen:
                continue
            if (v, u) in seen:
                raise DigraphError(f"both orientations of {node_label(u)} -- {node_label(v)}")
            seen.add((u, v))
            arcs.append((u, v))
        self.arcs = arcs

    def succ(self) -> dict:
        out = {v: [] for v in self.nodes}
        for u, v in self.arcs:
            out[u].append(v)
        return out

    def pred(self) -> dict:
        out = {v: [] for v in self.nodes}
        for u, v in self.arcs:
            out[v].append(u)
        return out

    def arc_set(self) -> frozenset:
        return frozenset(self.arcs)

    def sources(self) -> list:
        p = self.pred()
        return [v for v in self.nodes if not p[v]]

    def sinks(self) -> list:
        s = self.succ()
        return [v for v in self.nodes if not s[v]]

    def induced(self, keep: Iterable) -> "Digraph":
        keep = set(keep)
        return Digraph([v for v in self.nodes if v in keep],
                       [(u, v) for u, v in self.arcs if u in keep and v in keep])

    def reversed(self) -> "Digraph":
        return Digraph(list(self.nodes), [(v, u) for u, v in self.arcs], source=self.sink,
                       sink=self.source, dim=self.dim, name=self.name, facets=dict(self.facets),
                       positions=dict(self.positions))

    def label(self, node) -> str:
        return node_label(node)

    def undirected_edges(self) -> frozenset:
        return frozenset(frozenset(a) for a in self.arcs)

    def has_cycle(self) -> bool:
        return self.find_cycle() is not None

    def find_cycle(self) -> list | None:
        succ = self.succ()
        color = {v: 0 for v in self.nodes}
        stack_path = []

        def visit(u):
            color[u] = 1
            stack_path.append(u)
            for w in succ[u]:
                if color[w] == 1:
                    return stack_path[stack_path.index(w):]
                if color[w] == 0:
                    got = visit(w)
                    if got:
                        return got
            stack_path.pop()
            color[u] = 2
            return None

        for v in self.nodes:
            if color[v] == 0:
                got = visit(v)
                if got:
                    return list(got)
        return None

    def reachable(self, start, blocked=()) -> set:
        succ = self.succ()
        blocked = set(blocked)
        seen = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            for w in succ[u]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    todo.append(w)
        return seen

    def is_directed_path(self, path) -> bool:
        arcs = self.arc_set()
        return len(set(path)) == len(path) and all((a, b) in arcs for a, b in zip(path, path[1:]))

    def unique_source_sink(self) -> tuple:
        src, snk = self.sources(), self.sinks()
        if len(src) != 1 or len(snk) != 1:
            raise DigraphError(
                f"expected one source and one sink, found sources {[node_label(v) for v in src]} "
                f"and sinks {[node_label(v) for v in snk]}"
            )
        return src[0], snk[0]
