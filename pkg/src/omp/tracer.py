"""Monotone source-to-sink paths built from an extra element h in general position.

The extension M^ of M/g by h re-orients the program graph (K_h) and cuts out
two interval subdigraphs: one from the source of K_f to the sink of K_h and
one from there to the sink of K_f. Their concatenation is a monotone path.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .digraph import Digraph, node_label
from .extension import (
    LexRule,
    Localization,
    extend,
    is_general_position,
    lift_extension,
    localization_from_lex,
    perturbation_extension,
)
from .matroid import OMError
from .signs import to_str

# (sign of f, sign of h) in the vector certifying membership
PATTERNS = {
    "[f,h]": (-1, -1),
    "[f,-h]": (-1, 1),
    "[-h,-f]": (1, 1),
}


class TraceError(OMError):
    pass


class DegeneracyError(TraceError):
    pass


@dataclass
class TracedPath:
    nodes: list
    prefix: list
    suffix: list
    joint: frozenset

    @property
    def arcs(self) -> list:
        return list(zip(self.nodes, self.nodes[1:]))

    @property
    def internal(self) -> list:
        return self.nodes[1:-1]

    def segments(self) -> list:
        out = []
        for v in self.nodes:
            if v == self.joint:
                out.append("joint")
            elif v in self.prefix:
                out.append("[f,-h]")
            else:
                out.append("[-h,-f]")
        return out

    def lines(self) -> list:
        return [f"{node_label(v)}\t{seg}" for v, seg in zip(self.nodes, self.segments())]


@dataclass
class ExtendedProgram:
    """A program together with an extension of M/g by h."""

    program: object
    sigma: Localization
    Mhat: object = field(init=False)

    def __post_init__(self):
        self.Mhat = extend(self.program.Mg, self.sigma)
        self.h = self.sigma.label
        if not is_general_position(self.Mhat, self.h):
            raise TraceError(f"{self.h} is not in general position in the extension of M/g")
        if not is_general_position(self.Mhat_f, self.h):
            raise TraceError(f"{self.h} is not in general position in the extension of M\\f/g")

    @cached_property
    def Mhat_f(self):
        return self.Mhat.delete(self.program.f)

    def _vector(self, elems, f_sign: int, h_sign: int):
        m = self.Mhat
        x = [0] * m.size
        for e in elems:
            x[m.idx(e)] = 1
        x[m.idx(self.program.f)] = f_sign
        x[m.idx(self.h)] = h_sign
        return tuple(x)

    def member(self, elems, pattern: str) -> bool:
        fs, hs = PATTERNS[pattern]
        return self.Mhat.is_vector(self._vector(elems, fs, hs))

    def ridge_cocircuit(self, ridge: frozenset):
        """The cocircuit of M^ vanishing on ``ridge`` with f-entry +."""
        m = self.Mhat
        idx = [m.idx(e) for e in ridge]
        fi = m.idx(self.program.f)
        hits = [y for y in m.all_cocircuits if y[fi] > 0 and all(y[i] == 0 for i in idx)]
        if len(hits) != 1:
            raise DegeneracyError(
                f"{len(hits)} cocircuits of the extension vanish on ridge {{{node_label(ridge)}}} with f = +"
            )
        return hits[0]

    @cached_property
    def kh(self) -> Digraph:
        return build_kh_from(self)

    def interval_digraph(self, pattern: str) -> Digraph:
        dg = self.program.digraph
        m = self.Mhat
        members = [v for v in dg.nodes if self.member(v, pattern)]
        mset = set(members)
        _, need_h = PATTERNS[pattern]
        arcs = []
        for v, w in dg.arcs:
            if v not in mset or w not in mset:
                continue
            tau = v & w
            if not self.member(tau, pattern):
                continue
            y = self.ridge_cocircuit(tau)
            hi = m.idx(self.h)
            want_h = 1 if pattern == "[f,-h]" else -1
            if y[hi] != want_h:
                raise AssertionError(f"ridge cocircuit {to_str(y)} has the wrong sign at h")
            pos = [u for u in (v, w) if all(y[m.idx(e)] > 0 for e in u - tau)]
            neg = [u for u in (v, w) if all(y[m.idx(e)] < 0 for e in u - tau)]
            if len(pos) != 1 or len(neg) != 1:
                raise DegeneracyError(f"ridge {{{node_label(tau)}}} does not separate its two cells")
            arc = (pos[0], neg[0])
            if arc != (v, w):
                raise AssertionError(f"interval arc {node_label(arc[0])} -> {node_label(arc[1])} "
                                     "runs against the program digraph")
            arcs.append(arc)
        return Digraph(members, arcs)


def build_extension(program, sigma: Localization) -> ExtendedProgram:
    return ExtendedProgram(program, sigma)


def build_kh_from(ext: ExtendedProgram) -> Digraph:
    program = ext.program
    dg = program.digraph
    mhf = ext.Mhat_f
    hi = mhf.idx(ext.h)
    elems = program.elements
    mi = program.M
    n_idx_m = [mi.idx(e) for e in elems]
    n_idx_h = [mhf.idx(e) for e in elems]
    by_restriction = {}
    for y in mhf.all_cocircuits:
        by_restriction.setdefault(tuple(y[i] for i in n_idx_h), []).append(y)
    arcs = []
    for (v, w), ypp in dg.ridge_cocircuits.items():
        key = tuple(ypp[i] for i in n_idx_m)
        hits = by_restriction.get(key, [])
        if len(hits) != 1:
            raise AssertionError(f"{len(hits)} cocircuits of M^\\f restrict to {to_str(key)}")
        yh = hits[0]
        if yh[hi] == 0:
            raise TraceError(f"{ext.h} vanishes on the ridge cocircuit of {node_label(v)} -- {node_label(w)}")
        e = next(iter(v - w))
        forward = yh[hi] == yh[mhf.idx(e)]
        arcs.append((v, w) if forward else (w, v))
    kh = Digraph(list(dg.nodes), arcs, dim=dg.dim, name=f"{dg.name}-K_{ext.h}")
    kh.source, kh.sink = kh.unique_source_sink()
    return kh


def build_kh(program, sigma: Localization) -> Digraph:
    return build_extension(program, sigma).kh


def interval_membership(program, sigma: Localization, v, pattern: str) -> bool:
    if pattern not in PATTERNS:
        raise ValueError(f"pattern must be one of {sorted(PATTERNS)}")
    return build_extension(program, sigma).member(frozenset(v), pattern)


def default_localization(program) -> Localization:
    """Lexicographic rule (all +) over the first base of M/{f,g}, lifted to M/g."""
    mfg = program.Mfg
    base = sorted(mfg.bases[0])
    rule = LexRule(tuple((mfg.labels[i], 1) for i in base))
    return lift_extension(program, localization_from_lex(mfg, rule))


def random_lex_rule(program, rng: random.Random) -> LexRule:
    mfg = program.Mfg
    base = list(rng.choice(mfg.bases))
    rng.shuffle(base)
    return LexRule(tuple((mfg.labels[i], rng.choice((1, -1))) for i in base))


def _walk(interval: Digraph, start, stop) -> list:
    succ = interval.succ()
    path = [start]
    while path[-1] != stop:
        nxt = succ[path[-1]]
        if len(nxt) > 1:
            raise DegeneracyError(
                f"{len(nxt)} admissible next cells after {node_label(path[-1])}"
            )
        if not nxt:
            raise TraceError(f"interval walk stalled at {node_label(path[-1])}")
        if nxt[0] in path:
            raise TraceError("interval walk revisited a node")
        path.append(nxt[0])
    return path


def _component(dg: Digraph, start) -> set:
    und = {v: set() for v in dg.nodes}
    for u, v in dg.arcs:
        und[u].add(v)
        und[v].add(u)
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in und[u] - seen:
            seen.add(w)
            todo.append(w)
    return seen


def trace_path(program, sigma: Localization | None = None) -> TracedPath:
    if sigma is None:
        sigma = default_localization(program)
    ext = build_extension(program, sigma)
    dg = program.digraph
    src, snk = program.source_sink()
    joint = ext.kh.sink
    first = ext.interval_digraph("[f,-h]")
    second = ext.interval_digraph("[-h,-f]")
    for v, name, part in ((src, "source", first), (joint, "K_h sink", first),
                          (joint, "K_h sink", second), (snk, "sink", second)):
        if v not in part.nodes:
            raise AssertionError(f"{name} {node_label(v)} missing from an interval digraph")
    prefix = _walk(first, src, joint)
    suffix = _walk(second, joint, snk)
    if _component(first, joint) != set(prefix):
        raise AssertionError("component of K[f,-h] through the K_h sink is not the traced path")
    if _component(second, joint) != set(suffix):
        raise AssertionError("component of K[-h,-f] through the K_h sink is not the traced path")
    if set(prefix) & set(suffix) != {joint}:
        raise AssertionError("the two path segments meet outside the K_h sink")
    nodes = prefix + suffix[1:]
    if not dg.is_directed_path(nodes):
        raise AssertionError("traced path is not a monotone path of K_f")
    return TracedPath(nodes, prefix, suffix, joint)


def trace_facet_avoiding(program, e) -> TracedPath:
    src, snk = program.source_sink()
    if e not in program.elements:
        raise TraceError(f"{e!r} is not a constraint element")
    if e not in src or e not in snk:
        raise TraceError(f"{e!r} does not contain both the source and the sink")
    sigma = perturbation_extension(program, e)
    path = trace_path(program, sigma)
    for v in path.internal:
        if e in v:
            raise AssertionError(f"internal node {node_label(v)} lies on facet {e}")
    return path


def facet_avoiding_path(dg: Digraph, facet_nodes) -> list | None:
    """A directed source-sink path whose internal nodes avoid ``facet_nodes``, if any."""
    facet_nodes = set(facet_nodes)
    blocked = facet_nodes - {dg.source, dg.sink}
    succ = dg.succ()
    parent = {dg.source: None}
    todo = [dg.source]
    while todo:
        u = todo.pop(0)
        if u == dg.sink:
            break
        for w in succ[u]:
            if w not in parent and w not in blocked:
                parent[w] = u
                todo.append(w)
    if dg.sink not in parent:
        return None
    path = [dg.sink]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]
