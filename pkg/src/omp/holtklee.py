"""Holt-Klee checks: disjoint monotone paths, vertex cuts and avoidance certificates."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from .digraph import Digraph, node_label
from .extension import (
    ExtensionError,
    LexRule,
    Localization,
    extend,
    lift_extension,
    localization_from_lex,
    validate_localization,
)
from .matroid import OMError
from .signs import compose, sorted_vectors, to_str


class HoltKleeError(OMError):
    pass


class BudgetExhausted(HoltKleeError):
    pass


@dataclass
class PathSystem:
    paths: list

    @property
    def count(self) -> int:
        return len(self.paths)

    def verify(self, dg: Digraph, s, t) -> None:
        arcs = dg.arc_set()
        used = set()
        for p in self.paths:
            if p[0] != s or p[-1] != t:
                raise AssertionError(f"path {_fmt(p)} does not run from source to sink")
            if len(set(p)) != len(p) or any((a, b) not in arcs for a, b in zip(p, p[1:])):
                raise AssertionError(f"path {_fmt(p)} is not a directed path")
            inner = set(p[1:-1])
            if inner & used:
                raise AssertionError("two paths share an internal node")
            used |= inner
        if sum(1 for p in self.paths if len(p) == 2) > 1:
            raise AssertionError("the direct arc is used twice")


@dataclass
class CutCertificate:
    nodes: frozenset
    direct_arc: bool = False

    @property
    def size(self) -> int:
        return len(self.nodes) + int(self.direct_arc)

    def verify(self, dg: Digraph, s, t) -> None:
        if s in self.nodes or t in self.nodes:
            raise AssertionError("a cut may not contain the source or the sink")
        succ = dg.succ()
        seen = {s}
        todo = [s]
        while todo:
            u = todo.pop()
            for w in succ[u]:
                if u == s and w == t:
                    continue
                if w == t:
                    raise AssertionError(f"cut {{{_fmt(sorted(self.nodes, key=node_label))}}} leaves a path")
                if w not in seen and w not in self.nodes:
                    seen.add(w)
                    todo.append(w)
        if (s, t) in dg.arc_set() and not self.direct_arc:
            raise AssertionError("the direct source-sink arc is not covered")

    def labels(self) -> list:
        return sorted(node_label(v) for v in self.nodes)


def _fmt(path) -> str:
    return " -> ".join(node_label(v) for v in path)


def max_independent_paths(dg: Digraph, s=None, t=None, verify: bool = True):
    """Return ``(k, PathSystem, CutCertificate)`` for internally disjoint s-t paths."""
    s = dg.source if s is None else s
    t = dg.sink if t is None else t
    if s not in dg.nodes or t not in dg.nodes:
        raise HoltKleeError("source and sink must be nodes of the digraph")
    if s == t:
        raise HoltKleeError("source and sink coincide")
    if t not in dg.reachable(s):
        raise HoltKleeError(f"sink {node_label(t)} is unreachable from source {node_label(s)}")

    order = sorted(dg.nodes, key=node_label)
    rank = {v: i for i, v in enumerate(order)}
    big = len(dg.nodes) + 1

    def inn(v):
        return (v, 0) if v not in (s, t) else (v, 1)

    def out(v):
        return (v, 1)

    cap: dict = {}
    adj: dict = {}

    def add(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v in order:
        if v not in (s, t):
            add((v, 0), (v, 1), 1)
    for u, v in dg.arcs:
        add(out(u), inn(v), 1 if (u, v) == (s, t) else big)
    for a in cap:
        adj[a] = sorted(cap[a], key=lambda x: (rank[x[0]], x[1]))

    src, snk = out(s), inn(t)
    flow = 0
    while True:
        parent = {src: None}
        q = deque([src])
        while q and snk not in parent:
            a = q.popleft()
            for b in adj[a]:
                if b not in parent and cap[a][b] > 0:
                    parent[b] = a
                    q.append(b)
        if snk not in parent:
            break
        b = snk
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1

    # residual reachability gives the cut
    reach = {src}
    q = deque([src])
    while q:
        a = q.popleft()
        for b in adj[a]:
            if b not in reach and cap[a][b] > 0:
                reach.add(b)
                q.append(b)
    cut_nodes = frozenset(v for v in order if v not in (s, t) and (v, 0) in reach and (v, 1) not in reach)
    direct = (s, t) in dg.arc_set()
    cut = CutCertificate(cut_nodes, direct)

    paths = _decompose(dg, s, t, cap, out, inn, rank)
    system = PathSystem(paths)
    if verify:
        if system.count != flow or cut.size != flow:
            raise AssertionError(f"flow {flow}, paths {system.count}, cut {cut.size} disagree")
        system.verify(dg, s, t)
        cut.verify(dg, s, t)
    return flow, system, cut


def _decompose(dg, s, t, cap, out, inn, rank) -> list:
    """Split the flow into s-t paths; flow cycles are cancelled on the way."""
    big_arc = {}
    for u, v in dg.arcs:
        a, b = out(u), inn(v)
        used = cap[b].get(a, 0)
        if used > 0:
            big_arc[(u, v)] = used
    succ = {}
    for (u, v), c in sorted(big_arc.items(), key=lambda kv: (rank[kv[0][0]], rank[kv[0][1]])):
        succ.setdefault(u, []).append(v)
    paths = []
    while True:
        if not any(big_arc.get((s, v), 0) for v in succ.get(s, [])):
            break
        walk = [s]
        pos = {s: 0}
        while walk[-1] != t:
            u = walk[-1]
            v = next(w for w in succ[u] if big_arc.get((u, w), 0) > 0)
            if v in pos:
                cyc = walk[pos[v]:] + [v]
                for a, b in zip(cyc, cyc[1:]):
                    big_arc[(a, b)] -= 1
                for w in walk[pos[v] + 1:]:
                    del pos[w]
                walk = walk[:pos[v] + 1]
                continue
            pos[v] = len(walk)
            walk.append(v)
        for a, b in zip(walk, walk[1:]):
            big_arc[(a, b)] -= 1
        paths.append(walk)
    return paths


# verdicts ---------------------------------------------------------------

@dataclass
class Verdict:
    holds: bool
    k: int
    d: int
    paths: PathSystem
    cut: CutCertificate
    anomaly: bool = False
    name: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "k": self.k,
            "d": self.d,
            "anomaly": self.anomaly,
            "paths": [[node_label(v) for v in p] for p in self.paths.paths],
            "cut": self.cut.labels(),
            "direct_arc": self.cut.direct_arc,
        }


def check_holt_klee(target, dim: int | None = None) -> Verdict:
    """Holt-Klee verdict for an ``OMProgram`` or a bare ``Digraph`` with a dimension."""
    from .program import OMProgram

    if isinstance(target, OMProgram):
        dg = target.digraph
        s, t = target.source_sink()
        d = target.r - 1
        small = target.r <= 5
    else:
        dg = target
        d = dim if dim is not None else dg.dim
        if d is None:
            raise HoltKleeError("a bare digraph needs a dimension (--dim)")
        if dg.source is None or dg.sink is None:
            s, t = dg.unique_source_sink()
        else:
            s, t = dg.source, dg.sink
        small = False
    k, paths, cut = max_independent_paths(dg, s, t)
    holds = k >= d
    return Verdict(holds, k, d, paths, cut, anomaly=small and not holds, name=dg.name)


# covering covectors and avoidance certificates ----------------------------

def covering_covector(program, v):
    """A covector of M/{f,g} positive on every element of the node ``v``."""
    v = frozenset(v)
    src, snk = program.source_sink()
    mg, mfg = program.Mg, program.Mfg
    if v not in program.nodes:
        raise HoltKleeError(f"{{{node_label(v)}}} is not a node of the program")
    if v in (src, snk):
        which, sign = ("sink", -1) if v == snk else ("source", 1)
        x = mg.conv_witness(program.f, v, sign)
        shown = to_str(x) if x is not None else "?"
        raise HoltKleeError(f"{{{node_label(v)}}} is the {which}; witness circuit of M/g: {shown}")
    idx = [mfg.idx(e) for e in sorted(v)]
    y = tuple([0] * mfg.size)
    for i in idx:
        hit = next((z for z in sorted_vectors(mfg.all_cocircuits) if z[i] > 0 and all(z[j] >= 0 for j in idx)), None)
        if hit is None:
            raise AssertionError(f"no cocircuit nonnegative on {{{node_label(v)}}} with + at {mfg.labels[i]}")
        y = compose(y, hit)
    if not all(y[i] > 0 for i in idx):
        raise AssertionError("composed covector is not positive on the node")
    return y


@dataclass
class AvoidanceCertificate:
    sigma: Localization
    z: tuple
    rule: LexRule | None = None

    def as_dict(self) -> dict:
        return {"rule": str(self.rule) if self.rule else None, "z": [to_str(y) for y in self.z]}


def _check_nodes(program, nodes) -> tuple:
    src, snk = program.source_sink()
    nodes = tuple(frozenset(v) for v in nodes)
    for v in nodes:
        if v not in program.nodes:
            raise HoltKleeError(f"{{{node_label(v)}}} is not a node of the program")
        if v in (src, snk):
            raise HoltKleeError(f"{{{node_label(v)}}} is the source or sink")
    return nodes


def _z_ok(ext, nodes, zs) -> bool:
    hi = ext.idx(ext.labels[-1])
    cocs = ext.all_cocircuits
    for v, z in zip(nodes, zs):
        z = tuple(z)
        if len(z) != ext.size:
            raise HoltKleeError(f"certificate vector {to_str(z)} has length {len(z)}, expected {ext.size}")
        if z not in cocs or z[hi] <= 0:
            return False
        if any(z[ext.idx(e)] < 0 for e in v):
            return False
    return True


def verify_avoidance_certificate(program, nodes, cert: AvoidanceCertificate) -> bool:
    from .tracer import trace_path

    nodes = _check_nodes(program, nodes)
    if len(cert.z) != len(nodes):
        raise HoltKleeError(f"{len(cert.z)} certificate cocircuits for {len(nodes)} nodes")
    mfg = program.Mfg
    if cert.sigma.base != mfg:
        raise HoltKleeError("certificate extension is not defined on M/{f,g}")
    rep = validate_localization(mfg, cert.sigma)
    if not rep.ok:
        raise HoltKleeError(f"invalid certificate extension:\n{rep}")
    ext = extend(mfg, cert.sigma)
    if not _z_ok(ext, nodes, cert.z):
        return False
    path = trace_path(program, lift_extension(program, cert.sigma))
    hit = [v for v in nodes if v in path.nodes]
    if hit:
        raise AssertionError(f"traced path meets certified node {{{node_label(hit[0])}}}")
    return True


def _lex_rules(mfg, rng: random.Random | None):
    bases = [sorted(b) for b in mfg.bases]
    if rng is not None:
        rng.shuffle(bases)
    for b in bases:
        for perm in itertools.permutations(b):
            for signs in itertools.product((1, -1), repeat=len(perm)):
                yield LexRule(tuple((mfg.labels[i], s) for i, s in zip(perm, signs)))


def search_avoiding_extension(program, nodes, budget: int = 10_000, seed: int | None = None):
    """First lexicographic extension of M/{f,g} certifying that a path avoids ``nodes``.

    Returns ``None`` when every lexicographic extension was tried without success
    (not a disproof) and raises ``BudgetExhausted`` when the budget runs out first.
    """
    nodes = _check_nodes(program, nodes)
    mfg = program.Mfg
    rng = random.Random(seed) if seed is not None else None
    seen = set()
    tried = 0
    for rule in _lex_rules(mfg, rng):
        sigma = localization_from_lex(mfg, rule)
        key = frozenset(sigma.signs.items())
        if key in seen:
            continue
        seen.add(key)
        if tried >= budget:
            raise BudgetExhausted(f"no certificate among the first {budget} localizations")
        tried += 1
        try:
            ext = extend(mfg, sigma)
        except ExtensionError:
            continue
        hi = ext.size - 1
        zs = []
        for v in nodes:
            idx = [ext.idx(e) for e in v]
            z = next((y for y in sorted_vectors(ext.all_cocircuits) if y[hi] > 0 and all(y[i] >= 0 for i in idx)), None)
            if z is None:
                break
            zs.append(z)
        else:
            cert = AvoidanceCertificate(sigma, tuple(zs), rule)
            if verify_avoidance_certificate(program, nodes, cert):
                return cert
    return None


def verify_levi_certificate(m, ys, sigma: Localization, ws) -> bool:
    """Each W is a covector of the extension, zero at the new element, equal to Y elsewhere."""
    rep = validate_localization(m, sigma)
    if not rep.ok:
        raise HoltKleeError(f"invalid extension:\n{rep}")
    if len(ys) != len(ws):
        return False
    ext = extend(m, sigma)
    for y, w in zip(ys, ws):
        if len(y) != m.size or len(w) != ext.size:
            return False
        if w[-1] != 0 or tuple(w[:-1]) != tuple(y):
            return False
        if not ext.is_covector(tuple(w)):
            return False
    return True
