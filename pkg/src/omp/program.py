"""Oriented matroid programs: validity, faces, the Edmonds-Mandel graph and its orientation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .digraph import Digraph, node_label
from .matroid import OMError, OrientedMatroid
from .signs import SignVector, compose, neg, to_str


class ProgramError(OMError):
    pass


@dataclass
class ProgramReport:
    bounded: bool
    acyclic: bool
    f_nondegenerate: bool
    details: list

    @property
    def ok(self) -> bool:
        return self.bounded and self.acyclic and self.f_nondegenerate

    def as_dict(self) -> dict:
        return {"bounded": self.bounded, "acyclic": self.acyclic,
                "f_nondegenerate": self.f_nondegenerate, "details": list(self.details)}

    def __str__(self) -> str:
        flag = lambda b: "yes" if b else "NO"
        lines = [f"bounded: {flag(self.bounded)}", f"acyclic: {flag(self.acyclic)}",
                 f"f nondegenerate: {flag(self.f_nondegenerate)}"]
        return "\n".join(lines + [f"  {d}" for d in self.details])


@dataclass(frozen=True)
class Face:
    elements: frozenset
    rank: int

    def __str__(self) -> str:
        return "{" + node_label(self.elements) + "}" + f" (rank {self.rank})"


class OMProgram:
    def __init__(self, m: OrientedMatroid, f: str = "f", g: str = "g", name: str = ""):
        if f == g:
            raise ProgramError("f and g must be distinct elements")
        for e in (f, g):
            if e not in m.ground:
                raise ProgramError(f"{e!r} is not an element of the oriented matroid")
        self.M, self.f, self.g, self.name = m, f, g, name

    def __repr__(self) -> str:
        return f"OMProgram(rank={self.r}, n={self.n}, f={self.f!r}, g={self.g!r})"

    @property
    def r(self) -> int:
        return self.M.rank

    @property
    def elements(self) -> tuple:
        return tuple(e for e in self.M.labels if e not in (self.f, self.g))

    @property
    def n(self) -> int:
        return len(self.elements)

    @cached_property
    def Mf(self) -> OrientedMatroid:
        return self.M.delete(self.f)

    @cached_property
    def Mg(self) -> OrientedMatroid:
        return self.M.contract(self.g)

    @cached_property
    def Mfg(self) -> OrientedMatroid:
        """M/{f,g}."""
        return self.Mg.contract(self.f)

    @cached_property
    def Mf_g(self) -> OrientedMatroid:
        """M minus f, contracted by g."""
        return self.Mf.contract(self.g)

    def reversed(self) -> "OMProgram":
        """The program with the sign of f reversed in every covector."""
        return OMProgram(self.M.reorient(self.f), self.f, self.g, name=self.name + "-reversed")

    # validity --------------------------------------------------------

    @cached_property
    def report(self) -> ProgramReport:
        mf = self.Mf
        gi = mf.idx(self.g)
        details = []
        nonneg = mf.nonnegative_cocircuits()
        bounded = True
        for y in nonneg:
            if not y[gi]:
                bounded = False
                details.append(f"nonnegative cocircuit of M\\f avoiding g: {to_str(y)}")
        acyclic = True
        for e in self.elements:
            ei = mf.idx(e)
            if not any(y[ei] > 0 for y in nonneg):
                acyclic = False
                details.append(f"no nonnegative cocircuit of M\\f is positive on {e}")
        fi = self.M.idx(self.f)
        nondeg = True
        for x in self.M.circuits:
            size = sum(1 for a in x if a)
            if x[fi] and size != self.r + 1:
                nondeg = False
                details.append(f"circuit through f with {size} elements: {to_str(x)}")
                break
        return ProgramReport(bounded, acyclic, nondeg, details)

    def validate(self) -> ProgramReport:
        return self.report

    def _require_valid(self, need_nondegenerate: bool = False) -> None:
        rep = self.report
        if not (rep.bounded and rep.acyclic):
            raise ProgramError(f"invalid program:\n{rep}")
        if need_nondegenerate and not rep.f_nondegenerate:
            raise ProgramError(
                f"f is degenerate, so some edges get no orientation:\n{rep}\n"
                "hint: perturb f lexicographically (e.g. replace it by a lex extension of M/g)"
            )

    # faces and graph -------------------------------------------------

    @cached_property
    def faces(self) -> list:
        self._require_valid()
        mf = self.Mf
        idx = [mf.idx(e) for e in self.elements]
        sets = set()
        for y in mf.covectors:
            if all(a >= 0 for a in y):
                sets.add(frozenset(e for e, i in zip(self.elements, idx) if not y[i]))
        mfg = mf.delete(self.g)
        other = set()
        for y in mfg.covectors:
            if all(a >= 0 for a in y):
                other.add(frozenset(e for e in self.elements if not y[mfg.idx(e)]))
        if sets != other:
            raise AssertionError("nonnegative covectors of M\\f and M\\{f,g} give different face posets")
        faces = [Face(s, mf.rank_of(s)) for s in sets]
        return sorted(faces, key=lambda fc: (fc.rank, sorted(fc.elements)))

    def face_counts(self) -> dict:
        counts: dict = {}
        for fc in self.faces:
            counts[fc.rank] = counts.get(fc.rank, 0) + 1
        return dict(sorted(counts.items()))

    @cached_property
    def node_cocircuits(self) -> dict:
        """Node (zero set in [n]) -> cocircuit of M nonnegative off f with f, g in its support."""
        m = self.M
        fi, gi = m.idx(self.f), m.idx(self.g)
        out = {}
        for y in m.all_cocircuits:
            if y[fi] and y[gi] > 0 and all(a >= 0 for i, a in enumerate(y) if i != fi):
                v = frozenset(e for e in self.elements if not y[m.idx(e)])
                out[v] = y
        return out

    @cached_property
    def nodes(self) -> list:
        return sorted((fc.elements for fc in self.faces if fc.rank == self.r - 1),
                      key=lambda v: node_label(v))

    @cached_property
    def em_graph(self) -> tuple:
        """(nodes, edges) of the Edmonds-Mandel graph; edges are frozenset pairs."""
        nodes = self.nodes
        edges = []
        for a, v in enumerate(nodes):
            for w in nodes[a + 1:]:
                if self.Mf.rank_of(v & w) == self.r - 2:
                    edges.append(frozenset((v, w)))
        return nodes, edges

    # orientation -----------------------------------------------------

    def eliminate_g(self, v: frozenset, w: frozenset) -> SignVector:
        """Cocircuit obtained by eliminating g between Y(v) and -Y(w)."""
        m = self.M
        y, yw = self.node_cocircuits[v], neg(self.node_cocircuits[w])
        gi = m.idx(self.g)
        sep = {i for i in range(m.size) if y[i] and y[i] == -yw[i]}
        if gi not in sep:
            raise AssertionError("g does not separate the two node cocircuits")
        comp = compose(y, yw)
        keep = [i for i in range(m.size) if i not in sep]
        hits = [z for z in m.all_cocircuits if z[gi] == 0 and all(z[i] == comp[i] for i in keep)]
        if len(hits) != 1:
            raise AssertionError(f"expected one elimination witness, found {len(hits)}")
        return hits[0]

    def _arc_by_elimination(self, v, w, ypp) -> bool:
        """True if the edge is directed v -> w."""
        fi = self.M.idx(self.f)
        if ypp[fi] == 0:
            raise ProgramError(f"degenerate edge {node_label(v)} -- {node_label(w)}: Y''_f = 0")
        e = next(iter(v - w))
        return ypp[fi] == ypp[self.M.idx(e)]

    def _arc_by_circuits(self, v, w, ypp) -> set:
        """Verdicts of the fundamental-circuit rule over every admissible base."""
        m = self.M
        zeros = [e for e in self.elements if not ypp[m.idx(e)]]
        verdicts = set()
        for e in sorted(v - w):
            pool = sorted(set(zeros) | {e, self.g})
            for b in itertools.combinations(pool, m.rank):
                if not m.is_base(b):
                    continue
                x = m.fundamental_circuit(b, self.f)
                verdicts.add(x[m.idx(e)] < 0)
        return verdicts

    @cached_property
    def digraph(self) -> Digraph:
        return self.orient()

    def orient(self) -> Digraph:
        self._require_valid(need_nondegenerate=True)
        nodes, edges = self.em_graph
        if set(self.node_cocircuits) != set(nodes):
            raise AssertionError("rank r-1 faces differ from zero sets of node cocircuits")
        arcs = []
        ridges = {}
        for edge in edges:
            v, w = sorted(edge, key=node_label)
            ypp = self.eliminate_g(v, w)
            forward = self._arc_by_elimination(v, w, ypp)
            verdicts = self._arc_by_circuits(v, w, ypp)
            if verdicts != {forward}:
                raise AssertionError(
                    f"orientation rules disagree on {node_label(v)} -- {node_label(w)}: "
                    f"elimination says {forward}, circuits say {sorted(verdicts)}"
                )
            arc = (v, w) if forward else (w, v)
            arcs.append(arc)
            ridges[arc] = ypp
        dg = Digraph(nodes, arcs, dim=self.r - 1, name=self.name)
        dg.source, dg.sink = dg.unique_source_sink()
        dg.ridge_cocircuits = ridges
        return dg

    def source_sink(self) -> tuple:
        dg = self.digraph
        src, snk = dg.unique_source_sink()
        mg = self.Mg
        if not mg.conv(self.f, snk, -1):
            raise AssertionError(f"-f is not in conv(sink {node_label(snk)})")
        if not mg.conv(self.f, src, 1):
            raise AssertionError(f"f is not in conv(source {node_label(src)})")
        return src, snk

    def face_digraph(self, face: frozenset) -> Digraph:
        keep = [v for v in self.digraph.nodes if face <= v]
        return self.digraph.induced(keep)

    def check_face_sinks(self) -> list:
        """Faces whose restricted digraph lacks a unique source or sink."""
        bad = []
        for fc in self.faces:
            sub = self.face_digraph(fc.elements)
            if not sub.nodes:
                continue
            if len(sub.sinks()) != 1 or len(sub.sources()) != 1:
                bad.append(fc)
        return bad


def program_from_lp(a, b, c, beta=0, labels=None, f: str = "f", g: str = "g", name: str = "") -> OMProgram:
    """Program of ``max c.y + beta  s.t.  A y = b, y >= 0``.

    Vectors are the row space of ``[[A, 0, -b], [-c, 1, -beta]]``.
    """
    from .linalg import as_matrix, to_fraction

    am = as_matrix(a)
    bm = [to_fraction(x) for x in b]
    cm = [to_fraction(x) for x in c]
    ncols = len(am[0])
    if labels is None:
        labels = [f"x{i + 1}" for i in range(ncols)]
    t = [row + [Fraction(0), -bi] for row, bi in zip(am, bm)]
    t.append([-x for x in cm] + [Fraction(1), -to_fraction(beta)])
    m = OrientedMatroid.from_vector_matrix(t, list(labels) + [f, g])
    return OMProgram(m, f, g, name=name)


def check_connectivity(dg: Digraph, k: int) -> bool:
    """Is the underlying undirected graph k-connected? (max-flow between all pairs)"""
    from .holtklee import max_independent_paths

    und = Digraph(list(dg.nodes), [])
    und.arcs = list(dg.arcs) + [(v, u) for u, v in dg.arcs]
    if len(dg.nodes) <= k:
        return False
    edges = dg.undirected_edges()
    for a, u in enumerate(dg.nodes):
        for w in dg.nodes[a + 1:]:
            if frozenset((u, w)) in edges:
                continue
            cnt, _, _ = max_independent_paths(und, u, w, verify=False)
            if cnt < k:
                return False
    return True
