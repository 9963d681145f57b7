"""Subdivisions of oriented matroids and P-matrix complementarity problems on cubes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .digraph import Digraph, node_label
from .extension import (
    ExtensionError,
    LexRule,
    Localization,
    extend,
    is_general_position,
    localization_from_lex,
    validate_localization,
)
from .linalg import as_matrix, det
from .matroid import OMError, OrientedMatroid
from .signs import to_str


class PomcpError(OMError):
    pass


# property (P) and P-matrices ---------------------------------------------

def _pairs(n_om: OrientedMatroid) -> int:
    if n_om.size % 2:
        raise PomcpError(f"ground set has odd size {n_om.size}; expected 2n elements")
    n = n_om.size // 2
    if n_om.rank != n:
        raise PomcpError(f"rank {n_om.rank} on {n_om.size} elements; expected rank {n}")
    return n


def check_property_p(n_om: OrientedMatroid) -> tuple:
    """``(True, None)`` if every circuit has a complementary pair with equal nonzero signs,
    else ``(False, violating circuit)``."""
    n = _pairs(n_om)
    for x in sorted(n_om.circuits):
        for y in (x, tuple(-a for a in x)):
            if not any(y[i] and y[i] == y[n + i] for i in range(n)):
                return False, y
    return True, None


def p_matrix_check(m) -> bool:
    """All principal minors positive, computed exactly."""
    a = as_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise PomcpError("P-matrix test needs a square matrix")
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            if det([[a[i][j] for j in rows] for i in rows]) <= 0:
                return False
    return True


def pomcp_labels(n: int) -> list:
    return [str(i) for i in range(1, 2 * n + 1)]


def om_from_pmatrix(m) -> OrientedMatroid:
    """Oriented matroid on ``1..2n`` whose vectors are the row space of ``[M | I]``."""
    a = as_matrix(m)
    n = len(a)
    rows = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    return OrientedMatroid.from_vector_matrix(rows, pomcp_labels(n))


# subdivisions -------------------------------------------------------------

def cube_subdivision(n: int) -> list:
    if n < 1:
        raise PomcpError("n must be at least 1")
    labels = pomcp_labels(n)
    cells = []
    for choice in itertools.product((0, 1), repeat=n):
        cells.append(frozenset(labels[i + n * c] for i, c in enumerate(choice)))
    return cells


def _faces_of_restriction(n_om: OrientedMatroid, cell: frozenset) -> set:
    """Zero sets (inside the cell) of nonnegative covectors of the restriction to the cell."""
    sub = n_om.restrict(sorted(cell, key=n_om.idx))
    return {frozenset(sub.labels[i] for i, a in enumerate(y) if not a)
            for y in sub.covectors if all(a >= 0 for a in y)}


@dataclass
class SubdivisionReport:
    rank: list = field(default_factory=list)
    common_face: list = field(default_factory=list)
    facets: list = field(default_factory=list)
    nonnegative_cocircuits: list = field(default_factory=list)
    covering: list = field(default_factory=list)
    extensions_sampled: int = 0

    @property
    def ok(self) -> bool:
        return not (self.rank or self.common_face or self.facets or self.nonnegative_cocircuits or self.covering)

    def lines(self) -> list:
        out = []
        for name, bad in (("condition 1 (cell rank)", self.rank),
                          ("condition 3 (common faces)", self.common_face),
                          ("condition 4 (facets)", self.facets),
                          ("no nonnegative cocircuits", self.nonnegative_cocircuits)):
            out.append(f"{name}: {'ok' if not bad else 'VIOLATED'}")
            out.extend(f"  {b}" for b in bad)
        status = "VIOLATED" if self.covering else "ok"
        out.append(f"condition 2 (covering): {status}, sampled over {self.extensions_sampled} extensions, not proved")
        out.extend(f"  {b}" for b in self.covering)
        return out


def _cell_str(c) -> str:
    return "{" + node_label(frozenset(c)) + "}"


def validate_subdivision(n_om: OrientedMatroid, cells, extensions=None) -> SubdivisionReport:
    """Check conditions 1, 3, 4 exactly; condition 2 only over ``extensions``.

    ``extensions`` defaults to lexicographic rules with all signs + over every base.
    """
    rep = SubdivisionReport()
    cells = [frozenset(c) for c in dict.fromkeys(frozenset(c) for c in cells)]
    r = n_om.rank
    for c in cells:
        if n_om.rank_of(c) != r:
            rep.rank.append(f"cell {_cell_str(c)} has rank {n_om.rank_of(c)}, expected {r}")
    faces = {c: _faces_of_restriction(n_om, c) for c in cells}
    for c1, c2 in itertools.combinations(cells, 2):
        common = c1 & c2
        if common not in faces[c1] or common not in faces[c2]:
            rep.common_face.append(f"{_cell_str(common)} is not a common face of {_cell_str(c1)} and {_cell_str(c2)}")
    boundary = [frozenset(n_om.labels[i] for i, a in enumerate(y) if not a) for y in n_om.nonnegative_cocircuits()]
    for y in n_om.nonnegative_cocircuits():
        rep.nonnegative_cocircuits.append(f"nonnegative cocircuit {to_str(y)}")
    for c in cells:
        for fc in faces[c]:
            if n_om.rank_of(fc) != r - 1:
                continue
            if any(fc <= b for b in boundary):
                continue
            holders = [d for d in cells if fc <= d]
            if len(holders) != 2:
                rep.facets.append(f"facet {_cell_str(fc)} of cell {_cell_str(c)} lies in {len(holders)} cells")
    rep.facets = list(dict.fromkeys(rep.facets))
    if extensions is None:
        extensions = [localization_from_lex(n_om, LexRule(tuple((n_om.labels[i], 1) for i in sorted(b))), "f")
                      for b in n_om.bases]
    for sigma in extensions:
        ext = extend(n_om, sigma)
        rep.extensions_sampled += 1
        lab = sigma.label
        covering = [c for c in cells if ext.conv(lab, c, 1)]
        for c1, c2 in itertools.combinations(covering, 2):
            if not ext.conv(lab, c1 & c2, 1):
                rep.covering.append(f"{lab} lies in conv of {_cell_str(c1)} and {_cell_str(c2)} "
                                    "but not of their intersection")
    return rep


def subdivision_digraph(n_om: OrientedMatroid, cells, sigma: Localization) -> Digraph:
    cells = sorted((frozenset(c) for c in cells), key=node_label)
    ext = extend(n_om, sigma)
    f = sigma.label
    if not is_general_position(ext, f):
        raise PomcpError(f"{f} is not in general position")
    fi = ext.idx(f)
    r = n_om.rank
    cocs = ext.all_cocircuits
    arcs = []
    for c1, c2 in itertools.combinations(cells, 2):
        common = c1 & c2
        if n_om.rank_of(common) != r - 1:
            continue
        idx = [ext.idx(e) for e in common]
        hits = [y for y in cocs if y[fi] > 0 and all(y[i] == 0 for i in idx)]
        if len(hits) != 1:
            raise PomcpError(f"{len(hits)} cocircuits vanish on {_cell_str(common)} with {f} = +")
        y = hits[0]
        if all(y[ext.idx(e)] > 0 for e in c1 - c2) and all(y[ext.idx(e)] < 0 for e in c2 - c1):
            arcs.append((c1, c2))
        elif all(y[ext.idx(e)] < 0 for e in c1 - c2) and all(y[ext.idx(e)] > 0 for e in c2 - c1):
            arcs.append((c2, c1))
        else:
            raise PomcpError(f"cocircuit {to_str(y)} does not separate {_cell_str(c1)} from {_cell_str(c2)}")
    dg = Digraph(cells, arcs, dim=r, name="subdivision")
    src = [c for c in cells if ext.conv(f, c, 1)]
    snk = [c for c in cells if ext.conv(f, c, -1)]
    if len(src) != 1 or len(snk) != 1:
        raise PomcpError(f"{f} is covered by {len(src)} cells and -{f} by {len(snk)}; expected one each")
    dg.source, dg.sink = src[0], snk[0]
    if (dg.source, dg.sink) != dg.unique_source_sink():
        raise AssertionError("covering cells differ from the in/out-degree source and sink")
    return dg


# complementarity problems -------------------------------------------------

def default_extension(n_om: OrientedMatroid, label: str = "f") -> Localization:
    base = sorted(n_om.bases[0])
    return localization_from_lex(n_om, LexRule(tuple((n_om.labels[i], 1) for i in base)), label)


@dataclass
class PomcpInstance:
    N: OrientedMatroid
    sigma: Localization | None = None

    def __post_init__(self):
        self.n = _pairs(self.N)
        ok, witness = check_property_p(self.N)
        if not ok:
            raise PomcpError(f"property (P) fails on circuit {to_str(witness)}")
        if self.sigma is None:
            self.sigma = default_extension(self.N)
        rep = validate_localization(self.N, self.sigma)
        if not rep.ok:
            raise ExtensionError(f"invalid extension:\n{rep}")

    @classmethod
    def from_matrix(cls, m, rule: LexRule | None = None) -> "PomcpInstance":
        n_om = om_from_pmatrix(m)
        sigma = localization_from_lex(n_om, rule, "f") if rule else None
        return cls(n_om, sigma)

    @cached_property
    def cells(self) -> list:
        return cube_subdivision(self.n)

    @cached_property
    def digraph(self) -> Digraph:
        dg = subdivision_digraph(self.N, self.cells, self.sigma)
        dg.name = f"pomcp-{self.n}"
        return dg

    def cube_faces(self):
        """Yield (fixed assignment, cells) for every face of the cube."""
        labels = pomcp_labels(self.n)
        n = self.n
        for fixed in itertools.product((None, 0, 1), repeat=n):
            chosen = {labels[i + n * c] for i, c in enumerate(fixed) if c is not None}
            yield fixed, [c for c in self.cells if chosen <= c]

    def faces_without_unique_sink(self) -> list:
        bad = []
        for fixed, cells in self.cube_faces():
            if len(self.digraph.induced(cells).sinks()) != 1:
                bad.append(fixed)
        return bad


def is_cube_graph(dg: Digraph, n: int) -> bool:
    if len(dg.nodes) != 2 ** n:
        return False
    edges = dg.undirected_edges()
    want = {frozenset((a, b)) for a, b in itertools.combinations(dg.nodes, 2) if len(a ^ b) == 2}
    return edges == want


def check_pomcp_holt_klee(inst: PomcpInstance):
    from .holtklee import Verdict, max_independent_paths

    dg = inst.digraph
    k, paths, cut = max_independent_paths(dg, dg.source, dg.sink)
    holds = k >= inst.n
    return Verdict(holds, k, inst.n, paths, cut, anomaly=inst.n <= 4 and not holds, name=dg.name)
