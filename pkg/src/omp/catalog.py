"""Built-in examples: hand-drawn digraphs, two realizable programs and two complementarity problems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .formats import parse_digraph
from .matroid import OMError
from .program import program_from_lp

CUBE3 = dict(
    a=[[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]],
    b=[1, 1, 1],
    c=[1, 1, 1, 0, 0, 0],
    beta=Fraction(1, 2),
    labels=["y1", "y2", "y3", "s1", "s2", "s3"],
)

# triangle x1 + x2 <= 1 (slack s1) times segment x3 <= 1 (slack s2)
PRISM3 = dict(
    a=[[1, 1, 1, 0, 0], [0, 0, 0, 1, 1]],
    b=[1, 1],
    c=[1, 2, 0, 4, 0],
    beta=Fraction(1, 2),
    labels=["x1", "x2", "s1", "x3", "s2"],
)

POMCP_MATRICES = {
    "pomcp-identity-2": [[1, 0], [0, 1]],
    "pomcp-pd-3": [[2, 1, -1], [0, 2, 1], [1, -1, 2]],
}

NAMES = ("fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle",
         "cube3-program", "prism3-program", "pomcp-identity-2", "pomcp-pd-3")


class CatalogError(OMError):
    pass


@dataclass
class CatalogEntry:
    name: str
    kind: str  # digraph-only | program | pomcp
    payload: object
    provenance: str

    def require_om(self, what: str = "this operation"):
        if self.kind == "digraph-only":
            raise CatalogError(f"{self.name} is a bare digraph with no oriented matroid; {what} needs one")
        return self.payload


_PROVENANCE = {
    "fig1-prism": "orientation of a 3-prism graph in which nodes A and B meet every monotone path",
    "fig1-cyclic": "orientation of a 6-vertex cyclic 3-polytope graph with cut {A,B}",
    "fig1-cube": "orientation of the 3-cube graph with cut {A,B}",
    "fig2-cycle": "unique source and sink, directed cycle through all 6 internal nodes",
    "cube3-program": "max y1+y2+y3+1/2 s.t. y_i + s_i = 1, y, s >= 0",
    "prism3-program": "max x1+2x2+4x3+1/2 s.t. x1+x2+s1 = 1, x3+s2 = 1, x, s >= 0",
    "pomcp-identity-2": "N realized by [I | I], n = 2",
    "pomcp-pd-3": "N realized by [M | I] with M positive definite, n = 3",
}


def data_text(filename: str) -> str:
    return resources.files("omp").joinpath("data", filename).read_text()


def catalog_get(name: str) -> CatalogEntry:
    if name not in NAMES:
        raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    prov = _PROVENANCE[name]
    if name.startswith("fig"):
        return CatalogEntry(name, "digraph-only", parse_digraph(data_text(f"{name}.dg")), prov)
    if name == "cube3-program":
        return CatalogEntry(name, "program", program_from_lp(name=name, **CUBE3), prov)
    if name == "prism3-program":
        return CatalogEntry(name, "program", program_from_lp(name=name, **PRISM3), prov)
    from .pomcp import PomcpInstance

    return CatalogEntry(name, "pomcp", PomcpInstance.from_matrix(POMCP_MATRICES[name]), prov)


def catalog_list() -> list:
    return [(n, "digraph-only" if n.startswith("fig") else ("pomcp" if n.startswith("pomcp") else "program"),
             _PROVENANCE[n]) for n in NAMES]
