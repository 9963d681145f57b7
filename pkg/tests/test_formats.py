from importlib import resources

import pydot
import pytest

from omp.catalog import CUBE3, PRISM3, catalog_get, catalog_list
from omp.dot import export_dot
from omp.formats import (
    FormatError,
    canonicalize,
    detect_kind,
    load,
    om_file_from,
    parse_digraph,
    parse_om,
    program_file_from,
    serialize_digraph,
    serialize_om,
)
from omp.holtklee import max_independent_paths
from omp.matroid import OrientedMatroid
from omp.program import program_from_lp

DATA = resources.files("omp") / "data"
TEXT_FILES = sorted(p.name for p in DATA.iterdir() if p.name.endswith((".om", ".dg")))


@pytest.mark.parametrize("fname", TEXT_FILES)
def test_shipped_files_are_canonical(fname):
    text = (DATA / fname).read_text()
    assert canonicalize(text) == text


def test_om_round_trip_through_each_section():
    m = OrientedMatroid.from_matrix([[1, 0, 1, 2], [0, 1, -1, 1]], ["a", "b", "c", "d"])
    f = om_file_from(m)
    assert f.kind == "matrix"
    assert parse_om(serialize_om(f)).build() == m
    bare = om_file_from(OrientedMatroid(m.ground, m.rank, m.cocircuits))
    assert bare.kind != "matrix"
    assert parse_om(serialize_om(bare)).build() == m
    chi = "".join("+0-"[1 - m.chirotope[s]] for s in sorted(m.chirotope))
    text = f"OM rank=2 n=4 labels=a,b,c,d\nchirotope: {chi}\n"
    assert parse_om(text).build() == m


def test_program_files_match_catalog_definitions():
    for name, lp in (("cube3-program", CUBE3), ("prism3-program", PRISM3)):
        p = catalog_get(name).payload
        q = program_from_lp(**lp, name=name)
        assert p.M == q.M and p.digraph.arc_set() == q.digraph.arc_set()
        assert serialize_om(program_file_from(q)) == (DATA / f"{name}.om").read_text()


@pytest.mark.parametrize("text,line,col,msg", [
    ("", 1, 1, "empty"),
    ("OM rank=1 n=2 labels=a,b\ncocircuits:\n+x\n", 3, 2, "bad sign"),
    ("OM rank=1 n=2 labels=a,b\ncocircuits:\n+++\n", 3, 1, "length 3"),
    ("OM rank=3 n=2 labels=a,b\nmatrix:\n1 0\n", 1, None, "exceeds"),
    ("OM rank=1 n=2 labels=a\nmatrix:\n1 0\n", 1, None, "entries"),
    ("OM rank=1 n=2 labels=a,b\nmatrix:\n1 0.5\n", 3, 3, "rational"),
    ("OM rank=1 n=2 labels=a,b\nstuff:\n", 2, 1, "unknown section"),
    ("OM rank=1 n=2 labels=a,b foo=1\nmatrix:\n1 0\n", 1, None, "unknown key"),
    ("digraph name=x\nnode a\narc a b\n", 3, 7, "undeclared"),
    ("digraph name=x\nnode a\nnode a\n", 3, 6, "twice"),
    ("digraph name=x\nnode a\nfrob a\n", 3, 1, "unknown directive"),
    ("hello\n", 1, 1, "unrecognized"),
])
def test_errors_carry_line_and_column(text, line, col, msg):
    with pytest.raises(FormatError) as info:
        canonicalize(text) if text.startswith(("digraph", "hello")) or not text else parse_om(text).build()
    err = info.value
    assert err.line == line
    if col is not None:
        assert err.column == col
    assert msg in str(err)
    assert str(err).startswith(f"line {line}")


def test_comments_and_blank_lines_are_ignored():
    text = "# a path\ndigraph name=p dim=1\n\nnode a  # first\nnode b\narc a b\n"
    dg = parse_digraph(text)
    assert dg.arcs == [("a", "b")] and dg.dim == 1
    assert serialize_digraph(dg) == "digraph name=p dim=1\nnode a\nnode b\narc a b\nsource a\nsink b\n"


def test_load_detects_kinds(tmp_path):
    for fname, kind in (("fig1-cube.dg", "digraph"), ("cube3-program.om", "program")):
        path = tmp_path / fname
        path.write_text((DATA / fname).read_text())
        assert detect_kind(path.read_text()) == kind
        assert load(path)[0] == kind
    plain = tmp_path / "plain.om"
    plain.write_text("OM rank=1 n=2 labels=a,b\ncocircuits:\n+-\n")
    kind, m = load(plain)
    assert kind == "om" and m.rank == 1


def test_dot_export_parses_and_marks_roles():
    dg = catalog_get("fig1-prism").payload
    k, paths, cut = max_independent_paths(dg)
    text = export_dot(dg, paths.paths, cut.nodes)
    assert sum("->" in line for line in text.splitlines()) == len(dg.arcs) == 9
    (graph,) = pydot.graph_from_dot_data(text)
    assert len(graph.get_edges()) == 9
    nodes = [n for n in graph.get_nodes() if n.get("label")]
    shapes = {n.get("label").strip('"'): n.get("shape") for n in nodes}
    assert shapes["1"] == "doublecircle" and shapes["5"] == "doubleoctagon"
    filled = {n.get("label").strip('"') for n in nodes if n.get("fillcolor")}
    assert filled == {"A", "B"}


def test_catalog_lists_every_entry():
    names = [name for name, _, _ in catalog_list()]
    assert set(names) == {"fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle", "cube3-program",
                          "prism3-program", "pomcp-identity-2", "pomcp-pd-3"}
    with pytest.raises(Exception, match="unknown"):
        catalog_get("nope")
