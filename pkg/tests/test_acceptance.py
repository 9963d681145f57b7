"""Acceptance criteria 1-9. Each test records one PASS/FAIL line with its runtime.

Run ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal summary) or
``python3 tests/test_acceptance.py`` (lines are printed directly).
"""
import contextlib
import itertools
import random
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import networkx as nx
import pydot

sys.path.insert(0, str(Path(__file__).parent))

from omp import linalg  # noqa: E402
from omp.catalog import CUBE3, PRISM3, catalog_get  # noqa: E402
from omp.digraph import Digraph  # noqa: E402
from omp.dot import export_dot  # noqa: E402
from omp.extension import lift_extension, localization_from_lex  # noqa: E402
from omp.formats import canonicalize  # noqa: E402
from omp.holtklee import (  # noqa: E402
    CutCertificate,
    check_holt_klee,
    max_independent_paths,
    search_avoiding_extension,
    verify_avoidance_certificate,
)
from omp.matroid import OrientedMatroid  # noqa: E402
from omp.pomcp import (  # noqa: E402
    PomcpInstance,
    check_pomcp_holt_klee,
    check_property_p,
    om_from_pmatrix,
    p_matrix_check,
)
from omp.program import program_from_lp  # noqa: E402
from omp.signs import orthogonal  # noqa: E402
from omp.tracer import build_extension, random_lex_rule, trace_facet_avoiding, trace_path  # noqa: E402
from oracles import lp_vertex_digraph, max_disjoint_family, min_vertex_cut  # noqa: E402

RESULTS = []


@contextlib.contextmanager
def criterion(n, what, limit=None):
    t0 = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed >= limit:
            note = f" over the {limit:g} s limit"
            raise AssertionError(f"criterion {n} took {elapsed:.2f} s, limit {limit:g} s")
        status = "PASS"
    except BaseException as exc:
        note = note or f" ({type(exc).__name__}: {exc})"
        raise
    finally:
        elapsed = time.perf_counter() - t0
        line = f"{status} criterion {n}: {what} [{elapsed:.2f} s]{note}"
        RESULTS.append(line)
        print(line)


# 1 ------------------------------------------------------------------------

def test_criterion_1_two_node_cuts():
    with criterion(1, "prism, cyclic and cube digraphs have k = 2 with {A,B} a valid cut", limit=1):
        for name in ("fig1-prism", "fig1-cyclic", "fig1-cube"):
            dg = catalog_get(name).payload
            k, paths, cut = max_independent_paths(dg)
            assert k == 2 and cut.size == 2, name
            paths.verify(dg, dg.source, dg.sink)
            cut.verify(dg, dg.source, dg.sink)
            CutCertificate(frozenset({"A", "B"})).verify(dg, dg.source, dg.sink)


# 2 ------------------------------------------------------------------------

def test_criterion_2_cyclic_program_digraph():
    with criterion(2, "fig2-cycle: unique source/sink, 6-node directed cycle, k = 3", limit=1):
        dg = catalog_get("fig2-cycle").payload
        assert dg.sources() == [dg.source] and dg.sinks() == [dg.sink]
        inner = [v for v in dg.nodes if v not in (dg.source, dg.sink)]
        assert len(inner) == 6
        arcs = dg.arc_set()
        first, rest = inner[0], inner[1:]
        assert any(all((a, b) in arcs for a, b in zip((first, *p), (*p, first)))
                   for p in itertools.permutations(rest))
        assert max_independent_paths(dg)[0] == 3


# 3 ------------------------------------------------------------------------

def test_criterion_3_realizable_programs():
    graphs = {"cube3-program": nx.hypercube_graph(3), "prism3-program": nx.circular_ladder_graph(3)}
    with criterion(3, "cube and prism programs: valid, correct graphs and orientation, k = 3"):
        for name, lp in (("cube3-program", CUBE3), ("prism3-program", PRISM3)):
            t0 = time.perf_counter()
            p = program_from_lp(**lp, name=name)
            assert p.validate().ok
            nodes, edges = p.em_graph
            assert nx.is_isomorphic(nx.Graph([tuple(e) for e in edges]), graphs[name])
            geo_nodes, geo_arcs = lp_vertex_digraph(lp["a"], lp["b"], lp["c"], lp["labels"])
            assert set(p.nodes) == set(geo_nodes) and p.digraph.arc_set() == geo_arcs
            v = check_holt_klee(p)
            assert v.holds and v.k == 3
            assert time.perf_counter() - t0 < 5, f"{name} over 5 s"


# 4 ------------------------------------------------------------------------

def _kernel_checks(m):
    assert m.verify_axioms().ok
    cocs, circs = m.all_cocircuits, m.all_circuits
    assert all(orthogonal(x, y) for x in circs for y in cocs)
    d = m.dual()
    assert d.dual() == m
    for e in m.labels:
        if not m.is_coloop(e) and not m.is_loop(e):
            assert m.delete(e).dual() == d.contract(e)
    for b in m.bases:
        base = [m.labels[i] for i in sorted(b)]
        for p in m.labels:
            if p in base:
                continue
            c = m.fundamental_circuit(base, p)
            for q in base:
                assert orthogonal(c, m.fundamental_cocircuit(base, q))


def _full_rank(rows):
    return linalg.rank(rows) == len(rows)


def test_criterion_4_kernel_properties():
    with criterion(4, "kernel properties: exhaustive small matrices and random ones up to |E| = 8"):
        seen = set()
        checked = 0
        shapes = [(1, n) for n in range(1, 7)] + [(2, 3), (2, 4)]
        for r, n in shapes:
            for flat in itertools.product((-1, 0, 1), repeat=r * n):
                rows = [list(flat[i * n:(i + 1) * n]) for i in range(r)]
                if not _full_rank(rows):
                    continue
                m = OrientedMatroid.from_matrix(rows)
                key = (r, n, frozenset(m.cocircuits))
                if key in seen:
                    continue
                seen.add(key)
                _kernel_checks(m)
                checked += 1
        rng = random.Random(2024)
        for _ in range(40):
            n = rng.randint(5, 8)
            r = rng.randint(2, min(4, n - 1))
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
            if not _full_rank(rows):
                continue
            _kernel_checks(OrientedMatroid.from_matrix(rows))
            checked += 1
        assert checked > 200


# 5 ------------------------------------------------------------------------

def _check_trace(p, sigma):
    path = trace_path(p, sigma)
    src, snk = p.source_sink()
    ext = build_extension(p, sigma)
    assert path.nodes[0] == src and path.nodes[-1] == snk
    assert p.digraph.is_directed_path(path.nodes)
    assert path.joint == ext.kh.sink
    assert set(path.prefix) & set(path.suffix) == {path.joint}
    assert all(ext.member(v, "[f,-h]") for v in path.prefix)
    assert all(ext.member(v, "[-h,-f]") for v in path.suffix)


def test_criterion_5_path_tracer():
    with criterion(5, "path tracer: 50 random extensions per program and facet-avoiding paths", limit=30):
        rng = random.Random(5)
        for name in ("cube3-program", "prism3-program"):
            p = catalog_get(name).payload
            for _ in range(50):
                rule = random_lex_rule(p, rng)
                _check_trace(p, lift_extension(p, localization_from_lex(p.Mfg, rule)))
            src, snk = p.source_sink()
            for e in sorted(src & snk):
                path = trace_facet_avoiding(p, e)
                assert path.nodes[0] == src and path.nodes[-1] == snk
                assert all(e not in v for v in path.internal)


# 6 ------------------------------------------------------------------------

def _random_digraph(rng, acyclic):
    n = rng.randint(3, 12)
    nodes = list(range(n))
    p = rng.uniform(0.3, 0.6) if acyclic else rng.uniform(0.2, 0.4)
    arcs = []
    for i, j in itertools.combinations(nodes, 2):
        if rng.random() < p:
            arcs.append((i, j) if acyclic or rng.random() < 0.5 else (j, i))
    return Digraph(nodes, arcs, source=0, sink=n - 1)


def test_criterion_6_menger_oracle():
    with criterion(6, "max-flow equals exhaustive path families and min cuts on 200 digraphs", limit=60):
        rng = random.Random(6)
        done = 0
        while done < 200:
            dg = _random_digraph(rng, acyclic=done % 2 == 0)
            if dg.sink not in dg.reachable(dg.source):
                continue
            k, paths, cut = max_independent_paths(dg)
            assert k == paths.count == cut.size
            assert k == max_disjoint_family(dg.nodes, dg.arcs, dg.source, dg.sink)
            direct = (dg.source, dg.sink) in dg.arc_set()
            assert k == min_vertex_cut(dg.nodes, dg.arcs, dg.source, dg.sink) + direct
            done += 1


# 7 ------------------------------------------------------------------------

def test_criterion_7_avoidance_pipeline():
    with criterion(7, "avoidance certificates for every pair of internal nodes", limit=120):
        for name in ("cube3-program", "prism3-program"):
            p = catalog_get(name).payload
            src, snk = p.source_sink()
            inner = [v for v in p.nodes if v not in (src, snk)]
            for pair in itertools.combinations(inner, p.r - 2):
                cert = search_avoiding_extension(p, pair)
                assert cert is not None, pair
                assert verify_avoidance_certificate(p, pair, cert)
                path = trace_path(p, lift_extension(p, cert.sigma))
                assert not set(pair) & set(path.nodes)


# 8 ------------------------------------------------------------------------

def _random_rational(rng, lo=-3, hi=3):
    q = rng.randint(1, 3)
    return Fraction(rng.randint(lo * q, hi * q), q)


def test_criterion_8_pomcp():
    with criterion(8, "P-matrix test equals property (P); P-cubes have unique face sinks and k = n", limit=120):
        rng = random.Random(8)
        instances = 0
        for i in range(100):
            n = rng.randint(1, 4)
            # every other matrix has a positive diagonal so that P-matrices of size 4 occur
            m = [[_random_rational(rng, 1 if (i % 2 and a == b) else -3) for b in range(n)] for a in range(n)]
            is_p = p_matrix_check(m)
            assert check_property_p(om_from_pmatrix(m))[0] == is_p, m
            if is_p:
                inst = PomcpInstance.from_matrix(m)
                assert inst.faces_without_unique_sink() == []
                assert check_pomcp_holt_klee(inst).k == n
                instances += 1
        assert instances >= 10


# 9 ------------------------------------------------------------------------

def test_criterion_9_round_trip_and_dot():
    with criterion(9, "shipped fixtures round-trip and DOT output parses"):
        data = resources.files("omp") / "data"
        for item in data.iterdir():
            text = item.read_text()
            if item.name.endswith(".mat"):
                rows = [[Fraction(t) for t in line.split()] for line in text.splitlines() if line.strip()]
                assert "\n".join(" ".join(str(x) for x in r) for r in rows) + "\n" == text
            else:
                assert canonicalize(text) == text, item.name
        for name in ("fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle",
                     "cube3-program", "prism3-program", "pomcp-identity-2", "pomcp-pd-3"):
            obj = catalog_get(name).payload
            dg = obj if isinstance(obj, Digraph) else obj.digraph
            _, paths, cut = max_independent_paths(dg)
            text = export_dot(dg, paths.paths, cut.nodes)
            graphs = pydot.graph_from_dot_data(text)
            assert graphs and len(graphs[0].get_edges()) == len(dg.arcs), name


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
