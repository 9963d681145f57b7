import itertools
import random

import pytest

from omp import matroid
from omp.matroid import CapExceeded, OMError, OrientedMatroid
from omp.signs import from_str, orthogonal, to_str
from oracles import cocircuits_by_cross_product


def strip(m):
    """Same cocircuits, no chirotope or realization: forces the combinatorial routes."""
    return OrientedMatroid(m.ground, m.rank, m.cocircuits)


def random_matrix(rng, r, n, lo=-3, hi=3):
    from omp import linalg

    while True:
        a = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(r)]
        if linalg.rank(a) == r:
            return a


@pytest.fixture
def small():
    return OrientedMatroid.from_matrix([[1, 0, 1], [0, 1, 1]])


def test_small_example(small):
    assert sorted(to_str(y) for y in small.cocircuits) == ["+-0", "+0+", "0++"]
    assert len(small.covectors) == 13
    assert {to_str(x) for x in small.circuits} == {"++-"}
    assert small.verify_axioms().ok


def test_small_minors_and_convexity(small):
    d = small.dual()
    assert d.rank == 1 and d.dual() == small
    c = small.contract("e3")
    assert c.rank == 1 and {to_str(y) for y in c.cocircuits} == {"+-"}
    assert small.fundamental_circuit(["e1", "e2"], "e3") == from_str("--+")
    assert small.fundamental_cocircuit(["e1", "e2"], "e1") == from_str("+0+")
    assert small.conv("e3", ["e1", "e2"], 1)


def test_cocircuits_match_cross_product_oracle():
    rng = random.Random(7)
    for r, n in [(1, 4), (2, 5), (3, 6), (3, 7), (4, 7)]:
        for _ in range(4):
            a = random_matrix(rng, r, n)
            assert OrientedMatroid.from_matrix(a).cocircuits == cocircuits_by_cross_product(a)


def test_circuit_routes_agree_and_vectors_are_orthogonal_to_covectors():
    rng = random.Random(3)
    for r, n in [(2, 4), (2, 5), (3, 6)]:
        m = OrientedMatroid.from_matrix(random_matrix(rng, r, n))
        assert m.circuits_brute_force() == m.circuits_from_chirotope()
        for x in itertools.product((1, 0, -1), repeat=n):
            in_span = all(orthogonal(x, y) for y in m.covectors)
            assert m.is_vector(x) == in_span
            assert m.is_covector(x) == (x in m.covectors)


def test_from_chirotope_string_matches_realization():
    m = OrientedMatroid.from_matrix([[1, 0, 1, 1], [0, 1, 1, -1]])
    chi = "".join("+0-"[1 - m.chirotope[s]] for s in itertools.combinations(range(4), 2))
    assert OrientedMatroid.from_chirotope(m.labels, 2, chi) == m
    with pytest.raises(OMError, match="expected C"):
        OrientedMatroid.from_chirotope(m.labels, 2, chi[:-1])


def test_combinatorial_minors_match_realized_ones():
    rng = random.Random(11)
    for _ in range(6):
        m = OrientedMatroid.from_matrix(random_matrix(rng, 3, 6))
        s = strip(m)
        for e in m.labels:
            assert s.contract(e) == m.contract(e)
            if not m.is_coloop(e):
                assert s.delete(e) == m.delete(e)
        assert strip(m).dual() == m.dual()


def test_reorientation_and_loops():
    m = OrientedMatroid.from_matrix([[1, 0, 0, 1], [0, 1, 0, 1]])
    assert m.is_loop("e3") and not m.is_loop("e1")
    assert m.reorient("e4").reorient("e4") == m
    assert m.reorient("e1") == strip(m).reorient("e1")


def test_rank_mismatch_rejected():
    with pytest.raises(OMError, match="rank"):
        OrientedMatroid.from_matrix([[1, 2], [2, 4]])
    with pytest.raises(OMError):
        OrientedMatroid.from_cocircuits(["a", "b"], 1, [])


def test_axiom_checker_reports_a_broken_set():
    m = OrientedMatroid.from_matrix([[1, 0, 1, 1], [0, 1, 1, -1]])
    broken = OrientedMatroid(m.ground, 2, sorted(m.cocircuits)[1:])
    rep = broken.verify_axioms()
    assert not rep.ok and any(v[0] == "Y3" for v in rep.violations)


def test_cap_is_enforced():
    old = matroid.get_cap()
    try:
        matroid.set_cap(4)
        m = OrientedMatroid(["a", "b", "c", "d", "e"], 1, [(1, 1, 1, 1, 1)])
        with pytest.raises(CapExceeded):
            m.covectors
    finally:
        matroid.set_cap(old)
