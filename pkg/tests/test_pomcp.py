import random

import pytest

from omp.catalog import catalog_get
from omp.extension import LexRule
from omp.pomcp import (
    PomcpError,
    PomcpInstance,
    check_pomcp_holt_klee,
    check_property_p,
    cube_subdivision,
    is_cube_graph,
    om_from_pmatrix,
    p_matrix_check,
    validate_subdivision,
)
from omp.signs import to_str


def cells(*groups):
    return {frozenset(g) for g in groups}


def test_cube_subdivision_small_cases():
    assert set(cube_subdivision(1)) == cells("1", "2")
    assert set(cube_subdivision(2)) == cells("12", "14", "32", "34")
    assert len(cube_subdivision(4)) == 16
    with pytest.raises(PomcpError):
        cube_subdivision(0)


@pytest.mark.parametrize("m,expected", [
    ([[1, 0], [0, 1]], True),
    ([[0, 1], [1, 0]], False),
    ([[2, 1], [1, 2]], True),
])
def test_property_p_matches_principal_minors(m, expected):
    ok, witness = check_property_p(om_from_pmatrix(m))
    assert ok == expected == p_matrix_check(m)
    if not ok:
        n = len(m)
        assert not any(witness[i] and witness[i] == witness[n + i] for i in range(n))


def test_malformed_inputs():
    with pytest.raises(PomcpError, match="square"):
        p_matrix_check([[1, 2]])
    from omp.matroid import OrientedMatroid

    with pytest.raises(PomcpError, match="odd"):
        check_property_p(OrientedMatroid.from_matrix([[1, 0, 1]]))


def test_random_matrices_agree_both_ways():
    rng = random.Random(41)
    seen = {True: 0, False: 0}
    for _ in range(40):
        n = rng.randint(1, 3)
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        want = p_matrix_check(m)
        assert check_property_p(om_from_pmatrix(m))[0] == want, m
        seen[want] += 1
    assert seen[True] and seen[False]


def test_cube_subdivision_validates_for_p_matrices():
    for m in ([[1, 0], [0, 1]], [[2, 1], [1, 2]], [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]):
        n_om = om_from_pmatrix(m)
        rep = validate_subdivision(n_om, cube_subdivision(len(m)))
        assert rep.ok, rep.lines()
        assert rep.extensions_sampled > 0
        assert any("sampled" in line and "not proved" in line for line in rep.lines())


def test_deficient_cell_is_reported():
    n_om = om_from_pmatrix([[1, 0], [0, 1]])
    rep = validate_subdivision(n_om, cube_subdivision(2) + [frozenset("13")], extensions=[])
    assert rep.rank and "rank 1" in rep.rank[0]


def test_ridge_in_three_cells_is_reported():
    n_om = om_from_pmatrix([[1, 0], [0, 1]])
    rep = validate_subdivision(n_om, cube_subdivision(2) + [frozenset("124")], extensions=[])
    assert not rep.ok
    assert any("3 cells" in line for line in rep.facets)


def test_identity_instance_is_a_directed_four_cycle():
    inst = PomcpInstance.from_matrix([[1, 0], [0, 1]])
    dg = inst.digraph
    assert is_cube_graph(dg, 2) and len(dg.arcs) == 4
    assert dg.unique_source_sink() == (dg.source, dg.sink)
    assert inst.faces_without_unique_sink() == []
    v = check_pomcp_holt_klee(inst)
    assert v.holds and v.k == 2


def test_catalog_instances():
    for name, n in (("pomcp-identity-2", 2), ("pomcp-pd-3", 3)):
        inst = catalog_get(name).payload
        assert is_cube_graph(inst.digraph, n)
        assert inst.faces_without_unique_sink() == []
        assert check_pomcp_holt_klee(inst).k == n


def test_four_dimensional_instances():
    rng = random.Random(3)
    done = 0
    while done < 3:
        a = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        m = [[sum(a[k][i] * a[k][j] for k in range(4)) + (4 if i == j else 0) for j in range(4)] for i in range(4)]
        inst = PomcpInstance.from_matrix(m)
        assert inst.faces_without_unique_sink() == []
        assert check_pomcp_holt_klee(inst).k == 4
        done += 1


def test_extension_override_and_rejection():
    inst = PomcpInstance.from_matrix([[2, 1], [1, 2]], LexRule.parse("lex:3-,4+"))
    assert is_cube_graph(inst.digraph, 2)
    with pytest.raises(PomcpError, match="property"):
        PomcpInstance.from_matrix([[0, 1], [1, 0]])
    with pytest.raises(PomcpError, match="general position"):
        PomcpInstance.from_matrix([[1, 0], [0, 1]], LexRule.parse("lex:1+")).digraph


def test_violating_circuit_renders():
    ok, w = check_property_p(om_from_pmatrix([[0, 1], [1, 0]]))
    assert not ok and len(to_str(w)) == 4
