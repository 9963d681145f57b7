from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from omp import linalg
from oracles import leibniz_det

entries = st.integers(-4, 4)


def matrices(rmax=4, cmax=5):
    return st.integers(1, rmax).flatmap(
        lambda r: st.integers(1, cmax).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150)
@given(square)
def test_det_matches_leibniz_expansion(a):
    assert linalg.det(a) == leibniz_det([[Fraction(x) for x in row] for row in a])


@settings(max_examples=150)
@given(matrices())
def test_kernel_is_orthogonal_and_rank_nullity_holds(a):
    k = linalg.kernel(a)
    n = len(a[0])
    assert linalg.rank(a) + len(k) == n
    for v in k:
        for row in a:
            assert sum(Fraction(x) * y for x, y in zip(row, v)) == 0
    if k:
        assert linalg.rank(k) == len(k)


def test_rejects_floats():
    with pytest.raises(TypeError):
        linalg.to_fraction(0.5)
    assert linalg.to_fraction("3/4") == Fraction(3, 4)


def test_rref_example():
    r, piv = linalg.rref([[2, 4, 2], [1, 2, 3]])
    assert piv == [0, 2]
    assert r[0] == [1, 2, 0]
