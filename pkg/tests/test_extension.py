import random

import pytest

from omp.extension import (
    ExtensionError,
    LexRule,
    Localization,
    cyclic_order,
    extend,
    is_general_position,
    lift_extension,
    localization_from_lex,
    perturbation_extension,
    rank2_contractions,
    validate_localization,
)
from omp.matroid import OrientedMatroid
from omp.signs import canonical


def realized_extension(rows, column):
    """Oriented matroid of ``rows`` with ``column`` appended (as label h)."""
    full = [list(r) + [c] for r, c in zip(rows, column)]
    n = len(rows[0])
    return OrientedMatroid.from_matrix(full, [f"e{i + 1}" for i in range(n)] + ["h"])


ROWS = [[1, 0, 0, 1, 1], [0, 1, 0, 1, -1], [0, 0, 1, 1, 2]]


@pytest.fixture
def base():
    return OrientedMatroid.from_matrix(ROWS)


def test_lex_rule_parsing_round_trip():
    rule = LexRule.parse("lex:e1+,e4-,e2+")
    assert rule.items == (("e1", 1), ("e4", -1), ("e2", 1))
    assert str(rule) == "lex:e1+,e4-,e2+"
    with pytest.raises(ExtensionError):
        LexRule.parse("lex:e1*")


def test_realized_extensions_validate_and_extend_exactly(base):
    rng = random.Random(5)
    for _ in range(12):
        col = [rng.randint(-3, 3) for _ in range(3)]
        if not any(col):
            continue
        target = realized_extension(ROWS, col)
        hi = target.size - 1
        signs = {}
        for y in base.cocircuits:
            lifted = [z for z in target.all_cocircuits if z[:hi] == y]
            assert len(lifted) == 1
            signs[y] = lifted[0][hi]
        sigma = Localization(base, signs)
        assert validate_localization(base, sigma).ok
        assert extend(base, sigma) == target


def test_lexicographic_extensions_are_valid_and_in_general_position(base):
    rule = LexRule.parse("lex:e2+,e1-,e3+")
    sigma = localization_from_lex(base, rule)
    assert validate_localization(base, sigma).ok
    ext = extend(base, sigma)
    assert ext.verify_axioms().ok
    assert is_general_position(ext, "h")
    assert not is_general_position(extend(base, localization_from_lex(base, LexRule.parse("lex:e1+"))), "h")


def test_corrupted_localization_is_reported(base):
    sigma = localization_from_lex(base, LexRule.parse("lex:e1+,e2+,e3+"))
    rng = random.Random(2)
    caught = 0
    for _ in range(30):
        signs = dict(sigma.signs)
        for y in rng.sample(sorted(signs), 2):
            signs[y] = rng.choice((1, 0, -1))
        bad = Localization(base, signs)
        rep = validate_localization(base, bad)
        if not rep.ok:
            caught += 1
            with pytest.raises(ExtensionError):
                extend(base, bad)
        else:
            assert extend(base, bad).verify_axioms().ok
    assert caught > 0


def test_zero_localization_rejected(base):
    zero = Localization(base, {y: 0 for y in base.cocircuits})
    assert not validate_localization(base, zero).ok


def test_rank2_contractions_form_cycles(base):
    flats = rank2_contractions(base)
    assert flats
    for cocs in flats.values():
        order = cyclic_order(cocs)
        assert order is not None and len(order) == len(cocs)
        assert {canonical(y) for y in order} <= base.cocircuits


def test_lifted_extension_copies_f(cube):
    mfg = cube.Mfg
    sigma = localization_from_lex(mfg, LexRule(tuple((mfg.labels[i], 1) for i in sorted(mfg.bases[0]))))
    lifted = lift_extension(cube, sigma)
    fi = cube.Mg.idx("f")
    for y in cube.Mg.cocircuits:
        if y[fi]:
            assert lifted(y) == y[fi]


def test_perturbation_agrees_with_element(prism):
    sigma = perturbation_extension(prism, "x1")
    ext = extend(prism.Mg, sigma)
    i, h = ext.idx("x1"), ext.idx("h")
    assert all(not y[i] or not y[h] or y[i] == y[h] for y in ext.all_cocircuits)
    with pytest.raises(ExtensionError):
        perturbation_extension(prism, "f")
