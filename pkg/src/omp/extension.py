"""Single-element extensions given by cocircuit signatures (localizations)."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .matroid import OMError, OrientedMatroid
from .signs import SignVector, canonical, compose, to_str


class ExtensionError(OMError):
    pass


@dataclass(frozen=True)
class Localization:
    """Signs on the canonical cocircuits of ``base``; extended by sigma(-Y) = -sigma(Y)."""

    base: OrientedMatroid
    signs: dict = field(hash=False)
    label: str = "h"

    def __post_init__(self):
        missing = self.base.cocircuits - set(self.signs)
        if missing:
            raise ExtensionError(
                f"localization leaves {len(missing)} cocircuits unsigned, e.g. {to_str(next(iter(missing)))}"
            )
        if self.label in self.base.ground:
            raise ExtensionError(f"new element label {self.label!r} already in the ground set")

    def __call__(self, y: SignVector) -> int:
        c = canonical(y)
        s = self.signs[c]
        return s if c == tuple(y) else -s

    def negated(self) -> "Localization":
        return Localization(self.base, {y: -s for y, s in self.signs.items()}, self.label)

    def is_zero(self) -> bool:
        return not any(self.signs.values())


@dataclass(frozen=True)
class LexRule:
    """Ordered signed elements ``[e1^s1, ..., ek^sk]``."""

    items: tuple

    _TOKEN = re.compile(r"^(.+?)([+-])$")

    @classmethod
    def parse(cls, text: str) -> "LexRule":
        body = text.strip()
        if body.startswith("lex:"):
            body = body[4:]
        items = []
        for tok in filter(None, (t.strip() for t in body.split(","))):
            m = cls._TOKEN.match(tok)
            if not m:
                raise ExtensionError(f"bad lexicographic token {tok!r}; expected e.g. 'e1+'")
            items.append((m.group(1), 1 if m.group(2) == "+" else -1))
        return cls(tuple(items))

    def __str__(self) -> str:
        return "lex:" + ",".join(f"{e}{'+' if s > 0 else '-'}" for e, s in self.items)

    def __len__(self) -> int:
        return len(self.items)


def localization_from_lex(m: OrientedMatroid, rule: LexRule, label: str = "h") -> Localization:
    if not rule.items:
        raise ExtensionError("empty lexicographic rule")
    elems = [e for e, _ in rule.items]
    if len(set(elems)) != len(elems):
        raise ExtensionError(f"repeated element in {rule}")
    idx = [(m.idx(e), s) for e, s in rule.items]
    signs = {}
    for y in m.cocircuits:
        signs[y] = next((s * y[i] for i, s in idx if y[i]), 0)
    return Localization(m, signs, label)


# rank-2 contractions -------------------------------------------------------

def rank2_contractions(m: OrientedMatroid) -> dict:
    """Map each corank-2 flat (as index set) to the cocircuits (both signs) vanishing on it."""
    if m.rank < 2:
        return {}
    cocs = sorted(m.cocircuits)
    zeros = {y: frozenset(i for i, a in enumerate(y) if not a) for y in cocs}
    flats: dict = {}
    checked: dict = {}
    for a, y1 in enumerate(cocs):
        for y2 in cocs[a + 1:]:
            f = zeros[y1] & zeros[y2]
            if f not in checked:
                checked[f] = m.rank_of(f) == m.rank - 2
            if checked[f] and f not in flats:
                flats[f] = None
    for f in flats:
        members = [y for y in m.all_cocircuits if zeros[canonical(y)] >= f]
        flats[f] = sorted(members)
    return flats


def cyclic_order(cocs: list) -> list | None:
    """Arrange the cocircuits of a rank-2 contraction around their circle.

    Two cocircuits are neighbours when ``Y o Y' == Y' o Y``. Returns ``None``
    if the neighbour relation is not a single cycle.
    """
    if len(cocs) < 4:
        return None
    nbrs = {}
    for y in cocs:
        ny = tuple(-a for a in y)
        nb = [z for z in cocs if z != y and z != ny and compose(y, z) == compose(z, y)]
        if len(nb) != 2:
            return None
        nbrs[y] = nb
    start = cocs[0]
    order = [start]
    prev, cur = None, start
    while True:
        a, b = nbrs[cur]
        nxt = a if a != prev else b
        if nxt == start:
            break
        if nxt in order:
            return None
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(cocs) else None


def _rank2_pattern_ok(s: list) -> bool:
    n = len(s)
    k = n // 2
    zeros = [i for i, v in enumerate(s) if v == 0]
    if len(zeros) == n:
        return True
    if not zeros:
        changes = sum(1 for i in range(n) if s[i] != s[(i + 1) % n])
        return changes == 2
    if len(zeros) == 2 and zeros[1] - zeros[0] == k:
        i = zeros[0]
        side = {s[(i + j) % n] for j in range(1, k)}
        other = {s[(i + k + j) % n] for j in range(1, k)}
        return (k == 1) or (len(side) == 1 and len(other) == 1 and side != other)
    return False


@dataclass
class LocalizationReport:
    violations: list = field(default_factory=list)
    contractions_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return f"valid ({self.contractions_checked} rank-2 contractions checked)"
        return "\n".join(self.violations)


def validate_localization(m: OrientedMatroid, sigma: Localization) -> LocalizationReport:
    rep = LocalizationReport()
    if sigma.base != m:
        rep.violations.append("localization belongs to a different oriented matroid")
        return rep
    if sigma.is_zero() and m.rank >= 1:
        rep.violations.append("sigma is identically zero: the new element would be a loop")
        return rep
    for flat, cocs in rank2_contractions(m).items():
        rep.contractions_checked += 1
        names = ",".join(sorted(m.names(flat)))
        cyc = cyclic_order(cocs)
        if cyc is None:
            rep.violations.append(f"contraction by {{{names}}}: cocircuits do not form a rank-2 cycle")
            continue
        signs = [sigma(y) for y in cyc]
        if not _rank2_pattern_ok(signs):
            shown = " ".join(f"{to_str(y)}:{'+0-'[1 - s]}" for y, s in zip(cyc, signs))
            rep.violations.append(f"contraction by {{{names}}}: no insertion point for signs [{shown}]")
    return rep


def extend(m: OrientedMatroid, sigma: Localization) -> OrientedMatroid:
    """The single-element extension of ``m`` defined by ``sigma``; new element last."""
    rep = validate_localization(m, sigma)
    if not rep.ok:
        raise ExtensionError(f"invalid localization:\n{rep}")
    cocs = [y + (sigma(y),) for y in m.cocircuits]
    for cocycle in rank2_contractions(m).values():
        cyc = cyclic_order(cocycle)
        for i, y1 in enumerate(cyc):
            y2 = cyc[(i + 1) % len(cyc)]
            s1, s2 = sigma(y1), sigma(y2)
            if s1 and s1 == -s2:
                cocs.append(compose(y1, y2) + (0,))
    return OrientedMatroid(m.ground.with_(sigma.label), m.rank, cocs)


def is_general_position(m: OrientedMatroid, e) -> bool:
    """Every circuit through ``e`` has rank + 1 elements."""
    i = m.idx(e)
    return all(sum(1 for a in x if a) == m.rank + 1 for x in m.circuits if x[i])


# program-level extensions --------------------------------------------------

def lift_extension(program, sigma_fg: Localization) -> Localization:
    """Localization of M/g copying f where Y_f != 0 and ``sigma_fg`` elsewhere."""
    mg, mfg = program.Mg, program.Mfg
    if sigma_fg.base != mfg:
        raise ExtensionError("the lifted localization must be defined on M/{f,g}")
    rep = validate_localization(mfg, sigma_fg)
    if not rep.ok:
        raise ExtensionError(f"invalid localization of M/{{f,g}}:\n{rep}")
    fi = mg.idx(program.f)
    signs = {}
    for y in mg.cocircuits:
        if y[fi]:
            signs[y] = y[fi]
        else:
            signs[y] = sigma_fg(y[:fi] + y[fi + 1:])
    lifted = Localization(mg, signs, sigma_fg.label)
    rep = validate_localization(mg, lifted)
    if not rep.ok:
        raise AssertionError(f"lifted localization failed the rank-2 criterion:\n{rep}")
    return lifted


def base_through(m: OrientedMatroid, first, pool: Iterable | None = None) -> list:
    """A base of ``m`` containing ``first``, completed greedily from ``pool`` in ground order."""
    chosen = [m.idx(first)]
    pool = m.labels if pool is None else list(pool)
    for e in pool:
        i = m.idx(e)
        if i not in chosen and m.is_independent(chosen + [i]):
            chosen.append(i)
        if len(chosen) == m.rank:
            break
    if len(chosen) != m.rank:
        raise ExtensionError(f"no base of the pool through {first!r}")
    return [m.labels[i] for i in chosen]


def perturbation_extension(program, e, label: str = "h") -> Localization:
    """Localization of M/g placing the new element infinitesimally close to ``e``."""
    mg = program.Mg
    if e not in program.elements:
        raise ExtensionError(f"{e!r} is not one of the constraint elements")
    if mg.is_loop(e):
        raise ExtensionError(f"{e!r} is a loop of M/g")
    base = base_through(mg, e, pool=program.elements)
    rule = LexRule(tuple((b, 1) for b in base))
    sigma = localization_from_lex(mg, rule, label)
    ext = extend(mg, sigma)
    ei, hi = ext.idx(e), ext.idx(label)
    for y in ext.all_cocircuits:
        if y[ei] and y[hi] and y[ei] != y[hi]:
            raise AssertionError(f"perturbation of {e} disagrees with it on {to_str(y)}")
    return sigma
