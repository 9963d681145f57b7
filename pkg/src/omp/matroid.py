"""Oriented matroids stored by their cocircuits.

The canonical cocircuit set (one representative per ``{Y, -Y}`` pair) is the
primary data. A chirotope and an exact realization matrix are optional
accelerators; when a realization is present its *row space* gives the
covectors.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .signs import (
    GroundSet,
    SignVector,
    canonical,
    compose,
    conforms,
    from_str,
    neg,
    orthogonal,
    sort_key,
    sorted_vectors,
    to_str,
    with_negatives,
)

_DEFAULT_CAP = 12
_cap = int(os.environ.get("OMP_CAP", _DEFAULT_CAP))


class OMError(ValueError):
    """Invalid oriented matroid input or request."""


class CapExceeded(OMError):
    pass


def get_cap() -> int:
    return _cap


def set_cap(n: int) -> None:
    global _cap
    _cap = int(n)


def _require_cap(n: int, what: str) -> None:
    if n > _cap:
        raise CapExceeded(
            f"{what} needs a brute-force sweep over 3^{n} sign vectors; the cap is |E| <= {_cap}. "
            "Build the oriented matroid from a chirotope or matrix, or raise --cap / OMP_CAP."
        )


def _perm_sign(t: Sequence[int]) -> int:
    """Sign of the permutation sorting ``t`` (0 if ``t`` repeats an entry)."""
    if len(set(t)) != len(t):
        return 0
    s = 1
    t = list(t)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                s = -s
    return s


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, *witnesses) -> None:
        self.violations.append((axiom, witnesses))

    def __str__(self) -> str:
        if self.ok:
            return "all axioms hold"
        lines = []
        for axiom, wit in self.violations:
            shown = ", ".join(to_str(w) if isinstance(w, tuple) else str(w) for w in wit)
            lines.append(f"{axiom}: {shown}")
        return "\n".join(lines)


class OrientedMatroid:
    def __init__(self, labels, rank: int, cocircuits: Iterable[SignVector],
                 chirotope: dict | None = None, realization=None):
        self.ground = labels if isinstance(labels, GroundSet) else GroundSet(labels)
        self.rank = int(rank)
        n = len(self.ground)
        cocircuits = [tuple(y) for y in cocircuits]
        for y in cocircuits:
            if len(y) != n:
                raise OMError(f"sign vector {to_str(y)} has length {len(y)}, ground set has {n}")
        self.cocircuits = frozenset(canonical(y) for y in cocircuits if any(y))
        if not self.cocircuits and self.rank > 0:
            raise OMError("an oriented matroid of positive rank needs at least one cocircuit")
        self.chirotope = chirotope
        self.realization = realization

    # construction -----------------------------------------------------

    @classmethod
    def from_cocircuits(cls, labels, rank: int, vectors: Iterable) -> "OrientedMatroid":
        """Store the canonicalized set as given; no axiom checking."""
        ground = labels if isinstance(labels, GroundSet) else GroundSet(labels)
        vecs = [from_str(v, len(ground)) if isinstance(v, str) else tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != len(ground):
                raise OMError(f"cocircuit {to_str(v)} does not match ground set size {len(ground)}")
        if not any(any(v) for v in vecs):
            raise OMError("empty cocircuit set")
        return cls(ground, rank, vecs)

    @classmethod
    def from_matrix(cls, rows, labels=None) -> "OrientedMatroid":
        """Oriented matroid whose covectors are the sign vectors of the row space of ``rows``."""
        m = linalg.as_matrix(rows)
        if not m:
            raise OMError("empty matrix; use from_vector_matrix for rank 0")
        r = len(m)
        ncols = len(m[0])
        if linalg.rank(m) != r:
            raise OMError(f"matrix has {r} rows but rank {linalg.rank(m)}")
        if labels is None:
            labels = [f"e{i + 1}" for i in range(ncols)]
        return cls._from_realization(labels, m)

    @classmethod
    def from_vector_matrix(cls, rows, labels=None) -> "OrientedMatroid":
        """Oriented matroid whose *vectors* are the row space of ``rows``."""
        m = linalg.as_matrix(rows)
        ncols = len(m[0])
        if labels is None:
            labels = [f"e{i + 1}" for i in range(ncols)]
        return cls._from_realization(labels, linalg.kernel(m), ncols=ncols)

    @classmethod
    def _from_realization(cls, labels, m, ncols: int | None = None) -> "OrientedMatroid":
        ground = labels if isinstance(labels, GroundSet) else GroundSet(labels)
        r = len(m)
        n = len(ground) if ncols is None else ncols
        if len(ground) != n or (m and len(m[0]) != n):
            raise OMError("label count does not match the number of matrix columns")
        chi = {}
        for s in itertools.combinations(range(n), r):
            chi[s] = linalg.sign(linalg.det(linalg.columns(m, s))) if r else 1
        cocircuits = _cocircuits_from_chirotope(n, r, chi)
        return cls(ground, r, cocircuits, chirotope=chi, realization=m)

    @classmethod
    def from_chirotope(cls, labels, rank: int, signs) -> "OrientedMatroid":
        """``signs`` is a string over ``+-0`` listing r-subsets in lexicographic order."""
        ground = labels if isinstance(labels, GroundSet) else GroundSet(labels)
        n = len(ground)
        subsets = list(itertools.combinations(range(n), rank))
        if isinstance(signs, str):
            vals = from_str(signs)
            if len(vals) != len(subsets):
                raise OMError(
                    f"chirotope string has {len(vals)} signs, expected C({n},{rank}) = {len(subsets)}"
                )
            chi = dict(zip(subsets, vals))
        else:
            chi = {tuple(sorted(k)): v for k, v in dict(signs).items()}
        if not any(chi.values()):
            raise OMError("chirotope is identically zero")
        return cls(ground, rank, _cocircuits_from_chirotope(n, rank, chi), chirotope=chi)

    # basic data --------------------------------------------------------

    @property
    def labels(self) -> tuple:
        return self.ground.labels

    @property
    def size(self) -> int:
        return len(self.ground)

    def idx(self, e) -> int:
        """Index of an element given by label (str) or index (int)."""
        if isinstance(e, int):
            if not 0 <= e < self.size:
                raise OMError(f"element index {e} out of range")
            return e
        try:
            return self.ground.index(e)
        except KeyError as exc:
            raise OMError(str(exc)) from None

    def idxs(self, elems) -> frozenset:
        return frozenset(self.idx(e) for e in elems)

    def names(self, idx: Iterable[int]) -> frozenset:
        return self.ground.subset(idx)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedMatroid):
            return NotImplemented
        return (self.labels == other.labels and self.rank == other.rank
                and self.cocircuits == other.cocircuits)

    def __hash__(self) -> int:
        return hash((self.labels, self.rank, self.cocircuits))

    def __repr__(self) -> str:
        return f"OrientedMatroid(rank={self.rank}, labels={list(self.labels)}, cocircuits={len(self.cocircuits)})"

    def sorted_cocircuits(self) -> list:
        return sorted_vectors(self.cocircuits)

    @cached_property
    def all_cocircuits(self) -> frozenset:
        return with_negatives(self.cocircuits)

    # circuits ----------------------------------------------------------

    @cached_property
    def circuits(self) -> frozenset:
        if self.chirotope is not None:
            return self.circuits_from_chirotope()
        return self.circuits_brute_force()

    @cached_property
    def all_circuits(self) -> frozenset:
        return with_negatives(self.circuits)

    def circuits_brute_force(self) -> frozenset:
        """Minimal nonzero sign vectors orthogonal to every cocircuit.

        Supports are swept by increasing size; a support containing a known
        circuit support is skipped, and circuits never exceed rank + 1 elements.
        """
        n = self.size
        _require_cap(n, "circuit enumeration")
        cocs = list(self.cocircuits)
        found = []
        found_supports = []
        for k in range(1, min(n, self.rank + 1) + 1):
            for supp in itertools.combinations(range(n), k):
                s = frozenset(supp)
                if any(c <= s for c in found_supports):
                    continue
                hit = None
                for signs in itertools.product((1, -1), repeat=k - 1):
                    x = [0] * n
                    x[supp[0]] = 1
                    for i, a in zip(supp[1:], signs):
                        x[i] = a
                    x = tuple(x)
                    if all(orthogonal(x, y) for y in cocs):
                        hit = x
                        break
                if hit is not None:
                    found.append(hit)
                    found_supports.append(s)
        return frozenset(found)

    def circuits_from_chirotope(self) -> frozenset:
        """Cofactor rule: X_{t_i} = (-1)^i chi(T minus t_i) for (r+1)-subsets T."""
        if self.chirotope is None:
            raise OMError("no chirotope available")
        n, r = self.size, self.rank
        chi = self.chirotope
        out = set()
        for t in itertools.combinations(range(n), r + 1):
            x = [0] * n
            for i, ti in enumerate(t):
                rest = t[:i] + t[i + 1:]
                x[ti] = (-1) ** i * chi.get(rest, 0)
            if any(x):
                out.add(canonical(tuple(x)))
        return frozenset(out)

    # covectors ---------------------------------------------------------

    @cached_property
    def covectors(self) -> frozenset:
        """Closure of cocircuits and 0 under composition and negation."""
        n = self.size
        _require_cap(n, "covector span")
        gens = list(self.all_cocircuits)
        z = (0,) * n
        seen = {z}
        stack = [z]
        while stack:
            x = stack.pop()
            for c in gens:
                y = compose(x, c)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def is_vector(self, x: SignVector) -> bool:
        return all(orthogonal(x, y) for y in self.cocircuits)

    def is_covector(self, x: SignVector) -> bool:
        return all(orthogonal(x, c) for c in self.circuits)

    def nonnegative_cocircuits(self) -> list:
        return sorted_vectors(y for y in self.all_cocircuits if all(a >= 0 for a in y))

    # rank --------------------------------------------------------------

    @cached_property
    def bases(self) -> tuple:
        n, r = self.size, self.rank
        if self.chirotope is not None:
            return tuple(frozenset(k) for k, v in sorted(self.chirotope.items()) if v)
        supports = [frozenset(i for i, a in enumerate(y) if a) for y in self.cocircuits]
        out = []
        for b in itertools.combinations(range(n), r):
            bs = frozenset(b)
            if all(bs & s for s in supports):
                out.append(bs)
        return tuple(out)

    def is_independent(self, a) -> bool:
        s = frozenset(a)
        return any(s <= b for b in self.bases)

    def rank_of(self, elems) -> int:
        """Rank of a subset (labels or indices), grown greedily."""
        a = sorted(self.idxs(elems))
        indep = frozenset()
        for e in a:
            t = indep | {e}
            if self.is_independent(t):
                indep = t
        return len(indep)

    def is_base(self, elems) -> bool:
        return frozenset(self.idxs(elems)) in set(self.bases)

    def is_loop(self, e) -> bool:
        i = self.idx(e)
        return all(y[i] == 0 for y in self.cocircuits)

    def is_coloop(self, e) -> bool:
        i = self.idx(e)
        return any(all(a == 0 for j, a in enumerate(y) if j != i) for y in self.cocircuits)

    # duality and minors --------------------------------------------------

    def dual(self) -> "OrientedMatroid":
        real = None
        if self.realization is not None:
            real = linalg.kernel(self.realization) if self.realization else [
                [Fraction(int(i == j)) for j in range(self.size)] for i in range(self.size)]
        if real is not None:
            return OrientedMatroid._from_realization(self.ground, real, ncols=self.size)
        return OrientedMatroid(self.ground, self.size - self.rank, self.circuits)

    def delete(self, e) -> "OrientedMatroid":
        i = self.idx(e)
        ground = self.ground.without(self.labels[i])
        if self.realization is not None:
            m = [row[:i] + row[i + 1:] for row in self.realization]
            return OrientedMatroid._from_realization(ground, linalg.row_basis(m) if m else m,
                                                     ncols=self.size - 1)
        restricted = {canonical(y[:i] + y[i + 1:]) for y in self.cocircuits}
        restricted.discard((0,) * (self.size - 1))
        cocs = _minimal(restricted)
        rank = self.rank - 1 if self.is_coloop(i) else self.rank
        return OrientedMatroid(ground, rank, cocs)

    def contract(self, e) -> "OrientedMatroid":
        i = self.idx(e)
        ground = self.ground.without(self.labels[i])
        if self.realization is not None:
            m = [list(row) for row in self.realization]
            p = next((k for k, row in enumerate(m) if row[i] != 0), None)
            if p is not None:
                piv = m[p]
                m = [[a - row[i] / piv[i] * b for a, b in zip(row, piv)]
                     for k, row in enumerate(m) if k != p]
            m = [row[:i] + row[i + 1:] for row in m]
            return OrientedMatroid._from_realization(ground, m, ncols=self.size - 1)
        cocs = [y[:i] + y[i + 1:] for y in self.cocircuits if y[i] == 0]
        rank = self.rank if self.is_loop(i) else self.rank - 1
        return OrientedMatroid(ground, rank, cocs)

    def delete_all(self, elems) -> "OrientedMatroid":
        m = self
        for e in elems:
            m = m.delete(e)
        return m

    def contract_all(self, elems) -> "OrientedMatroid":
        m = self
        for e in elems:
            m = m.contract(e)
        return m

    def restrict(self, elems) -> "OrientedMatroid":
        keep = set(elems)
        return self.delete_all([e for e in self.labels if e not in keep])

    def reorient(self, e) -> "OrientedMatroid":
        """Negate element ``e`` in every covector."""
        i = self.idx(e)
        flip = lambda y: y[:i] + (-y[i],) + y[i + 1:]
        if self.realization is not None:
            m = [row[:i] + [-row[i]] + row[i + 1:] for row in self.realization]
            return OrientedMatroid._from_realization(self.ground, m, ncols=self.size)
        return OrientedMatroid(self.ground, self.rank, [flip(y) for y in self.cocircuits])

    # fundamental circuits and convexity ---------------------------------

    def fundamental_circuit(self, base, p) -> SignVector:
        b = self.idxs(base)
        pi = self.idx(p)
        if b not in set(self.bases):
            raise OMError(f"{sorted(self.names(b))} is not a base")
        if pi in b:
            raise OMError("p must lie outside the base")
        allowed = b | {pi}
        for x in self.all_circuits:
            if x[pi] > 0 and all(not a or i in allowed for i, a in enumerate(x)):
                return x
        raise OMError("no fundamental circuit found (invalid oriented matroid?)")

    def fundamental_cocircuit(self, base, q) -> SignVector:
        b = self.idxs(base)
        qi = self.idx(q)
        if b not in set(self.bases):
            raise OMError(f"{sorted(self.names(b))} is not a base")
        if qi not in b:
            raise OMError("q must lie in the base")
        for y in self.all_cocircuits:
            if y[qi] > 0 and all(not a or i == qi or i not in b for i, a in enumerate(y)):
                return y
        raise OMError("no fundamental cocircuit found (invalid oriented matroid?)")

    def conv(self, p, elems, sign: int = 1) -> bool:
        """``p in conv(A)`` for sign +1, ``-p in conv(A)`` for sign -1."""
        pi = self.idx(p)
        a = self.idxs(elems)
        if pi in a:
            raise OMError("p must not belong to A")
        return self.conv_witness(pi, a, sign) is not None

    def conv_witness(self, p, elems, sign: int = 1):
        pi = self.idx(p)
        a = self.idxs(elems)
        for x in self.all_circuits:
            pos = {i for i, v in enumerate(x) if v > 0}
            negs = {i for i, v in enumerate(x) if v < 0}
            if sign > 0 and negs == {pi} and pos <= a:
                return x
            if sign < 0 and not negs and pi in pos and pos <= a | {pi}:
                return x
        return None

    # axiom verification -------------------------------------------------

    def verify_axioms(self) -> AxiomReport:
        rep = AxiomReport()
        n = self.size
        cov = self.covectors
        z = (0,) * n
        if z not in cov:
            rep.add("Y0", z)
        for x in cov:
            if neg(x) not in cov:
                rep.add("Y1", x)
        covl = sorted(cov, key=sort_key)
        masks = [_masks(x) for x in covl]
        mset = set(masks)
        projections: dict = {}

        def proj(keep):
            got = projections.get(keep)
            if got is None:
                got = {(p & keep, q & keep) for p, q in masks}
                projections[keep] = got
            return got

        full = (1 << n) - 1
        for a, (xp, xn) in enumerate(masks):
            xz = full & ~(xp | xn)
            for b in range(a + 1, len(masks)):
                yp, yn = masks[b]
                yz = full & ~(yp | yn)
                if (xp | (yp & xz), xn | (yn & xz)) not in mset:
                    rep.add("Y2", covl[a], covl[b])
                if (yp | (xp & yz), yn | (xn & yz)) not in mset:
                    rep.add("Y2", covl[b], covl[a])
                sep = (xp & yn) | (xn & yp)
                if not sep:
                    continue
                cp, cn = (xp | (yp & xz)) & ~sep, (xn | (yn & xz)) & ~sep
                rest = full & ~sep
                bits = sep
                while bits:
                    e = bits & -bits
                    bits ^= e
                    if (cp, cn) not in proj(rest | e):
                        rep.add("Y3", covl[a], covl[b], self.labels[e.bit_length() - 1])
        nonzero = [x for x in cov if any(x)]
        supports = {x: frozenset(i for i, v in enumerate(x) if v) for x in nonzero}
        minimal = {x for x in nonzero if not any(supports[w] < supports[x] for w in nonzero)}
        for y in self.all_cocircuits:
            if y not in minimal:
                rep.add("cocircuit-minimality", y)
        chain = _maximal_chain_length(cov)
        if chain != self.rank:
            rep.add("rank", f"declared {self.rank}, maximal covector chain has length {chain}")
        if n <= _cap:
            for x in self.circuits:
                for y in self.cocircuits:
                    if not orthogonal(x, y):
                        rep.add("orthogonality", x, y)
        return rep


def _cocircuits_from_chirotope(n: int, r: int, chi: dict) -> list:
    out = set()
    if r == 0:
        return []
    for s in itertools.combinations(range(n), r - 1):
        y = []
        for e in range(n):
            t = s + (e,)
            ps = _perm_sign(t)
            y.append(ps * chi.get(tuple(sorted(t)), 0) if ps else 0)
        if any(y):
            out.add(canonical(tuple(y)))
    return list(out)


def _masks(x: SignVector) -> tuple:
    p = q = 0
    for i, a in enumerate(x):
        if a > 0:
            p |= 1 << i
        elif a < 0:
            q |= 1 << i
    return p, q


def _minimal(vectors) -> list:
    vs = list(vectors)
    supp = {v: frozenset(i for i, a in enumerate(v) if a) for v in vs}
    return [v for v in vs if not any(supp[w] < supp[v] for w in vs)]


def _maximal_chain_length(cov) -> int:
    """Length of a greedy maximal chain 0 < Y1 < ... in the conformal order."""
    cur = next(x for x in cov if not any(x))
    steps = 0
    while True:
        above = [y for y in cov if y != cur and conforms(cur, y)]
        if not above:
            return steps
        cur = min(above, key=lambda y: (sum(1 for a in y if a), sort_key(y)))
        steps += 1
