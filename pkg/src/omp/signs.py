"""Sign vectors over a finite ground set.

A sign vector is a plain tuple with entries in ``{1, 0, -1}`` (``PLUS``,
``ZERO``, ``MINUS``), indexed like the ground set it belongs to. Tuples are
immutable and hashable, which is all the rest of the package needs.
"""
from __future__ import annotations

from typing import Iterable, Sequence

PLUS, ZERO, MINUS = 1, 0, -1

SignVector = tuple  # tuple[int, ...]

_CHAR = {PLUS: "+", ZERO: "0", MINUS: "-"}
_SIGN = {"+": PLUS, "0": ZERO, "-": MINUS}

DEFAULT_MAX_GROUND = 16


class SignError(ValueError):
    """Malformed sign data (bad character, length mismatch)."""


class GroundSet:
    """Ordered, duplicate-free element labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise SignError(f"duplicate labels in ground set: {labels}")
        if len(labels) > DEFAULT_MAX_GROUND:
            raise SignError(
                f"ground set of size {len(labels)} exceeds the cap of {DEFAULT_MAX_GROUND}"
            )
        self.labels = labels
        self._index = {e: i for i, e in enumerate(labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not in the ground set {list(self.labels)}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(e) for e in labels]

    def subset(self, idx: Iterable[int]) -> frozenset:
        return frozenset(self.labels[i] for i in idx)

    def without(self, label: str) -> "GroundSet":
        return GroundSet(e for e in self.labels if e != label)

    def with_(self, label: str) -> "GroundSet":
        return GroundSet(self.labels + (label,))


def _check(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise SignError(f"ground-set mismatch: lengths {len(x)} and {len(y)}")


def neg(x: SignVector) -> SignVector:
    return tuple(-a for a in x)


def zero(n: int) -> SignVector:
    return (0,) * n


def support(x: SignVector) -> frozenset:
    return frozenset(i for i, a in enumerate(x) if a)


def zero_set(x: SignVector) -> frozenset:
    return frozenset(i for i, a in enumerate(x) if not a)


def positive_part(x: SignVector) -> frozenset:
    return frozenset(i for i, a in enumerate(x) if a > 0)


def negative_part(x: SignVector) -> frozenset:
    return frozenset(i for i, a in enumerate(x) if a < 0)


def compose(x: SignVector, y: SignVector) -> SignVector:
    """Return ``x o y``: take ``x`` where it is nonzero, ``y`` elsewhere."""
    _check(x, y)
    return tuple(a if a else b for a, b in zip(x, y))


def separation(x: SignVector, y: SignVector) -> frozenset:
    """Indices where ``x`` and ``y`` carry opposite nonzero signs."""
    _check(x, y)
    return frozenset(i for i, (a, b) in enumerate(zip(x, y)) if a and a == -b)


def orthogonal(x: SignVector, y: SignVector) -> bool:
    _check(x, y)
    same = opposite = False
    for a, b in zip(x, y):
        p = a * b
        if p > 0:
            same = True
        elif p < 0:
            opposite = True
    return same == opposite


def conforms(x: SignVector, y: SignVector) -> bool:
    """True if ``x <= y`` in the conformal order (y o x == y)."""
    return all(not a or a == b for a, b in zip(x, y))


def is_nonnegative(x: SignVector) -> bool:
    return all(a >= 0 for a in x)


def sort_key(x: SignVector) -> tuple:
    # PLUS < ZERO < MINUS at each position
    return tuple(-a for a in x)


def canonical(x: SignVector) -> SignVector:
    """Representative of ``{x, -x}`` whose first nonzero entry is PLUS."""
    for a in x:
        if a:
            return x if a > 0 else neg(x)
    return x


def canonical_set(vectors: Iterable[SignVector]) -> frozenset:
    return frozenset(canonical(tuple(v)) for v in vectors)


def with_negatives(vectors: Iterable[SignVector]) -> frozenset:
    out = set()
    for v in vectors:
        out.add(v)
        out.add(neg(v))
    return frozenset(out)


def sorted_vectors(vectors: Iterable[SignVector]) -> list:
    return sorted(vectors, key=sort_key)


def to_str(x: SignVector) -> str:
    return "".join(_CHAR[a] for a in x)


def from_str(s: str, length: int | None = None) -> SignVector:
    s = s.strip()
    out = []
    for pos, ch in enumerate(s, start=1):
        try:
            out.append(_SIGN[ch])
        except KeyError:
            raise SignError(f"bad sign character {ch!r} at position {pos} in {s!r}") from None
    if length is not None and len(out) != length:
        raise SignError(f"sign string {s!r} has length {len(out)}, expected {length}")
    return tuple(out)


def drop(x: SignVector, i: int) -> SignVector:
    return x[:i] + x[i + 1:]


def insert(x: SignVector, i: int, value: int) -> SignVector:
    return x[:i] + (value,) + x[i:]
