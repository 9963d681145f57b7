"""Independent brute-force references used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction


# exact linear algebra by cofactor / Leibniz expansion ------------------------

def leibniz_det(a) -> Fraction:
    n = len(a)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(1)
        for i, p in enumerate(perm):
            term *= a[i][p]
        total += -term if inv % 2 else term
    return total


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def solve_left_null(cols):
    """A nonzero y with y . c = 0 for each column c (r-1 independent columns in R^r)."""
    r = len(cols[0])
    # y_i = (-1)^i det of the r-1 x r-1 minor without row i (generalized cross product)
    y = []
    for i in range(r):
        minor = [[c[k] for c in cols] for k in range(r) if k != i]
        y.append((-1) ** i * leibniz_det(minor) if minor else Fraction(1))
    return y


def cocircuits_by_cross_product(rows) -> set:
    """Canonical cocircuits of the row space: sign(y^T A) for y normal to r-1 columns."""
    a = [[Fraction(x) for x in row] for row in rows]
    r, n = len(a), len(a[0])
    cols = [[a[i][j] for i in range(r)] for j in range(n)]
    out = set()
    for s in itertools.combinations(range(n), r - 1):
        y = solve_left_null([cols[j] for j in s]) if r > 1 else [Fraction(1)]
        if not any(y):
            continue
        v = tuple(sgn(sum(y[i] * cols[j][i] for i in range(r))) for j in range(n))
        if any(v):
            first = next(x for x in v if x)
            out.add(v if first > 0 else tuple(-x for x in v))
    return out


# disjoint paths ----------------------------------------------------------

def simple_paths(nodes, arcs, s, t):
    succ = {v: [] for v in nodes}
    for u, v in arcs:
        succ[u].append(v)
    out = []

    def go(u, seen, path):
        if u == t:
            out.append(list(path))
            return
        for w in succ[u]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                go(w, seen, path)
                path.pop()
                seen.discard(w)

    go(s, {s}, [s])
    return out


def max_disjoint_family(nodes, arcs, s, t) -> int:
    """Largest family of s-t paths pairwise sharing only s and t (exhaustive)."""
    paths = simple_paths(nodes, arcs, s, t)
    inner = sorted({frozenset(p[1:-1]) for p in paths}, key=len)
    direct = any(len(p) == 2 for p in paths)
    # the direct arc contributes one path with empty interior
    inner = [m for m in inner if m]
    minimal = [m for m in inner if not any(o < m for o in inner)]
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(minimal)):
            if not (minimal[i] & used):
                grow(i + 1, used | minimal[i], count + 1)

    grow(0, frozenset(), 0)
    return best + int(direct)


def min_vertex_cut(nodes, arcs, s, t):
    """Smallest internal vertex set meeting every s-t path of length >= 2 arcs (exhaustive)."""
    paths = [frozenset(p[1:-1]) for p in simple_paths(nodes, arcs, s, t) if len(p) > 2]
    pool = [v for v in nodes if v not in (s, t)]
    for k in range(len(pool) + 1):
        for cut in itertools.combinations(pool, k):
            c = set(cut)
            if all(p & c for p in paths):
                return k
    return len(pool)


# LP geometry ---------------------------------------------------------------

def solve(a, b):
    """Exact Gaussian elimination for a square nonsingular system; None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def lp_vertex_digraph(a, b, c, labels):
    """Vertices of {y >= 0, A y = b} with their tight sets, edges and objective arcs.

    Returns (nodes as frozensets of tight labels, set of arcs (low -> high objective)).
    """
    m, n = len(a), len(a[0])
    verts = {}
    for basis in itertools.combinations(range(n), m):
        sub = [[a[i][j] for j in basis] for i in range(m)]
        x = solve(sub, b)
        if x is None or any(v < 0 for v in x):
            continue
        full = [Fraction(0)] * n
        for j, v in zip(basis, x):
            full[j] = v
        tight = frozenset(labels[j] for j in range(n) if full[j] == 0)
        verts[tight] = full
    d = n - m
    nodes = list(verts)
    arcs = set()
    for u, v in itertools.combinations(nodes, 2):
        if len(u & v) == d - 1:
            cu = sum(ci * xi for ci, xi in zip(c, verts[u]))
            cv = sum(ci * xi for ci, xi in zip(c, verts[v]))
            assert cu != cv
            arcs.add((u, v) if cu < cv else (v, u))
    return nodes, arcs
