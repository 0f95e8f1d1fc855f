"""Independent reference implementations used only by the tests.

Everything here is written the slow, obvious way with no shared code
with the package: brute-force tuple enumeration, float fixpoint closure,
and high-precision floors via mpmath.  Expected values frozen into the
test modules were produced by these oracles.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath


def brute_directions(A, k, distinct=False):
    """Every primitive direction of A^k as a frozenset of int tuples."""
    out = set()
    for tup in itertools.product(sorted(A), repeat=k):
        if distinct and len(set(tup)) != k:
            continue
        g = math.gcd(*tup)
        out.add(tuple(v // g for v in tup))
    return frozenset(out)


def brute_unit_directions(A, k, distinct=False):
    pts = []
    for tup in sorted(brute_directions(A, k, distinct)):
        n = math.sqrt(sum(v * v for v in tup))
        pts.append(tuple(v / n for v in tup))
    return pts


def float_normalize(x):
    n = math.sqrt(sum(v * v for v in x))
    return tuple(v / n for v in x)


def float_restrict(x, keep):
    y = tuple(v if i in keep else 0.0 for i, v in enumerate(x))
    return float_normalize(y)


def float_closure(points, tol=1e-9):
    """Fixpoint closure under permutations and coordinate restrictions.

    Works on float tuples and merges points that agree within tol, so it
    is only trustworthy on small generator sets where every distinct
    closure point is separated by far more than tol.  That is exactly the
    regime the tests use it in.
    """
    k = len(next(iter(points)))
    seen: list[tuple[float, ...]] = []

    def add(p):
        for q in seen:
            if max(abs(a - b) for a, b in zip(p, q)) < tol:
                return False
        seen.append(p)
        return True

    frontier = [float_normalize(p) for p in points]
    for p in frontier:
        add(p)
    while frontier:
        nxt = []
        for p in frontier:
            for perm in itertools.permutations(range(k)):
                q = tuple(p[j] for j in perm)
                if add(q):
                    nxt.append(q)
            support = [i for i, v in enumerate(p) if v > tol]
            for r in range(1, len(support) + 1):
                for keep in itertools.combinations(support, r):
                    q = float_restrict(p, set(keep))
                    if add(q):
                        nxt.append(q)
        frontier = nxt
    return seen


def mp_floor_scaled(coords_qr, i, m, dps=1200):
    """floor(m! * y_i) for a unit vector given as (rational, radicand) pairs.

    Uses mpmath at dps decimal digits; dps=1200 is far beyond any factorial
    the tests touch, so the floor is exact unless m! * y_i is within
    10**-1100 of an integer, which the construction's inputs never are.
    """
    with mpmath.workdps(dps):
        norm_sq = mpmath.mpf(0)
        vals = []
        for q, r in coords_qr:
            q = Fraction(q)
            v = mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(r)
            vals.append(v)
            norm_sq += v * v
        y = vals[i] / mpmath.sqrt(norm_sq)
        return int(mpmath.floor(mpmath.factorial(m) * y))


def mp_unit(coords_qr, dps=60):
    """Float coordinates of the unit vector for (rational, radicand) pairs."""
    with mpmath.workdps(dps):
        vals = []
        for q, r in coords_qr:
            q = Fraction(q)
            vals.append(mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(r))
        n = mpmath.sqrt(sum(v * v for v in vals))
        return tuple(float(v / n) for v in vals)
