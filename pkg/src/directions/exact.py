"""Exact arithmetic for quadratic-surd quantities.

Target coordinates are numbers of the form q*sqrt(r) with q a nonnegative
rational and r a positive squarefree integer.  Everything geometric about a
target point (equality of directions, canonical ordering, separations) reduces
to signs of finite sums of such terms, so this module provides:

``Surd``
    a single term q*sqrt(r), with exact multiplication, division and
    comparison.  Products stay squarefree without factoring because
    sqrt(a)*sqrt(b) = gcd(a,b)*sqrt((a/g)*(b/g)) and coprime squarefree
    numbers have a squarefree product.

``SurdSum``
    a finite sum of terms with distinct radicands.  Signs of one- and
    two-term sums are decided by comparing squares; longer sums are decided
    by adaptive-precision integer intervals.  Distinct squarefree radicals
    are linearly independent over the rationals, so a sum that is not
    syntactically zero is numerically nonzero and the interval loop
    terminates.  A precision cap guards the one escape hatch (a radicand
    whose square part survived ``squarefree_split``); hitting the cap raises
    instead of guessing.

``sqrt_floor``
    floor(sqrt(p/q)) for nonnegative integers, computed exactly with
    ``math.isqrt``.  This is the workhorse behind certified factorial floors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError, PrecisionError

# Trial-division bound for extracting square factors from radicands.
_SPLIT_BOUND = 10_000

# Interval comparisons double precision until sign is certified or this cap.
PRECISION_CAP_BITS = 16_384


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s*s*f and return (s, f) with f squarefree (best effort).

    Square factors with a prime part above ``_SPLIT_BOUND`` survive only if
    the whole remainder is a perfect square; anything else stays in f.  The
    callers never rely on f being squarefree for correctness, only for
    efficiency of like-term combination.
    """
    if n <= 0:
        raise DomainError(f"radicand must be positive, got {n}")
    s, f = 1, n
    p = 2
    while p <= _SPLIT_BOUND and p * p <= f:
        while f % (p * p) == 0:
            f //= p * p
            s *= p
        p += 1 if p == 2 else 2
    root = isqrt(f)
    if root * root == f:
        s *= root
        f = 1
    return s, f


def sqrt_floor(p: int, q: int = 1) -> int:
    """floor(sqrt(p/q)) for integers p >= 0, q >= 1, exactly.

    sqrt(p/q) = sqrt(p*q)/q, and floor(isqrt(x)/q) == isqrt(x)//q because
    isqrt(x) is the integer part of sqrt(x).
    """
    if p < 0 or q <= 0:
        raise DomainError("sqrt_floor needs p >= 0 and q >= 1")
    return isqrt(p * q) // q


def _sqrt_bounds(r: int, bits: int) -> tuple[int, int]:
    # lo <= 2^bits * sqrt(r) <= hi with hi - lo <= 1
    lo = isqrt(r << (2 * bits))
    return lo, lo + 1


@dataclass(frozen=True)
class Surd:
    """The number q * sqrt(r); q rational, r positive and squarefree.

    The zero value is canonically Surd(0, 1).  q may be negative (needed for
    differences); construction through ``of`` normalizes the radicand.
    """

    q: Fraction
    r: int

    @staticmethod
    def of(q: Fraction | int | str, r: int = 1) -> "Surd":
        q = Fraction(q)
        if r <= 0:
            raise DomainError(f"radicand must be positive, got {r}")
        if q == 0:
            return Surd(Fraction(0), 1)
        s, f = squarefree_split(r)
        return Surd(q * s, f)

    def is_zero(self) -> bool:
        return self.q == 0

    def __mul__(self, other: "Surd") -> "Surd":
        if self.q == 0 or other.q == 0:
            return Surd(Fraction(0), 1)
        g = gcd(self.r, other.r)
        return Surd(self.q * other.q * g, (self.r // g) * (other.r // g))

    def __truediv__(self, other: "Surd") -> "Surd":
        if other.q == 0:
            raise DomainError("division by zero surd")
        # 1/sqrt(r) = sqrt(r)/r
        inv = Surd(Fraction(1, 1) / (other.q * other.r), other.r)
        return self * inv

    def scaled(self, c: Fraction | int) -> "Surd":
        c = Fraction(c)
        if c == 0:
            return Surd(Fraction(0), 1)
        return Surd(self.q * c, self.r)

    def square(self) -> Fraction:
        return self.q * self.q * self.r

    def sign(self) -> int:
        return -1 if self.q < 0 else (0 if self.q == 0 else 1)

    def compare(self, other: "Surd") -> int:
        """Exact sign of self - other."""
        sa, sb = self.sign(), other.sign()
        if sa != sb:
            return 1 if sa > sb else -1
        if sa == 0:
            return 0
        d = self.square() - other.square()
        if d == 0:
            return 0
        # same sign: larger square means larger magnitude
        return sa if d > 0 else -sa

    def __lt__(self, other: "Surd") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "Surd") -> bool:
        return self.compare(other) <= 0

    def to_float(self) -> float:
        if self.q == 0:
            return 0.0
        bits = 64
        lo, _ = _sqrt_bounds(self.r, bits)
        return float(self.q * Fraction(lo, 1 << bits))

    def __repr__(self) -> str:
        if self.r == 1:
            return str(self.q)
        if self.q == 1:
            return f"sqrt({self.r})"
        return f"{self.q}*sqrt({self.r})"


class SurdSum:
    """A finite sum of rational multiples of square roots."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms: dict[int, Fraction] = {}
        if terms:
            for r, c in terms.items():
                if c != 0:
                    self.terms[r] = Fraction(c)

    @staticmethod
    def from_surd(s: Surd) -> "SurdSum":
        return SurdSum({s.r: s.q} if s.q != 0 else {})

    @staticmethod
    def rational(c: Fraction | int) -> "SurdSum":
        return SurdSum({1: Fraction(c)})

    def _merged(self, other: "SurdSum", sign: int) -> "SurdSum":
        out = dict(self.terms)
        for r, c in other.terms.items():
            nc = out.get(r, Fraction(0)) + sign * c
            if nc == 0:
                out.pop(r, None)
            else:
                out[r] = nc
        return SurdSum(out)

    def __add__(self, other: "SurdSum") -> "SurdSum":
        return self._merged(other, 1)

    def __sub__(self, other: "SurdSum") -> "SurdSum":
        return self._merged(other, -1)

    def __mul__(self, other: "SurdSum") -> "SurdSum":
        out: dict[int, Fraction] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                t = Surd(c1, r1) * Surd(c2, r2)
                # split again in case an unsplit radicand slipped through
                s, f = squarefree_split(t.r) if t.r > 1 else (1, t.r)
                coeff = t.q * s
                nc = out.get(f, Fraction(0)) + coeff
                if nc == 0:
                    out.pop(f, None)
                else:
                    out[f] = nc
        return SurdSum(out)

    def scaled(self, c: Fraction | int) -> "SurdSum":
        c = Fraction(c)
        return SurdSum({r: q * c for r, q in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def sign(self) -> int:
        items = list(self.terms.items())
        if not items:
            return 0
        if len(items) == 1:
            return 1 if items[0][1] > 0 else -1
        if len(items) == 2:
            (r1, c1), (r2, c2) = items
            s1 = Surd(c1, r1)
            s2 = Surd(-c2, r2)
            return s1.compare(s2)
        bits = 64
        while bits <= PRECISION_CAP_BITS:
            lo = Fraction(0)
            hi = Fraction(0)
            for r, c in items:
                a, b = _sqrt_bounds(r, bits)
                if c > 0:
                    lo += c * Fraction(a, 1 << bits)
                    hi += c * Fraction(b, 1 << bits)
                else:
                    lo += c * Fraction(b, 1 << bits)
                    hi += c * Fraction(a, 1 << bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise PrecisionError(
            f"sign of {len(items)}-term surd sum not certified within "
            f"{PRECISION_CAP_BITS} bits"
        )

    def compare(self, other: "SurdSum") -> int:
        return (self - other).sign()

    def to_float(self, bits: int = 128) -> float:
        mid = Fraction(0)
        for r, c in self.terms.items():
            a, _ = _sqrt_bounds(r, bits)
            mid += c * Fraction(a, 1 << bits)
        return float(mid)

    def sqrt_to_float(self) -> float:
        """float(sqrt(self)); self must be nonnegative."""
        s = self.sign()
        if s < 0:
            raise DomainError("sqrt of negative surd sum")
        if s == 0:
            return 0.0
        from math import sqrt

        return sqrt(self.to_float())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for r in sorted(self.terms):
            c = self.terms[r]
            mag = abs(c)
            if r == 1:
                body = str(mag)
            elif mag == 1:
                body = f"sqrt({r})"
            else:
                body = f"{mag}*sqrt({r})"
            if not out:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out
