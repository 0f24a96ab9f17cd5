"""Cardinal B-splines N_n as exact piecewise polynomials.

N_1 is the indicator of [0, 1) and N_{n+1}(x) = int_{x-1}^{x} N_n(t) dt.
Each piece j (on [j, j+1)) is stored as ascending coefficients in the local
variable t = x - j, which makes the running-integral recursion a pure
coefficient operation with no shifting of polynomials.

The right-open convention for N_1 keeps sum_k N_1(x + k) = 1 exact at every
rational x, including integers. N_n is continuous for n >= 2, so the choice
only matters for n = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionViolated
from .numeric import (
    FULL_CIRCLE,
    ONE,
    ZERO,
    CircleIntervalSet,
    as_rational,
    signed_frac,
)

Poly = tuple[Fraction, ...]


def _poly_eval(coeffs: Poly, t: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_integral(coeffs: Poly) -> Poly:
    """Antiderivative vanishing at t = 0."""
    return (ZERO,) + tuple(c / (i + 1) for i, c in enumerate(coeffs))


def _poly_sub(p: Poly, q: Poly) -> Poly:
    size = max(len(p), len(q))
    p = p + (ZERO,) * (size - len(p))
    q = q + (ZERO,) * (size - len(q))
    return tuple(a - b for a, b in zip(p, q))


@dataclass(frozen=True)
class PiecewisePolynomial:
    """N_n on the integer knots 0..n; ``pieces[j]`` lives on [j, j+1)."""

    order: int
    pieces: tuple[Poly, ...]

    @property
    def breakpoints(self) -> tuple[int, ...]:
        return tuple(range(self.order + 1))

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def piece_integrals(self) -> tuple[Fraction, ...]:
        return tuple(_poly_eval(_poly_integral(p), ONE) for p in self.pieces)

    def antiderivative(self, x) -> Fraction:
        """F(x) = int_0^x N_n, computed from the coefficients."""
        x = as_rational(x)
        if x <= 0:
            return ZERO
        if x >= self.order:
            return ONE
        j = math.floor(x)
        done = sum(self.piece_integrals()[:j], ZERO)
        return done + _poly_eval(_poly_integral(self.pieces[j]), x - j)


@lru_cache(maxsize=None)
def build_bspline(n: int) -> PiecewisePolynomial:
    """Exact coefficients of N_n via the running-integral recursion."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionViolated(f"B-spline order must be a positive integer, got {n!r}")
    if n == 1:
        return PiecewisePolynomial(1, ((ONE,),))
    prev = build_bspline(n - 1)
    m = prev.order
    integrals = [_poly_integral(p) for p in prev.pieces]
    # cumulative[j] = int_0^j N_m
    cumulative = [ZERO]
    for I in integrals:
        cumulative.append(cumulative[-1] + _poly_eval(I, ONE))

    def F_local(i: int) -> Poly:
        # antiderivative of N_m on [i, i+1) in the local variable
        if i < 0:
            return (ZERO,)
        if i >= m:
            return (ONE,)
        I = integrals[i]
        return (I[0] + cumulative[i],) + I[1:]

    pieces = []
    for j in range(m + 1):
        pieces.append(_trim(_poly_sub(F_local(j), F_local(j - 1)), n))
    return PiecewisePolynomial(n, tuple(pieces))


def _trim(p: Poly, n: int) -> Poly:
    p = p + (ZERO,) * max(0, n - len(p))
    if any(c != 0 for c in p[n:]):
        raise AssertionError("degree exceeded n - 1")
    return p[:n]


def evaluate(spline: PiecewisePolynomial, x) -> Fraction:
    """Exact value of the spline at rational x; zero outside [0, n)."""
    x = as_rational(x)
    if x < 0 or x >= spline.order:
        return ZERO
    j = math.floor(x)
    return _poly_eval(spline.pieces[j], x - j)


@lru_cache(maxsize=1 << 20)
def bspline_value(n: int, x: Fraction) -> Fraction:
    return evaluate(build_bspline(n), x)


@lru_cache(maxsize=None)
def integer_pieces(n: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(n-1)! and the pieces of N_n scaled by (n-1)!, which are integer polynomials."""
    scale = math.factorial(n - 1)
    pieces = []
    for piece in build_bspline(n).pieces:
        scaled = [c * scale for c in piece]
        if any(c.denominator != 1 for c in scaled):
            raise AssertionError("(n-1)! N_n has non-integer coefficients")
        pieces.append(tuple(int(c) for c in scaled))
    return scale, tuple(pieces)


def bspline_ratio(n: int, m: int, D: int) -> tuple[int, int]:
    """N_n(m/D) as an unreduced integer ratio (num, den), D > 0.

    Pure integer Horner evaluation; ``num / den`` is the correctly rounded
    double of the exact value.
    """
    j = m // D
    if j < 0 or j >= n:
        return 0, 1
    scale, pieces = integer_pieces(n)
    coeffs = pieces[j]
    u = m - j * D
    acc = coeffs[-1]
    Dpow = 1
    for c in reversed(coeffs[:-1]):
        Dpow *= D
        acc = acc * u + c * Dpow
    return acc, scale * D ** (n - 1)


def periodization(n: int, c, x) -> Fraction:
    """sum_k N_n((x + k)/c), summed over the finitely many k in the support."""
    c, x = as_rational(c), as_rational(x)
    if c <= 0:
        raise PreconditionViolated("dilation c must be positive")
    # 0 <= (x + k)/c < n  <=>  -x <= k < n c - x
    k_lo = math.ceil(-x)
    k_hi = math.ceil(n * c - x)
    return sum((bspline_value(n, (x + k) / c) for k in range(k_lo, k_hi)), ZERO)


def pou_region(n: int, c) -> CircleIntervalSet:
    """Arc (mod 1) on which the dilated periodization of N_n is constant.

    With f = signed_frac(c): [n f, 1] when f >= 0, [0, 1 + n f] when f <= 0.
    """
    c = as_rational(c)
    if c <= 0:
        raise PreconditionViolated("dilation c must be positive")
    f = signed_frac(c)
    if abs(f) > Fraction(1, n):
        raise PreconditionViolated(f"|signed_frac({c})| = {abs(f)} exceeds 1/{n}")
    return constancy_arc(n, f)


def constancy_arc(n: int, offset: Fraction) -> CircleIntervalSet:
    """Arc for an arbitrary offset with |n * offset| <= 1 (used with offset = rb - p)."""
    if offset == 0:
        return FULL_CIRCLE
    if offset > 0:
        return CircleIntervalSet.from_intervals([(n * offset, ONE)])
    return CircleIntervalSet.from_intervals([(ZERO, 1 + n * offset)])


def stratified_points(region: CircleIntervalSet, count: int) -> list[Fraction]:
    """Deterministic probes spread over a region in proportion to arc length.

    Probes are stratum midpoints, so they avoid arc endpoints; a degenerate
    (single point) arc contributes the point itself.
    """
    arcs = region.arcs()
    if not arcs or count <= 0:
        return []
    total = sum((length for _, length in arcs), ZERO)
    points: list[Fraction] = []
    if total == 0:
        return [start for start, _ in arcs]
    remaining = count
    for idx, (start, length) in enumerate(arcs):
        share = remaining if idx == len(arcs) - 1 else max(1, round(count * length / total))
        share = min(share, remaining)
        for i in range(share):
            t = start + length * Fraction(2 * i + 1, 2 * share)
            points.append(t - math.floor(t))
        remaining -= share
        if remaining <= 0:
            break
    return points


@dataclass(frozen=True)
class PouReport:
    n: int
    c: Fraction
    region: CircleIntervalSet
    samples: int
    constant: Fraction | None
    passed: bool
    distinct_values: tuple[Fraction, ...]


def verify_partly_pou(n: int, c, sample_count: int = 100) -> PouReport:
    """Check exact constancy of the dilated periodization on ``pou_region``."""
    c = as_rational(c)
    region = pou_region(n, c)
    xs = stratified_points(region, sample_count)
    values = {periodization(n, c, x) for x in xs}
    passed = len(values) == 1
    return PouReport(
        n=n,
        c=c,
        region=region,
        samples=len(xs),
        constant=next(iter(values)) if passed else None,
        passed=passed,
        distinct_values=tuple(sorted(values)),
    )
