"""Obstruction geometry: the point set P, hyperbolic segments H, the tie tiles T_N.

Everything here is exact. Points of P are indexed by (mu, r, k) with

    mu >= 3, r >= 2, 1 <= k <= mu - 2, gcd(k, mu) = gcd(k, r) = 1,
    a0 = 1/mu, b0 = mu - k/r, p = r mu - k, q = r mu.

The same points also arise from (mu, nu, r, j) with p = r nu + j, q = r mu,
1 <= j <= r - 1, gcd(p, q) = 1 and q - mu + 1 < p < q; ``enum_P_grochenig``
enumerates that form independently so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import PreconditionViolated
from .numeric import as_rational, signed_frac

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class ObstructionParams:
    mu: int
    r: int
    k: int

    def __post_init__(self):
        mu, r, k = self.mu, self.r, self.k
        if mu < 3 or r < 2 or not (1 <= k <= mu - 2):
            raise PreconditionViolated(f"(mu, r, k) = {(mu, r, k)} out of range")
        if math.gcd(k, mu) != 1 or math.gcd(k, r) != 1:
            raise PreconditionViolated(f"(mu, r, k) = {(mu, r, k)} violates the gcd conditions")
        if math.gcd(self.p, self.q) != 1:
            raise AssertionError("gcd(p, q) != 1 despite valid (mu, r, k)")
        if not (HALF < self.density < 1):
            raise AssertionError("density outside (1/2, 1)")

    @property
    def a0(self) -> Fraction:
        return Fraction(1, self.mu)

    @property
    def b0(self) -> Fraction:
        return self.mu - Fraction(self.k, self.r)

    @property
    def p(self) -> int:
        return self.r * self.mu - self.k

    @property
    def q(self) -> int:
        return self.r * self.mu

    @property
    def density(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return self.a0, self.b0


def is_admissible(mu: int, r: int, k: int) -> bool:
    return (
        mu >= 3
        and r >= 2
        and 1 <= k <= mu - 2
        and math.gcd(k, mu) == 1
        and math.gcd(k, r) == 1
    )


def _mu_range(b_max: Fraction) -> range:
    # b0 > mu/2, so mu < 2 b_max
    return range(3, math.floor(2 * b_max) + 2)


def enum_P(b_max, r_max: int) -> list[ObstructionParams]:
    """All (mu, r, k) with b0 <= b_max and r <= r_max, sorted by (mu, r, k)."""
    b_max = as_rational(b_max)
    out = []
    for mu in _mu_range(b_max):
        for r in range(2, r_max + 1):
            for k in range(1, mu - 1):
                if is_admissible(mu, r, k) and mu - Fraction(k, r) <= b_max:
                    out.append(ObstructionParams(mu, r, k))
    return out


@dataclass(frozen=True, order=True)
class GrochenigParams:
    mu: int
    nu: int
    r: int
    j: int

    def __post_init__(self):
        if self.r < 2 or not (1 <= self.j <= self.r - 1) or self.mu < 1 or self.nu < 1:
            raise PreconditionViolated(f"{self} out of range")
        if math.gcd(self.p, self.q) != 1 or not (self.q - self.mu + 1 < self.p < self.q):
            raise PreconditionViolated(f"{self} violates the constraints on p, q")

    @property
    def p(self) -> int:
        return self.r * self.nu + self.j

    @property
    def q(self) -> int:
        return self.r * self.mu

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return Fraction(1, self.mu), Fraction(self.p, self.r)


def enum_P_grochenig(b_max, r_max: int) -> list[GrochenigParams]:
    """Same range as ``enum_P`` but searching over p directly for each q = r mu."""
    b_max = as_rational(b_max)
    out = []
    for mu in _mu_range(b_max):
        for r in range(2, r_max + 1):
            q = r * mu
            for p in range(max(1, q - mu + 2), q):
                nu, j = divmod(p, r)
                if j == 0 or nu < 1 or math.gcd(p, q) != 1:
                    continue
                if Fraction(p, r) <= b_max:
                    out.append(GrochenigParams(mu, nu, r, j))
    return out


def point_set(params) -> set[tuple[Fraction, Fraction]]:
    return {pp.point for pp in params}


@dataclass(frozen=True)
class HyperbolicSegment:
    """Arc of ab = p/q with |b - b0| <= half_width."""

    center: ObstructionParams
    n: int
    half_width: Fraction
    widened: bool = False

    @property
    def ab(self) -> Fraction:
        return self.center.density

    @property
    def b_lo(self) -> Fraction:
        return self.center.b0 - self.half_width

    @property
    def b_hi(self) -> Fraction:
        return self.center.b0 + self.half_width

    def a_at(self, b) -> Fraction:
        return self.ab / as_rational(b)

    def contains(self, a, b) -> bool:
        a, b = as_rational(a), as_rational(b)
        return a * b == self.ab and abs(b - self.center.b0) <= self.half_width


def segment_half_width(params: ObstructionParams, n: int, widen: bool = False) -> Fraction:
    """(mu - k - 1)/(n q); with ``widen`` the numerator is mu - k (tightness probe)."""
    if n < 1:
        raise PreconditionViolated("spline order must be positive")
    num = params.mu - params.k - (0 if widen else 1)
    return Fraction(num, n * params.q)


def segment_H(params: ObstructionParams, n: int, widen: bool = False) -> HyperbolicSegment:
    return HyperbolicSegment(params, n, segment_half_width(params, n, widen), widen)


def in_old_hyperbolas(n: int, a, b) -> bool:
    """ab = p/q < 1, |signed_frac(b)| <= 1/(n q), b > 3/2 (strict)."""
    a, b = as_rational(a), as_rational(b)
    ab = a * b
    if not ab < 1:
        return False
    return abs(signed_frac(b)) <= Fraction(1, n * ab.denominator) and b > Fraction(3, 2)


@dataclass(frozen=True)
class GhoshSelvanSegment:
    m: int
    k: int
    a0: Fraction
    b0: Fraction
    ab: Fraction
    half_width: Fraction
    n: int = 2

    @property
    def b_lo(self) -> Fraction:
        return self.b0 - self.half_width

    @property
    def b_hi(self) -> Fraction:
        return self.b0 + self.half_width


def ghosh_selvan_segment(m: int, k: int) -> GhoshSelvanSegment:
    """Hat-spline segment around (1/(2m+1), (2k+1)/2) with half-width (k-m)/(2(2m+1))."""
    if m < 1 or k <= m:
        raise PreconditionViolated("need positive m and k > m")
    a0 = Fraction(1, 2 * m + 1)
    b0 = Fraction(2 * k + 1, 2)
    if a0 * b0 >= 1:
        raise PreconditionViolated(f"a0 b0 = {a0 * b0} >= 1")
    return GhoshSelvanSegment(m, k, a0, b0, a0 * b0, Fraction(k - m, 2 * (2 * m + 1)))


def in_tile(a, b, N: int) -> bool:
    """(a, b) in T_N: b(1 + a) >= N + 1, b(1 - a) <= N, ab < 1."""
    a, b = as_rational(a), as_rational(b)
    return b * (1 + a) >= N + 1 and b * (1 - a) <= N and a * b < 1


def tile_of(a, b) -> int | None:
    """Smallest N >= 2 with (a, b) in T_N, or None."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0 or a * b >= 1:
        return None
    lo = max(2, math.ceil(b * (1 - a)))
    hi = math.floor(b * (1 + a)) - 1
    return lo if lo <= hi else None


@dataclass(frozen=True)
class GapReport:
    """Local gaps of b0 to the integers N = floor(b0) and N + 1, with proof quantities."""

    params: ObstructionParams
    N: int
    M: int
    lower_gap: Fraction
    upper_gap: Fraction
    X: int
    Y: int
    lower_bound: Fraction
    upper_bound: Fraction | None  # None: mu < N + 2, no claim
    lower_ok: bool
    upper_ok: bool | None
    corollary_ok: bool
    band_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.lower_ok
            and self.upper_ok is not False
            and self.corollary_ok
            and self.band_ok
            and self.X >= 1
            and self.Y >= 1
        )

    @property
    def upper_status(self) -> str:
        if self.upper_ok is None:
            return "not-applicable"
        return "pass" if self.upper_ok else "fail"


def local_gaps(params: ObstructionParams) -> GapReport:
    mu, r, k = params.mu, params.r, params.k
    b0 = params.b0
    N = math.floor(b0)
    M = mu - N
    lower = b0 - N
    upper = N + 1 - b0
    lower_bound = Fraction(mu - N, mu - 1)
    if mu >= N + 2:
        upper_bound = Fraction(mu - N - 1, mu - 3)
        upper_ok = upper >= upper_bound
    else:
        upper_bound, upper_ok = None, None
    return GapReport(
        params=params,
        N=N,
        M=M,
        lower_gap=lower,
        upper_gap=upper,
        X=r * M - k,
        Y=k - r * (M - 1),
        lower_bound=lower_bound,
        upper_bound=upper_bound,
        lower_ok=lower >= lower_bound,
        upper_ok=upper_ok,
        corollary_ok=not (N <= b0 < N + Fraction(1, N)),
        band_ok=N + 1 <= mu <= 2 * N + 1,
    )


@dataclass(frozen=True)
class ContainmentRecord:
    params: ObstructionParams
    segment: HyperbolicSegment
    N: int
    X: int
    Y: int
    lower_margin: Fraction  # b_lo - ((N+1) - ab), must be >= 0
    upper_margin: Fraction  # (N + ab) - b_hi, must be >= 0
    center_in_segment: bool
    endpoints_in_tile: bool

    @property
    def ok(self) -> bool:
        return self.center_in_segment and self.endpoints_in_tile


@dataclass
class ContainmentReport:
    n: int
    widen: bool
    records: list[ContainmentRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[ContainmentRecord]:
        return [rec for rec in self.records if not rec.ok]

    @property
    def passed(self) -> bool:
        return not self.violations


def containment_record(params: ObstructionParams, n: int, widen: bool = False) -> ContainmentRecord:
    seg = segment_H(params, n, widen)
    b0 = params.b0
    N = math.floor(b0)
    ab = seg.ab
    M = params.mu - N
    endpoints_ok = all(in_tile(seg.a_at(b), b, N) for b in (seg.b_lo, seg.b_hi))
    return ContainmentRecord(
        params=params,
        segment=seg,
        N=N,
        X=params.r * M - params.k,
        Y=params.k - params.r * (M - 1),
        lower_margin=seg.b_lo - (N + 1 - ab),
        upper_margin=(N + ab) - seg.b_hi,
        center_in_segment=seg.contains(params.a0, b0),
        endpoints_in_tile=endpoints_ok,
    )


def verify_containment(b_max, r_max: int, n: int, widen: bool = False) -> ContainmentReport:
    """P in H in T, exactly, for every enumerated point."""
    report = ContainmentReport(n=n, widen=widen)
    for params in enum_P(b_max, r_max):
        report.records.append(containment_record(params, n, widen))
    return report


def factorizations(q: int) -> Iterator[tuple[int, int]]:
    """(r, mu) with r mu = q, r >= 2, mu >= 3."""
    for r in range(2, q // 3 + 1):
        if q % r == 0 and q // r >= 3:
            yield r, q // r


def params_on_hyperbola(p: int, q: int) -> list[ObstructionParams]:
    """All points of P with a0 b0 = p/q (p/q in lowest terms)."""
    out = []
    for r, mu in factorizations(q):
        k = q - p
        if is_admissible(mu, r, k):
            out.append(ObstructionParams(mu, r, k))
    return out
