"""Constructive non-frame certificates for points of the hyperbolic set H.

For a point (a, b) on the segment around (1/mu, mu - k/r), the columns of the
ZZ matrix Phi(x0, 0) fall into mu residue groups {l mu + s : l < r}. When the
scaled position r x0 - s p/mu lands in the constancy arc of every chosen
group, each group sums to K_s e_0. Then v_s = (1/K_s) * indicator(group s)
satisfies Phi v_s = e_0, and the differences v_s - v_0 are S - 1 independent
kernel vectors. With S = q - p + 2 groups this forces rank(Phi) <= p - 1.

Group s sits at r x0 + s k/mu (mod 1), so the consecutive groups
s = 0..q-p+1 form a contiguous run only for k = 1. When they do not fit in
the arc, the groups s = j * k^{-1} mod mu (j = 0..q-p+1) are used instead;
their positions are consecutive multiples of 1/mu. The certificate records
which order was used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bspline import constancy_arc
from .errors import DegenerateConstant, InfeasibleWitness, PreconditionViolated
from .numeric import CircleIntervalSet, as_rational, circle_intersect, circle_shift
from .sets import ObstructionParams, factorizations, is_admissible, segment_half_width
from .zak import (
    LatticeParams,
    ZZPoint,
    column_group_sum,
    lattice,
    smallest_singular_value,
    zz_matrix,
)

RECORD_FORMAT = "bspline-gabor-certificate/1"


@dataclass(frozen=True)
class Witness:
    x0: Fraction
    feasible: CircleIntervalSet  # admissible values of r * x0 (mod 1)
    region: CircleIntervalSet  # constancy arc of a single group
    offset: Fraction  # r b - p
    groups: tuple[int, ...]
    group_order: str  # "literal" or "reordered"


def literal_groups(params: ObstructionParams) -> tuple[int, ...]:
    return tuple(range(params.q - params.p + 2))


def reordered_groups(params: ObstructionParams) -> tuple[int, ...]:
    inv = pow(params.k, -1, params.mu)
    return tuple((j * inv) % params.mu for j in range(params.q - params.p + 2))


def feasible_set(n: int, params: ObstructionParams, b, groups) -> tuple[CircleIntervalSet, CircleIntervalSet, Fraction]:
    """Values of r x0 (mod 1) that put every listed group inside its constancy arc."""
    b = as_rational(b)
    d = params.r * b - params.p
    region = constancy_arc(n, d)
    shifts = [circle_shift(region, Fraction(s * params.p, params.mu)) for s in groups]
    return circle_intersect(shifts), region, d


def _largest_arc_midpoint(s: CircleIntervalSet) -> Fraction:
    start, length = max(s.arcs(), key=lambda arc: arc[1])  # first on ties
    mid = start + length / 2
    return mid - math.floor(mid)


def _check_on_segment(n: int, params: ObstructionParams, b: Fraction) -> None:
    half = segment_half_width(params, n)
    if abs(b - params.b0) > half:
        raise PreconditionViolated(
            f"b = {b} is off the segment |b - {params.b0}| <= {half}"
        )


def find_x0(n: int, params: ObstructionParams, b) -> Witness:
    """Exact witness x0 for the point (p/(q b), b) of the segment around ``params``."""
    b = as_rational(b)
    _check_on_segment(n, params, b)
    for order, groups in (("literal", literal_groups(params)), ("reordered", reordered_groups(params))):
        F, region, d = feasible_set(n, params, b, groups)
        if not F.is_empty:
            x0 = _largest_arc_midpoint(F) / params.r
            return Witness(x0, F, region, d, groups, order)
    raise InfeasibleWitness(f"no x0 for n={n}, {params}, b={b}")


@dataclass
class Certificate:
    n: int
    params: ObstructionParams
    a: Fraction
    b: Fraction
    x0: Fraction
    groups: tuple[int, ...]
    group_order: str
    group_constants: list[complex]
    off_axis: list[float]  # max |component 1..p-1| of each group sum
    delta_residuals: list[float]  # max |Phi v_s - e_0|
    kernel_residuals: list[float]  # max |Phi (v_s - v_0)|, s = groups[1:]
    sigma_min: float
    frobenius: float
    tolerance: float
    kernel_dim: int
    gamma0: Fraction = Fraction(0)
    kernel_vectors: list[np.ndarray] = field(default_factory=list, repr=False)
    reason: str = ""

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def S(self) -> int:
        return len(self.groups)

    @property
    def claimed_rank_bound(self) -> int:
        return self.p - 1

    @property
    def verified(self) -> bool:
        return not self.reason

    @property
    def status(self) -> str:
        return "verified" if self.verified else f"failed({self.reason})"

    def to_record(self) -> str:
        return certificate_to_record(self)


@dataclass(frozen=True)
class NotInH:
    n: int
    a: Fraction
    b: Fraction
    p: int
    q: int
    examined: tuple[str, ...]

    @property
    def status(self) -> str:
        return "not-in-H"


def group_indicator(params: ObstructionParams, s: int) -> np.ndarray:
    v = np.zeros(params.q, dtype=complex)
    v[s :: params.mu] = 1.0
    return v


def build_certificate(n: int, params: ObstructionParams, b) -> Certificate:
    b = as_rational(b)
    w = find_x0(n, params, b)
    lat = lattice(Fraction(params.p, params.q) / b, b)
    assert (lat.p, lat.q) == (params.p, params.q)
    phi = zz_matrix(n, lat, ZZPoint(w.x0, 0))
    tau = phi.zero_tolerance()
    e0 = np.zeros(params.p, dtype=complex)
    e0[0] = 1.0

    constants, off_axis, vs = [], [], []
    for s in w.groups:
        g = column_group_sum(n, lat, params.mu, params.r, params.r * w.x0 - Fraction(s * params.p, params.mu))
        K = g.K
        if abs(K) <= tau:
            raise DegenerateConstant(s, K)
        constants.append(K)
        off_axis.append(g.off_axis)
        vs.append(group_indicator(params, s) / K)

    delta_res = [float(np.max(np.abs(phi.data @ v - e0))) for v in vs]
    kernel = [v - vs[0] for v in vs[1:]]
    kernel_res = [float(np.max(np.abs(phi.data @ kv))) for kv in kernel]
    kernel_dim = int(np.linalg.matrix_rank(np.column_stack(kernel))) if kernel else 0
    sigma = smallest_singular_value(phi)

    reasons = []
    if max(delta_res) > tau:
        reasons.append("group-sum residual above tolerance")
    if kernel_res and max(kernel_res) > tau:
        reasons.append("kernel residual above tolerance")
    if sigma > tau:
        reasons.append("sigma_min above tolerance")
    if kernel_dim < params.q - params.p + 1:
        reasons.append("kernel dimension below q-p+1")

    return Certificate(
        n=n,
        params=params,
        a=lat.a,
        b=b,
        x0=w.x0,
        groups=w.groups,
        group_order=w.group_order,
        group_constants=constants,
        off_axis=off_axis,
        delta_residuals=delta_res,
        kernel_residuals=kernel_res,
        sigma_min=sigma,
        frobenius=phi.frobenius,
        tolerance=tau,
        kernel_dim=kernel_dim,
        kernel_vectors=kernel,
        reason="; ".join(reasons),
    )


def locate_in_H(n: int, a, b) -> tuple[ObstructionParams | None, list[str]]:
    """Search the factorizations q = r mu of ab = p/q for a segment containing b."""
    a, b = as_rational(a), as_rational(b)
    ab = a * b
    p, q = ab.numerator, ab.denominator
    examined = []
    if not (Fraction(1, 2) < ab < 1):
        examined.append(f"ab = {ab} is outside (1/2, 1)")
        return None, examined
    for r, mu in factorizations(q):
        k = q - p
        if not is_admissible(mu, r, k):
            examined.append(f"r={r} mu={mu}: k={k} not admissible")
            continue
        params = ObstructionParams(mu, r, k)
        half = segment_half_width(params, n)
        if abs(b - params.b0) <= half:
            examined.append(f"r={r} mu={mu} k={k}: |b - b0| = {abs(b - params.b0)} <= {half}")
            return params, examined
        examined.append(f"r={r} mu={mu} k={k}: |b - b0| = {abs(b - params.b0)} > {half}")
    if not examined:
        examined.append(f"q = {q} has no factorization r*mu with r >= 2, mu >= 3")
    return None, examined


def certify_nonframe(n: int, a, b) -> Certificate | NotInH:
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise PreconditionViolated("a and b must be positive")
    params, examined = locate_in_H(n, a, b)
    if params is None:
        ab = a * b
        return NotInH(n, a, b, ab.numerator, ab.denominator, tuple(examined))
    return build_certificate(n, params, b)


def _fmt_float(x: float) -> str:
    return repr(float(x))


def certificate_to_record(c: Certificate) -> str:
    """Self-contained ``key = value`` text; rationals exact, floats shortest round-trip."""
    lines = [
        ("format", RECORD_FORMAT),
        ("n", c.n),
        ("mu", c.params.mu),
        ("r", c.params.r),
        ("k", c.params.k),
        ("p", c.p),
        ("q", c.q),
        ("a", c.a),
        ("b", c.b),
        ("x0", c.x0),
        ("gamma0", c.gamma0),
        ("S", c.S),
        ("groups", ",".join(map(str, c.groups))),
        ("group_order", c.group_order),
    ]
    for s, K in zip(c.groups, c.group_constants):
        lines.append((f"K_{s}", f"{_fmt_float(K.real)} {_fmt_float(K.imag)}"))
    lines += [
        ("residual_group_max", _fmt_float(max(c.delta_residuals))),
        ("residual_kernel_max", _fmt_float(max(c.kernel_residuals, default=0.0))),
        ("sigma_min", _fmt_float(c.sigma_min)),
        ("frobenius", _fmt_float(c.frobenius)),
        ("tolerance", _fmt_float(c.tolerance)),
        ("kernel_dim", c.kernel_dim),
        ("rank_bound", c.claimed_rank_bound),
        ("status", c.status),
    ]
    return "".join(f"{key} = {value}\n" for key, value in lines)


def parse_record(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed record line: {line!r}")
        out[key.strip()] = value.strip()
    if out.get("format") != RECORD_FORMAT:
        raise ValueError("not a certificate record")
    return out


@dataclass(frozen=True)
class RecheckResult:
    max_kernel_residual: float
    sigma_min: float
    tolerance: float
    kernel_dim: int
    ok: bool


def recheck_record(text: str) -> RecheckResult:
    """Re-verify a serialized certificate using only the ZZ matrix code."""
    rec = parse_record(text)
    n = int(rec["n"])
    mu, r, q, p = int(rec["mu"]), int(rec["r"]), int(rec["q"]), int(rec["p"])
    a, b, x0 = Fraction(rec["a"]), Fraction(rec["b"]), Fraction(rec["x0"])
    lat = LatticeParams(a, b)
    if (lat.p, lat.q) != (p, q) or q != r * mu:
        raise ValueError("inconsistent lattice data in record")
    groups = [int(s) for s in rec["groups"].split(",")]
    phi = zz_matrix(n, lat, ZZPoint(x0, Fraction(rec["gamma0"])))
    tau = phi.zero_tolerance()
    vs = []
    for s in groups:
        re, im = (float(t) for t in rec[f"K_{s}"].split())
        v = np.zeros(q, dtype=complex)
        v[s::mu] = 1.0 / complex(re, im)
        vs.append(v)
    kernel = [v - vs[0] for v in vs[1:]]
    res = max((float(np.max(np.abs(phi.data @ kv))) for kv in kernel), default=0.0)
    dim = int(np.linalg.matrix_rank(np.column_stack(kernel))) if kernel else 0
    sigma = smallest_singular_value(phi)
    ok = res <= tau and sigma <= tau and dim >= q - p + 1
    return RecheckResult(res, sigma, tau, dim, ok)
