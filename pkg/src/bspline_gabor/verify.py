"""Exact property suites run by ``bspline-gabor verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .bspline import stratified_points, verify_partly_pou
from .numeric import signed_frac
from .sets import (
    enum_P,
    enum_P_grochenig,
    local_gaps,
    point_set,
    segment_H,
    verify_containment,
)
from .zak import column_group_sum, lattice


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)


def pou_test_matrix(ns: Iterable[int]) -> list[tuple[int, Fraction]]:
    """(n, c) pairs c = m +- j/(2 n m') with small m, m', j and |{c}| <= 1/n."""
    out = set()
    for n in ns:
        for m in range(1, 5):
            for mp in range(1, 4):
                for j in range(0, mp + 1):
                    for sign in (1, -1):
                        c = m + sign * Fraction(j, 2 * n * mp)
                        if c > 0 and abs(signed_frac(c)) <= Fraction(1, n):
                            out.add((n, c))
    return sorted(out)


def suite_parameterizations(b_max, r_max) -> SuiteResult:
    res = SuiteResult("P = P' (two parameterizations)")
    a = point_set(enum_P(b_max, r_max))
    b = point_set(enum_P_grochenig(b_max, r_max))
    res.check(a == b, f"|P'| = {len(a)}, |P| = {len(b)}, symmetric difference {len(a ^ b)}")
    return res


def suite_density(b_max, r_max) -> SuiteResult:
    res = SuiteResult("density bounds 1/2 < ab < 1, (r-1)mu/r < b0 < mu")
    for pp in enum_P(b_max, r_max):
        ok = Fraction(1, 2) < pp.density < 1 and Fraction((pp.r - 1) * pp.mu, pp.r) < pp.b0 < pp.mu
        res.check(ok, f"{pp}")
    return res


def suite_gaps(b_max, r_max) -> SuiteResult:
    res = SuiteResult("local gaps and gaps above integers")
    for pp in enum_P(b_max, r_max):
        rep = local_gaps(pp)
        res.check(rep.ok, f"{pp}: lower {rep.lower_ok}, upper {rep.upper_status}, "
                          f"corollary {rep.corollary_ok}, band {rep.band_ok}")
    return res


def suite_containment(b_max, r_max, n: int, widen: bool = False) -> SuiteResult:
    label = "widened " if widen else ""
    res = SuiteResult(f"containment P in H in T ({label}n={n})")
    for rec in verify_containment(b_max, r_max, n, widen).records:
        res.check(rec.ok, f"{rec.params}: margins {rec.lower_margin}, {rec.upper_margin}")
    return res


def suite_partly_pou(ns: Iterable[int], samples: int = 100) -> SuiteResult:
    res = SuiteResult("partly partition of unity")
    for n, c in pou_test_matrix(ns):
        rep = verify_partly_pou(n, c, samples)
        res.check(rep.passed, f"n={n}, c={c}: {len(rep.distinct_values)} distinct values")
    return res


def cancellation_residuals(pp, n: int, b, probes: int = 50):
    """Yield (x, |K|, off-axis residual) for stratified probes in the constancy arc."""
    lat = lattice(pp.density / b, b)
    region = column_group_sum(n, lat, pp.mu, pp.r, 0).region
    for x in stratified_points(region, probes):
        g = column_group_sum(n, lat, pp.mu, pp.r, x)
        yield x, abs(g.K), g.off_axis


def suite_cancellation(b_max, r_max, ns: Iterable[int], q_max: int = 60, probes: int = 50) -> SuiteResult:
    res = SuiteResult(f"column-group cancellation (q <= {q_max})")
    for pp in enum_P(b_max, r_max):
        if pp.q > q_max:
            continue
        for n in ns:
            seg = segment_H(pp, n)
            for b in (seg.b_lo, pp.b0, seg.b_hi):
                worst = max(
                    (off / (1 + K) for _, K, off in cancellation_residuals(pp, n, b, probes)),
                    default=0.0,
                )
                res.check(worst <= 1e-10, f"{pp}, n={n}, b={b}: relative residual {worst:.2e}")
    return res


def default_suites(b_max, r_max, ns, widen: bool = False, q_max: int = 60) -> list[Callable[[], SuiteResult]]:
    ns = list(ns)
    suites = [
        lambda: suite_parameterizations(b_max, r_max),
        lambda: suite_density(b_max, r_max),
        lambda: suite_gaps(b_max, r_max),
    ]
    suites += [lambda n=n: suite_containment(b_max, r_max, n, widen) for n in ns]
    suites += [
        lambda: suite_partly_pou(ns),
        lambda: suite_cancellation(b_max, r_max, ns, q_max=q_max),
    ]
    return suites


def run_all(b_max, r_max, ns, widen: bool = False, q_max: int = 60) -> list[SuiteResult]:
    return [suite() for suite in default_suites(b_max, r_max, ns, widen, q_max)]
