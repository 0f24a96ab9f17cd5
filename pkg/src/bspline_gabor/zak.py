"""Zak transform of N_n, Zibulski-Zeevi matrices, and singular-value scans.

Arguments of the spline are always exact rationals; the spline values are
exact too and only meet the unit phases exp(2 pi i k gamma) and sqrt(lambda)
in double precision. Phases are reduced modulo 1 in exact integer
arithmetic before the final cos/sin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bspline import bspline_ratio, constancy_arc
from .errors import PreconditionViolated
from .numeric import CircleIntervalSet, as_rational, mod1

ZERO_TOL_REL = 1e-9


@dataclass(frozen=True)
class LatticeParams:
    """Lattice aZ x bZ with ab = p/q in lowest terms."""

    a: Fraction
    b: Fraction
    p: int = field(init=False)
    q: int = field(init=False)

    def __post_init__(self):
        a, b = as_rational(self.a), as_rational(self.b)
        if a <= 0 or b <= 0:
            raise PreconditionViolated("lattice parameters must be positive")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        ab = a * b
        object.__setattr__(self, "p", ab.numerator)
        object.__setattr__(self, "q", ab.denominator)

    @property
    def density(self) -> Fraction:
        return Fraction(self.p, self.q)


def lattice(a, b) -> LatticeParams:
    return LatticeParams(as_rational(a), as_rational(b))


@dataclass(frozen=True)
class ZZPoint:
    x: Fraction
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", mod1(self.x))
        object.__setattr__(self, "gamma", mod1(self.gamma))


@dataclass(frozen=True, eq=False)
class ZZMatrix:
    """p x q Zibulski-Zeevi matrix of N_n, with the inputs that produced it."""

    data: np.ndarray
    n: int
    lattice: LatticeParams
    point: ZZPoint

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.data))

    def zero_tolerance(self) -> float:
        return ZERO_TOL_REL * max(1.0, self.frobenius)


@lru_cache(maxsize=1 << 16)
def zak_terms(n: int, lam: Fraction, x: Fraction) -> tuple[tuple[int, ...], np.ndarray]:
    """Indices k and exact spline values N_n(lam (x - k)) converted to float.

    Only the k with 0 <= lam (x - k) < n contribute, i.e. x - n/lam < k <= x.
    """
    k_hi = math.floor(x)
    k_lo = math.floor(x - n / lam) + 1
    # lam (x - k) = u (xn - k xd) / (v xd), evaluated in integers
    u, v = lam.numerator, lam.denominator
    xn, xd = x.numerator, x.denominator
    D = v * xd
    ks, vals = [], []
    for k in range(k_lo, k_hi + 1):
        num, den = bspline_ratio(n, u * (xn - k * xd), D)
        if num:
            ks.append(k)
            vals.append(num / den)
    return tuple(ks), np.array(vals, dtype=float)


def _phases(ks: tuple[int, ...], gammas: list[Fraction]) -> np.ndarray:
    """exp(2 pi i k gamma) for every gamma (rows) and k (columns), reduced exactly."""
    if not ks:
        return np.zeros((len(gammas), 0), dtype=complex)
    L = 1
    for g in gammas:
        L = math.lcm(L, g.denominator)
    steps = [(g.numerator * (L // g.denominator)) % L for g in gammas]
    kmax = max(abs(k) for k in ks)
    if L * (kmax + 1) < 2**62:
        turns = (np.array(steps, dtype=np.int64)[:, None] * np.array(ks, dtype=np.int64)[None, :]) % L
    else:
        turns = np.array([[(k * st) % L for k in ks] for st in steps], dtype=object)
        return np.exp(1j * (2.0 * np.pi / L) * turns.astype(float))
    if L <= _ROOT_TABLE_MAX:
        return _roots_of_unity(L)[turns]
    return np.exp(1j * (2.0 * np.pi / L) * turns.astype(float))


_ROOT_TABLE_MAX = 1 << 16


@lru_cache(maxsize=256)
def _roots_of_unity(L: int) -> np.ndarray:
    return np.exp(1j * (2.0 * np.pi / L) * np.arange(L, dtype=float))


def zak_eval(n: int, lam, x, gamma) -> complex:
    """sqrt(lam) * sum_k N_n(lam (x - k)) exp(2 pi i k gamma)."""
    lam, x, gamma = as_rational(lam), as_rational(x), as_rational(gamma)
    if lam <= 0:
        raise PreconditionViolated("Zak dilation must be positive")
    ks, vals = zak_terms(n, lam, x)
    if not ks:
        return 0j
    ph = _phases(ks, [gamma])[0]
    return complex(math.sqrt(lam) * np.dot(ph, vals))


def _zak_column(n: int, lam: Fraction, x: Fraction, gammas: list[Fraction]) -> np.ndarray:
    ks, vals = zak_terms(n, lam, x)
    if not ks:
        return np.zeros(len(gammas), dtype=complex)
    return math.sqrt(lam) * (_phases(ks, gammas) @ vals)


def zz_column(n: int, lat: LatticeParams, x, gamma, ell: int) -> np.ndarray:
    """Column phi_ell(x, gamma) in C^p; x and gamma are used as given (not reduced)."""
    x, gamma = as_rational(x), as_rational(gamma)
    p, q = lat.p, lat.q
    gammas = [gamma + Fraction(k, p) for k in range(p)]
    return _zak_column(n, 1 / lat.b, x - Fraction(ell * p, q), gammas) / math.sqrt(p)


def zz_matrix(n: int, lat: LatticeParams, pt: ZZPoint) -> ZZMatrix:
    """Entry (k, l) = p^{-1/2} (Z_{1/b} N_n)(x - l p/q, gamma + k/p)."""
    p, q = lat.p, lat.q
    gammas = [pt.gamma + Fraction(k, p) for k in range(p)]
    lam = 1 / lat.b
    data = np.empty((p, q), dtype=complex)
    for ell in range(q):
        data[:, ell] = _zak_column(n, lam, pt.x - Fraction(ell * p, q), gammas)
    data /= math.sqrt(p)
    return ZZMatrix(data, n, lat, pt)


def smallest_singular_value(m) -> float:
    """Smallest singular value of the p x q matrix; 0 when p > q (columns cannot span)."""
    data = m.data if isinstance(m, ZZMatrix) else np.asarray(m)
    p, q = data.shape
    if p == 0:
        return 0.0
    if p > q:
        return 0.0
    return float(np.linalg.svd(data, compute_uv=False)[-1])


@dataclass(frozen=True, eq=False)
class GroupSum:
    """sum_{l < r} phi_{l mu}(x/r, 0), with the constancy region of the scaled variable."""

    vector: np.ndarray
    x: Fraction
    offset: Fraction
    region: CircleIntervalSet
    in_region: bool

    @property
    def K(self) -> complex:
        return complex(self.vector[0])

    @property
    def off_axis(self) -> float:
        """Largest modulus among components 1..p-1."""
        return float(np.max(np.abs(self.vector[1:]))) if len(self.vector) > 1 else 0.0


def group_offset(lat: LatticeParams, r: int) -> Fraction:
    """r b - p: how far r b sits from the integer p."""
    return r * lat.b - lat.p


def column_group_sum(n: int, lat: LatticeParams, mu: int, r: int, x) -> GroupSum:
    """Sum of the columns l*mu, l = 0..r-1, of the ZZ matrix at (x/r, 0).

    Inside the region [n d, 1] (d = rb - p >= 0) or [0, 1 + n d] (d <= 0),
    taken mod 1, the sum collapses to K e_0.
    """
    x = as_rational(x)
    if lat.q != r * mu:
        raise PreconditionViolated(f"q = {lat.q} is not r*mu = {r * mu}")
    d = group_offset(lat, r)
    if abs(d) > Fraction(1, n):
        raise PreconditionViolated(f"|rb - p| = {abs(d)} exceeds 1/{n}")
    region = constancy_arc(n, d)
    p = lat.p
    gammas = [Fraction(k, p) for k in range(p)]
    lam = 1 / lat.b
    vec = np.zeros(p, dtype=complex)
    for ell in range(r):
        vec += _zak_column(n, lam, x / r - Fraction(ell * mu * p, lat.q), gammas)
    vec /= math.sqrt(p)
    return GroupSum(vec, x, d, region, region.contains(x))


@dataclass(frozen=True, eq=False)
class ScanResult:
    """sigma_min over the grid (i/M, j/M); ``values[i, j]`` is at x = i/M, gamma = j/M."""

    M: int
    values: np.ndarray
    argmin: tuple[int, int]
    min_value: float

    @property
    def argmin_point(self) -> tuple[Fraction, Fraction]:
        i, j = self.argmin
        return Fraction(i, self.M), Fraction(j, self.M)


def scan(n: int, lat: LatticeParams, M: int) -> ScanResult:
    """Smallest singular value of the ZZ matrix on the closed grid {i/M} x {j/M}."""
    if M < 2:
        raise PreconditionViolated("grid resolution M must be >= 2")
    values = np.empty((M, M), dtype=float)
    for i in range(M):
        for j in range(M):
            pt = ZZPoint(Fraction(i, M), Fraction(j, M))
            values[i, j] = smallest_singular_value(zz_matrix(n, lat, pt))
    # np.argmin returns the first (row-major) minimum: lexicographically smallest (i, j)
    flat = int(np.argmin(values))
    i, j = divmod(flat, M)
    return ScanResult(M, values, (i, j), float(values[i, j]))
