"""Exact rational helpers and closed-interval sets on the circle R/Z.

Rationals are :class:`fractions.Fraction` throughout; they are always
reduced with a positive denominator, and Python ints are unbounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and exact strings ("3/7", "0.25") to Fraction.

    Floats are refused: a float is almost never the rational the caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer, or a finite decimal string exactly.

    Raises ValueError for malformed input, including a zero denominator.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    try:
        value = Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    return value


def round_nearest(x) -> int:
    """floor(x + 1/2); ties round up, so R(5/2) = 3 and R(-1/2) = 0."""
    return math.floor(as_rational(x) + HALF)


def signed_frac(x) -> Fraction:
    """x - round_nearest(x), which lies in [-1/2, 1/2) since ties round up."""
    x = as_rational(x)
    return x - round_nearest(x)


def mod1(x) -> Fraction:
    x = as_rational(x)
    return x - math.floor(x)


def _merge(intervals: Iterable[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    out: list[list[Fraction]] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def _canonical(linear: list[tuple[Fraction, Fraction]]) -> tuple[tuple[Fraction, Fraction], ...]:
    # 0 and 1 are the same point: drop isolated copies that another piece covers,
    # and write a lone point at 0/1 as [0, 0].
    ivs = list(linear)
    if not ivs:
        return ()
    if ivs == [(ZERO, ONE)]:
        return tuple(ivs)
    starts_at_0 = ivs[0][0] == 0
    ends_at_1 = ivs[-1][1] == 1
    if starts_at_0 and ends_at_1:
        first, last = ivs[0], ivs[-1]
        if last == (ONE, ONE):
            ivs.pop()
        elif first == (ZERO, ZERO):
            ivs.pop(0)
    elif ivs[-1] == (ONE, ONE):
        ivs[-1] = (ZERO, ZERO)
        ivs = _merge(ivs)
    return tuple(ivs)


@dataclass(frozen=True)
class CircleIntervalSet:
    """A finite union of closed arcs of the circle [0, 1) with 0 identified with 1.

    Stored as sorted, disjoint, non-touching closed intervals in [0, 1]. An arc
    passing through 0 is split into ``[0, h]`` and ``[l, 1]``. The form is
    canonical, so ``==`` is point-set equality.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_intervals(cls, intervals: Iterable[tuple]) -> "CircleIntervalSet":
        """Build from closed intervals in [0, 1] (e.g. ``[(0, 1/4), (3/4, 1)]``)."""
        ivs = []
        for lo, hi in intervals:
            lo, hi = as_rational(lo), as_rational(hi)
            if not (0 <= lo <= hi <= 1):
                raise ValueError(f"interval [{lo}, {hi}] is not inside [0, 1]")
            ivs.append((lo, hi))
        return cls(_canonical(_merge(ivs)))

    @classmethod
    def arc(cls, start, length) -> "CircleIntervalSet":
        """The closed arc [start, start + length] taken mod 1."""
        start, length = mod1(start), as_rational(length)
        if length < 0:
            raise ValueError("negative arc length")
        if length >= 1:
            return FULL_CIRCLE
        end = start + length
        if end <= 1:
            return cls.from_intervals([(start, end)])
        return cls.from_intervals([(start, ONE), (ZERO, end - 1)])

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def lifted(self) -> list[tuple[Fraction, Fraction]]:
        """Preimage of the set in [0, 1]: membership of 0 implies membership of 1."""
        ivs = list(self.intervals)
        if not ivs:
            return ivs
        has0 = ivs[0][0] == 0
        has1 = ivs[-1][1] == 1
        if has0 and not has1:
            ivs.append((ONE, ONE))
        elif has1 and not has0:
            ivs.insert(0, (ZERO, ZERO))
        return ivs

    def contains(self, x) -> bool:
        t = mod1(x)
        return any(lo <= t <= hi for lo, hi in self.lifted())

    __contains__ = contains

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def arcs(self) -> list[tuple[Fraction, Fraction]]:
        """Connected components as (start, length), joining pieces that wrap through 0."""
        ivs = list(self.intervals)
        if not ivs:
            return []
        if self.is_full:
            return [(ZERO, ONE)]
        comps = [(lo, hi - lo) for lo, hi in ivs]
        if len(ivs) > 1 and ivs[0][0] == 0 and ivs[-1][1] == 1:
            lo_last, len_last = comps.pop()
            comps[0] = (lo_last, len_last + comps[0][1])
        return comps

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(f"[{lo}, {hi}]" for lo, hi in self.intervals)


EMPTY = CircleIntervalSet(())
FULL_CIRCLE = CircleIntervalSet(((ZERO, ONE),))


def circle_intersect(sets: Sequence[CircleIntervalSet]) -> CircleIntervalSet:
    """Points lying in every set; the empty sequence gives the full circle."""
    sets = list(sets)
    if not sets:
        return FULL_CIRCLE
    acc = sets[0].lifted()
    for other in sets[1:]:
        b = other.lifted()
        out = []
        i = j = 0
        while i < len(acc) and j < len(b):
            lo = max(acc[i][0], b[j][0])
            hi = min(acc[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if acc[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        acc = out
    return CircleIntervalSet(_canonical(_merge(acc)))


def circle_union(sets: Sequence[CircleIntervalSet]) -> CircleIntervalSet:
    ivs = [iv for s in sets for iv in s.lifted()]
    return CircleIntervalSet(_canonical(_merge(ivs)))


def circle_shift(s: CircleIntervalSet, t) -> CircleIntervalSet:
    """Image of ``s`` under x -> (x + t) mod 1."""
    t = mod1(t)
    if t == 0 or s.is_empty:
        return s
    out = []
    for lo, hi in s.lifted():
        lo, hi = lo + t, hi + t
        if lo >= 1:
            out.append((lo - 1, hi - 1))
        elif hi > 1:
            out.append((lo, ONE))
            out.append((ZERO, hi - 1))
        else:
            out.append((lo, hi))
    return CircleIntervalSet(_canonical(_merge(out)))
