"""CSV rows and plain-SVG renderings of P, H and the tie tiles.

CSV is the byte-exact artifact; SVG is a convenience view with a fixed
viewBox mapping. Each data record becomes exactly one SVG element with
``class="record"``; overlays (tile boundaries, segment centers) use other
classes so record counts can be compared against CSV row counts.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .sets import HyperbolicSegment, ObstructionParams

P_HEADER = ["a", "b", "ab", "mu", "r", "k", "p", "q", "a_float", "b_float", "ab_float"]
H_HEADER = [
    "mu", "r", "k", "p", "q", "n", "a0", "b0", "ab", "half_width", "b_lo", "b_hi",
    "a_lo", "a_hi", "b_lo_float", "b_hi_float", "ab_float",
]

# viridis anchors
_STOPS = [(0.0, (68, 1, 84)), (0.25, (59, 82, 139)), (0.5, (33, 145, 140)), (0.75, (94, 201, 98)), (1.0, (253, 231, 37))]


def _f(x) -> str:
    return repr(float(x))


def _write_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([str(v) for v in row])
    return buf.getvalue()


def p_rows(points: Iterable[ObstructionParams]) -> list[list]:
    rows = []
    for pp in sorted(points):
        rows.append([pp.a0, pp.b0, pp.density, pp.mu, pp.r, pp.k, pp.p, pp.q,
                     _f(pp.a0), _f(pp.b0), _f(pp.density)])
    return rows


def p_csv(points: Iterable[ObstructionParams]) -> str:
    return _write_csv(P_HEADER, p_rows(points))


def h_rows(segments: Iterable[HyperbolicSegment]) -> list[list]:
    rows = []
    for seg in sorted(segments, key=lambda s: s.center):
        c = seg.center
        rows.append([c.mu, c.r, c.k, c.p, c.q, seg.n, c.a0, c.b0, seg.ab, seg.half_width,
                     seg.b_lo, seg.b_hi, seg.a_at(seg.b_lo), seg.a_at(seg.b_hi),
                     _f(seg.b_lo), _f(seg.b_hi), _f(seg.ab)])
    return rows


def h_csv(segments: Iterable[HyperbolicSegment]) -> str:
    return _write_csv(H_HEADER, h_rows(segments))


def colormap(t: float) -> str:
    t = min(1.0, max(0.0, t))
    for (t0, c0), (t1, c1) in zip(_STOPS, _STOPS[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            r, g, b = (round(a + u * (bb - a)) for a, bb in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    return "#fde725"


class _Canvas:
    """Maps (a, b) into a fixed 800 x 600 viewBox with a left/bottom margin."""

    W, H, PAD = 800, 600, 50

    def __init__(self, a_range, b_range):
        self.a0, self.a1 = a_range
        self.b0, self.b1 = b_range
        self.parts: list[str] = []

    def xy(self, a: float, b: float) -> tuple[float, float]:
        x = self.PAD + (a - self.a0) / (self.a1 - self.a0) * (self.W - 2 * self.PAD)
        y = self.H - self.PAD - (b - self.b0) / (self.b1 - self.b0) * (self.H - 2 * self.PAD)
        return round(x, 3), round(y, 3)

    def polyline(self, pts, cls: str, stroke: str, width: float = 1.5, dash: str | None = None, title: str = ""):
        coords = " ".join(f"{x},{y}" for x, y in (self.xy(a, b) for a, b in pts))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        t = f"<title>{title}</title>" if title else ""
        self.parts.append(
            f'<polyline class="{cls}" fill="none" stroke="{stroke}" stroke-width="{width}"{extra} points="{coords}">{t}</polyline>'
        )

    def circle(self, a: float, b: float, cls: str, fill: str, radius: float = 2.0, title: str = ""):
        x, y = self.xy(a, b)
        t = f"<title>{title}</title>" if title else ""
        self.parts.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{radius}" fill="{fill}">{t}</circle>')

    def axes(self, a_label="a", b_label="b"):
        x0, y0 = self.xy(self.a0, self.b0)
        x1, y1 = self.xy(self.a1, self.b1)
        self.parts.append(
            f'<g class="axes" stroke="black" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>'
            f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>'
            f'<text x="{x1}" y="{y0 + 30}" text-anchor="end">{a_label} in [{self.a0:g}, {self.a1:g}]</text>'
            f'<text x="{x0 - 10}" y="{y1 - 10}">{b_label} in [{self.b0:g}, {self.b1:g}]</text>'
        )

    def render(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {self.W} {self.H}" '
            f'width="{self.W}" height="{self.H}">\n<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )


def _ab_color(ab: Fraction) -> str:
    return colormap((float(ab) - 0.5) / 0.5)


def p_svg(points: Sequence[ObstructionParams], b_range: tuple[float, float]) -> str:
    pts = sorted(points)
    a_max = max((float(pp.a0) for pp in pts), default=1 / 3)
    cv = _Canvas((0.0, a_max * 1.05), b_range)
    cv.axes()
    for pp in pts:
        cv.circle(float(pp.a0), float(pp.b0), "record", _ab_color(pp.density),
                  title=f"mu={pp.mu} r={pp.r} k={pp.k} ab={pp.density}")
    return cv.render()


def _tile_curves(cv: _Canvas, b_range: tuple[float, float], samples: int = 80):
    lo, hi = b_range
    for N in range(max(2, math.floor(lo) - 1), math.ceil(hi) + 1):
        upper = [(a, N / (1 - a)) for a in _linspace(0.0, 1.0 / (N + 1), samples)]
        lower = [(a, (N + 1) / (1 + a)) for a in _linspace(0.0, 1.0 / N, samples)]
        for curve, color in ((upper, "#8a2be2"), (lower, "#a0522d")):
            clipped = [(a, b) for a, b in curve if lo <= b <= hi and cv.a0 <= a <= cv.a1]
            if len(clipped) >= 2:
                cv.polyline(clipped, "tile", color, width=1.0, dash="6,3,2,3", title=f"T_{N} boundary")


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def h_svg(
    segments: Sequence[HyperbolicSegment],
    b_range: tuple[float, float],
    tiles: bool = False,
    color_by: str = "ab",
    samples: int = 16,
) -> str:
    segs = sorted(segments, key=lambda s: s.center)
    a_vals = [float(s.a_at(s.b_lo)) for s in segs]
    a_max = max(a_vals, default=1 / 3)
    a_min = min((float(s.a_at(s.b_hi)) for s in segs), default=0.0)
    if tiles:
        a_min = 0.0
    cv = _Canvas((a_min * 0.95, a_max * 1.05), b_range)
    cv.axes()
    if tiles:
        _tile_curves(cv, b_range)
    r_max = max((s.center.r for s in segs), default=2)
    for s in segs:
        if color_by == "r":
            t = math.log(s.center.r) / math.log(max(r_max, 3))
            color = colormap(t)
        else:
            color = _ab_color(s.ab)
        ab = float(s.ab)
        pts = [(ab / b, b) for b in _linspace(float(s.b_lo), float(s.b_hi), samples)]
        c = s.center
        cv.polyline(pts, "record", color, width=2.0, title=f"mu={c.mu} r={c.r} k={c.k} n={s.n}")
    for s in segs:
        cv.circle(float(s.center.a0), float(s.center.b0), "center", "black", radius=1.5)
    return cv.render()


def scan_csv(values, M: int, summary: str) -> str:
    header = ["x\\gamma"] + [str(Fraction(j, M)) for j in range(M)]
    rows = [[str(Fraction(i, M))] + [_f(v) for v in values[i]] for i in range(M)]
    return _write_csv(header, rows) + f"# {summary}\n"
