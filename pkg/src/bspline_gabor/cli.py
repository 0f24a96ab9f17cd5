"""Command-line front end.

Exit codes:
    0   success / certificate verified / all suites passed
    1   certificate built but not verified, or a verify suite failed
    2   point is not in H (certify)
    3   no witness x0 exists (certify)
    4   a column-group constant vanished (certify)
    64  usage error (bad flag, malformed rational such as "1/0")
    74  I/O error writing an output file
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import render
from .certify import NotInH, certify_nonframe
from .errors import DegenerateConstant, InfeasibleWitness, PreconditionViolated
from .numeric import parse_rational
from .sets import enum_P, segment_H
from .verify import run_all
from .zak import lattice, scan

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_NOT_IN_H = 2
EXIT_INFEASIBLE = 3
EXIT_DEGENERATE = 4
EXIT_USAGE = 64
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


@dataclass
class RunConfig:
    command: str
    out: Path | None = None
    fmt: str = "csv"
    n: int = 2
    a: Fraction | None = None
    b: Fraction | None = None
    b_min: Fraction = Fraction(0)
    b_max: Fraction = Fraction(15)
    r_max: int = 50
    grid: int = 64
    mu: int | None = None
    tiles: bool = False
    color_by: str = "ab"
    widen: bool = False
    ns: tuple[int, ...] = (1, 2, 3)
    q_max: int = 60


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bspline-gabor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_out(p, formats=("csv", "svg", "both")):
        p.add_argument("--out", type=Path, help="output path (stdout when omitted, csv only)")
        p.add_argument("--format", dest="fmt", choices=formats, default="csv")

    p = sub.add_parser("enum-p", help="enumerate the point set P")
    p.add_argument("--b-max", type=_positive_rational, default=Fraction(15))
    p.add_argument("--r-max", type=_positive_int, required=True)
    p.add_argument("--b-min", type=_rational, default=Fraction(0))
    p.add_argument("--mu", type=_positive_int)
    common_out(p)

    p = sub.add_parser("enum-h", help="enumerate the hyperbolic segments H")
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--b-max", type=_positive_rational, default=Fraction(15))
    p.add_argument("--r-max", type=_positive_int, required=True)
    p.add_argument("--b-min", type=_rational, default=Fraction(0), help="zoom: keep segments with b0 >= B_MIN")
    p.add_argument("--mu", type=_positive_int, help="keep only a0 = 1/MU")
    p.add_argument("--tiles", action="store_true", help="overlay tie tile boundaries (svg)")
    p.add_argument("--color-by", choices=("ab", "r"), default="ab")
    p.add_argument("--widen", action="store_true", help="debug: half-width (mu-k)/(nq)")
    common_out(p)

    p = sub.add_parser("scan", help="sigma_min of the ZZ matrix on an M x M grid")
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--a", type=_positive_rational, required=True)
    p.add_argument("--b", type=_positive_rational, required=True)
    p.add_argument("--grid", type=_positive_int, default=64)
    common_out(p, formats=("csv",))

    p = sub.add_parser("certify", help="build a non-frame certificate for (a, b)")
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--a", type=_positive_rational, required=True)
    p.add_argument("--b", type=_positive_rational, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("verify", help="run the exact property suites")
    p.add_argument("--n", type=_positive_int, nargs="+", default=[1, 2, 3])
    p.add_argument("--b-max", type=_positive_rational, default=Fraction(15))
    p.add_argument("--r-max", type=_positive_int, default=50)
    p.add_argument("--q-max", type=_positive_int, default=60, help="cancellation suite bound on q")
    p.add_argument("--widen", action="store_true", help="debug: widen segments in the containment suite")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for key, value in vars(args).items():
        if key == "n" and isinstance(value, list):
            cfg.ns = tuple(value)
        elif hasattr(cfg, key) and value is not None:
            setattr(cfg, key, value)
    if getattr(args, "fmt", "csv") in ("svg", "both") and cfg.out is None:
        raise UsageError("--format svg/both needs --out")
    return cfg


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _outputs(cfg: RunConfig, csv_text: str, svg_text) -> None:
    if cfg.fmt in ("csv", "both"):
        _emit(csv_text, cfg.out)
    if cfg.fmt == "svg":
        _emit(svg_text(), cfg.out)
    elif cfg.fmt == "both":
        _emit(svg_text(), cfg.out.with_suffix(".svg"))


def _selected_points(cfg: RunConfig):
    pts = enum_P(cfg.b_max, cfg.r_max)
    pts = [pp for pp in pts if pp.b0 >= cfg.b_min]
    if cfg.mu is not None:
        pts = [pp for pp in pts if pp.mu == cfg.mu]
    return pts


def cmd_enum_p(cfg: RunConfig) -> int:
    pts = _selected_points(cfg)
    b_range = (float(cfg.b_min), float(cfg.b_max))
    _outputs(cfg, render.p_csv(pts), lambda: render.p_svg(pts, b_range))
    return EXIT_OK


def cmd_enum_h(cfg: RunConfig) -> int:
    segs = [segment_H(pp, cfg.n, widen=cfg.widen) for pp in _selected_points(cfg)]
    lo = float(cfg.b_min) if cfg.b_min > 0 else 2.0
    b_range = (lo, float(cfg.b_max) + 0.5)
    _outputs(
        cfg,
        render.h_csv(segs),
        lambda: render.h_svg(segs, b_range, tiles=cfg.tiles, color_by=cfg.color_by),
    )
    return EXIT_OK


def cmd_scan(cfg: RunConfig) -> int:
    lat = lattice(cfg.a, cfg.b)
    res = scan(cfg.n, lat, cfg.grid)
    x, g = res.argmin_point
    summary = f"min={res.min_value!r},argmin_x={x},argmin_gamma={g},M={res.M},p={lat.p},q={lat.q}"
    _emit(render.scan_csv(res.values, res.M, summary), cfg.out)
    if cfg.out is not None:
        print(summary)
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    try:
        result = certify_nonframe(cfg.n, cfg.a, cfg.b)
    except InfeasibleWitness as exc:
        print(f"infeasible witness: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DegenerateConstant as exc:
        print(f"degenerate constant: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    if isinstance(result, NotInH):
        print(f"not in H: ab = {Fraction(result.p, result.q)}", file=sys.stderr)
        for line in result.examined:
            print(f"  {line}", file=sys.stderr)
        return EXIT_NOT_IN_H
    _emit(result.to_record(), cfg.out)
    if not result.verified:
        print(f"certificate not verified: {result.reason}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    results = run_all(cfg.b_max, cfg.r_max, cfg.ns, widen=cfg.widen, q_max=cfg.q_max)
    width = max(len(r.name) for r in results)
    print(f"{'suite':<{width}}  {'checks':>7}  {'fail':>5}  status")
    for r in results:
        print(f"{r.name:<{width}}  {r.checks:>7}  {len(r.failures):>5}  {'PASS' if r.passed else 'FAIL'}")
    failed = [r for r in results if not r.passed]
    if failed:
        first = failed[0]
        print(f"first violated invariant: {first.name}: {first.failures[0]}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {
    "enum-p": cmd_enum_p,
    "enum-h": cmd_enum_h,
    "scan": cmd_scan,
    "certify": cmd_certify,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"bspline-gabor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionViolated as exc:
        print(f"bspline-gabor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bspline-gabor: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
