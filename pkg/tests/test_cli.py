import csv
import io
import subprocess
import sys
from fractions import Fraction as F

import pytest

from bspline_gabor.cli import (
    EXIT_DEGENERATE,
    EXIT_FAILED,
    EXIT_INFEASIBLE,
    EXIT_IO,
    EXIT_NOT_IN_H,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from bspline_gabor.sets import enum_P, segment_H


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_exit_codes_disjoint():
    codes = [EXIT_OK, EXIT_FAILED, EXIT_NOT_IN_H, EXIT_INFEASIBLE, EXIT_DEGENERATE, EXIT_USAGE, EXIT_IO]
    assert len(set(codes)) == len(codes)


def test_enum_p_csv(capsys):
    assert main(["enum-p", "--b-max", "15", "--r-max", "50"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "a,b,ab,mu,r,k,p,q,a_float,b_float,ab_float"
    data = rows(out)
    pts = {(F(r["a"]), F(r["b"])) for r in data}
    assert pts == {pp.point for pp in enum_P(15, 50)}
    assert (F(1, 3), F(5, 2)) in pts
    assert all(F(1, 2) < F(r["ab"]) < 1 for r in data)
    assert "\r" not in out


def test_enum_p_empty_range(capsys):
    assert main(["enum-p", "--b-max", "2", "--r-max", "5"]) == 0
    assert capsys.readouterr().out == "a,b,ab,mu,r,k,p,q,a_float,b_float,ab_float\n"


def test_enum_p_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["enum-p", "--b-max", "10", "--r-max", "20", "--out", str(a)]) == 0
    assert main(["enum-p", "--b-max", "10", "--r-max", "20", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_enum_p_svg_record_count(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["enum-p", "--b-max", "15", "--r-max", "50", "--out", str(out), "--format", "both"]) == 0
    n_rows = len(rows(out.read_text()))
    svg = out.with_suffix(".svg").read_text()
    assert svg.count('class="record"') == n_rows > 0


def test_enum_h_rows_match_segments(capsys):
    assert main(["enum-h", "--n", "2", "--b-max", "15", "--r-max", "50"]) == 0
    data = rows(capsys.readouterr().out)
    pts = enum_P(15, 50)
    assert len(data) == len(pts)
    by_key = {(int(r["mu"]), int(r["r"]), int(r["k"])): r for r in data}
    for pp in pts:
        seg = segment_H(pp, 2)
        r = by_key[(pp.mu, pp.r, pp.k)]
        assert (F(r["b_lo"]), F(r["b_hi"]), F(r["ab"])) == (seg.b_lo, seg.b_hi, seg.ab)


def test_enum_h_zoom(capsys):
    assert main(["enum-h", "--n", "2", "--b-min", "6", "--b-max", "8", "--r-max", "50"]) == 0
    data = rows(capsys.readouterr().out)
    assert data and all(6 <= F(r["b0"]) <= 8 for r in data)
    expected = [pp for pp in enum_P(8, 50) if pp.b0 >= 6]
    assert len(data) == len(expected)


def test_enum_h_n4_halves(capsys):
    main(["enum-h", "--n", "2", "--b-max", "15", "--r-max", "50"])
    two = rows(capsys.readouterr().out)
    main(["enum-h", "--n", "4", "--b-max", "15", "--r-max", "50"])
    four = rows(capsys.readouterr().out)
    assert len(two) == len(four)
    for x, y in zip(two, four):
        assert F(x["half_width"]) == 2 * F(y["half_width"])


def test_enum_h_svg_tiles(tmp_path):
    out = tmp_path / "h.svg"
    args = ["enum-h", "--n", "2", "--b-max", "8", "--r-max", "20", "--tiles", "--color-by", "r"]
    assert main(args + ["--out", str(out), "--format", "svg"]) == 0
    svg = out.read_text()
    assert svg.count('class="record"') == len(enum_P(8, 20))
    assert 'class="tile"' in svg


def test_svg_needs_out():
    assert main(["enum-p", "--r-max", "3", "--format", "svg"]) == EXIT_USAGE


def test_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    assert main(["scan", "--n", "2", "--a", "1/3", "--b", "5/2", "--grid", "8", "--out", str(out)]) == 0
    text = out.read_text().splitlines()
    assert text[0].split(",")[:3] == ["x\\gamma", "0", "1/8"]
    assert len(text) == 1 + 8 + 1 and text[-1].startswith("# min=")
    assert "argmin_gamma=0," in text[-1]
    assert "min=" in capsys.readouterr().out


def test_scan_m2(capsys):
    assert main(["scan", "--n", "3", "--a", "1/2", "--b", "3/2", "--grid", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    values = [v for line in lines[1:3] for v in line.split(",")[1:]]
    assert len(values) == 4


def test_certify_ok(tmp_path):
    out = tmp_path / "cert.txt"
    assert main(["certify", "--n", "2", "--a", "1/3", "--b", "5/2", "--out", str(out)]) == EXIT_OK
    assert "status = verified" in out.read_text()


def test_certify_not_in_h(capsys):
    assert main(["certify", "--n", "2", "--a", "1/3", "--b", "3/2"]) == EXIT_NOT_IN_H
    assert "not in H" in capsys.readouterr().err


@pytest.mark.parametrize("bad", ["1/0", "abc", "-1/3", "0"])
def test_certify_usage_errors(bad):
    with pytest.raises(SystemExit) as info:
        main(["certify", "--n", "2", "--a", bad, "--b", "5/2"])
    assert info.value.code == EXIT_USAGE


def test_decimal_input_is_exact(capsys):
    assert main(["certify", "--n", "2", "--a", "0.3333", "--b", "2.5"]) == EXIT_NOT_IN_H


def test_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["enum-p", "--r-max", "2", "--out", str(blocker / "sub" / "p.csv")]) == EXIT_IO


def test_verify_small(capsys):
    assert main(["verify", "--b-max", "8", "--r-max", "2", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "PASS" in out


def test_verify_widen_runs(capsys):
    code = main(["verify", "--b-max", "8", "--r-max", "4", "--n", "2", "--widen"])
    assert code in (EXIT_OK, EXIT_FAILED)
    assert "widened" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bspline_gabor", "certify", "--a", "1/3", "--b", "5/2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "status = verified" in proc.stdout
