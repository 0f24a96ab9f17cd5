import math
from fractions import Fraction as F

import numpy as np
import pytest

from bspline_gabor import certify
from bspline_gabor.certify import (
    NotInH,
    build_certificate,
    certify_nonframe,
    feasible_set,
    find_x0,
    literal_groups,
    parse_record,
    recheck_record,
    reordered_groups,
)
from bspline_gabor.errors import DegenerateConstant, PreconditionViolated
from bspline_gabor.numeric import CircleIntervalSet, circle_intersect
from bspline_gabor.sets import ObstructionParams, enum_P, segment_H
from bspline_gabor.zak import ZZPoint, lattice, zz_matrix

P321 = ObstructionParams(3, 2, 1)


def test_find_x0_center():
    w = find_x0(2, P321, F(5, 2))
    assert w.offset == 0 and w.region.is_full and w.feasible.is_full
    assert w.x0 == F(1, 4)
    assert w.groups == (0, 1, 2) and w.group_order == "literal"


def test_find_x0_endpoint_is_tight():
    w = find_x0(2, P321, F(31, 12))
    assert w.offset == F(1, 6)
    assert w.region == CircleIntervalSet.from_intervals([(F(1, 3), 1)])
    assert w.feasible == CircleIntervalSet.from_intervals([(0, 0), (F(1, 3), F(1, 3)), (F(2, 3), F(2, 3))])
    assert w.x0 == 0


def test_find_x0_rejects_off_segment():
    with pytest.raises(PreconditionViolated):
        find_x0(2, P321, F(31, 12) + F(1, 10**6))
    with pytest.raises(PreconditionViolated):
        find_x0(2, P321, F(29, 12) - F(1, 10**6))


def test_center_certificate():
    c = build_certificate(2, P321, F(5, 2))
    assert c.verified and c.status == "verified"
    assert (c.p, c.q, c.S, c.claimed_rank_bound) == (5, 6, 3, 4)
    assert len(c.kernel_vectors) == 2 and c.kernel_dim == 2
    assert c.sigma_min <= c.tolerance
    assert all(abs(K - math.sqrt(2)) < 1e-12 for K in c.group_constants)
    assert c.tolerance == pytest.approx(1e-9 * max(1.0, c.frobenius))


@pytest.mark.parametrize("b", [F(29, 12), F(31, 12)])
def test_endpoint_certificates_n2(b):
    assert build_certificate(2, P321, b).verified


def test_n1_center_certificate():
    assert build_certificate(1, P321, F(5, 2)).verified


def test_kernel_vectors_structure():
    pp = ObstructionParams(7, 2, 3)
    c = build_certificate(2, pp, pp.b0)
    phi = zz_matrix(2, lattice(c.a, c.b), ZZPoint(c.x0, 0)).data
    for s, w in zip(c.groups[1:], c.kernel_vectors):
        support = set(np.flatnonzero(np.abs(w) > 0))
        assert support == set(range(s, pp.q, pp.mu)) | set(range(c.groups[0], pp.q, pp.mu))
        assert np.max(np.abs(phi @ w)) <= c.tolerance
    assert c.kernel_dim >= pp.q - pp.p + 1 == pp.k + 1
    assert c.S == pp.q - pp.p + 2


def test_reordered_groups_are_consecutive_multiples():
    pp = ObstructionParams(7, 2, 3)
    groups = reordered_groups(pp)
    assert len(set(groups)) == len(groups) == pp.k + 2
    positions = [F(s * pp.k % pp.mu, pp.mu) for s in groups]
    assert positions == [F(j, pp.mu) for j in range(pp.k + 2)]


def test_endpoint_uses_reordered_groups_when_needed():
    pp = ObstructionParams(7, 2, 3)
    seg = segment_H(pp, 2)
    literal, _, _ = feasible_set(2, pp, seg.b_hi, literal_groups(pp))
    assert literal.is_empty
    c = build_certificate(2, pp, seg.b_hi)
    assert c.group_order == "reordered" and c.verified


def test_k1_always_literal():
    for pp in enum_P(12, 12):
        if pp.k != 1:
            continue
        for n in (1, 2, 3):
            seg = segment_H(pp, n)
            for b in (seg.b_lo, pp.b0, seg.b_hi):
                assert find_x0(n, pp, b).group_order == "literal"


@pytest.mark.parametrize("n", [2, 3])
def test_sign_case_invariance(n):
    for pp in enum_P(8, 6):
        seg = segment_H(pp, n)
        lo, hi = build_certificate(n, pp, seg.b_lo), build_certificate(n, pp, seg.b_hi)
        assert find_x0(n, pp, seg.b_lo).offset < 0 < find_x0(n, pp, seg.b_hi).offset
        assert lo.verified == hi.verified == True


def _subset(a: CircleIntervalSet, b: CircleIntervalSet) -> bool:
    return circle_intersect([a, b]) == a


@pytest.mark.parametrize("n", [1, 2, 3])
def test_feasible_set_grows_toward_center(n):
    for pp in enum_P(9, 8):
        seg = segment_H(pp, n)
        for side in (seg.b_lo, seg.b_hi):
            chain = [side + (pp.b0 - side) * F(j, 4) for j in range(5)]
            order = find_x0(n, pp, side).group_order
            groups = literal_groups(pp) if order == "literal" else reordered_groups(pp)
            sets = [feasible_set(n, pp, b, groups)[0] for b in chain]
            for small, big in zip(sets, sets[1:]):
                assert _subset(small, big) and small != big or big.is_full and small == big


def test_endpoint_feasible_set_is_finite():
    for pp in enum_P(9, 8):
        for n in (1, 2, 3):
            w = find_x0(n, pp, segment_H(pp, n).b_hi)
            assert w.feasible.measure() == 0 and not w.feasible.is_empty


def test_not_in_h():
    res = certify_nonframe(2, F(2, 5), 2)
    assert isinstance(res, NotInH) and res.q == 5 and res.examined
    res = certify_nonframe(2, F(1, 3), F(3, 2))
    assert isinstance(res, NotInH) and res.p == 1 and res.q == 2
    # right hyperbola, just beyond the segment end
    b = F(31, 12) + F(1, 1000)
    res = certify_nonframe(2, F(5, 6) / b, b)
    assert isinstance(res, NotInH)


def test_certify_nonframe_center():
    c = certify_nonframe(2, F(1, 3), F(5, 2))
    assert c.verified and c.params == P321


def test_record_round_trip():
    pp = ObstructionParams(7, 3, 2)
    c = build_certificate(2, pp, segment_H(pp, 2).b_lo)
    text = c.to_record()
    rec = parse_record(text)
    assert F(rec["x0"]) == c.x0 and F(rec["b"]) == c.b and F(rec["a"]) == c.a
    assert float(rec["sigma_min"]) == c.sigma_min
    assert rec["status"] == "verified"
    for s, K in zip(c.groups, c.group_constants):
        re, im = (float(t) for t in rec[f"K_{s}"].split())
        assert complex(re, im) == K
    again = recheck_record(text)
    assert again.ok and again.kernel_dim == pp.k + 1


def test_parse_record_rejects_garbage():
    with pytest.raises(ValueError):
        parse_record("hello\n")
    with pytest.raises(ValueError):
        parse_record("format = something-else\n")


def test_degenerate_constant(monkeypatch):
    real = certify.column_group_sum

    def zeroed(*args, **kwargs):
        g = real(*args, **kwargs)
        return type(g)(g.vector * 0, g.x, g.offset, g.region, g.in_region)

    monkeypatch.setattr(certify, "column_group_sum", zeroed)
    with pytest.raises(DegenerateConstant) as info:
        build_certificate(2, P321, F(5, 2))
    assert info.value.s == 0
