import cmath
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from bspline_gabor.errors import PreconditionViolated
from bspline_gabor.zak import (
    ZZPoint,
    column_group_sum,
    lattice,
    scan,
    smallest_singular_value,
    zak_eval,
    zz_matrix,
)

from oracles import zak_bruteforce


def rand_rational(rng, bound=3, den=60):
    d = rng.randint(1, den)
    return F(rng.randint(-bound * d, bound * d), d)


def test_zak_examples():
    assert abs(zak_eval(1, 1, F(1, 2), F(1, 3)) - 1) < 1e-15
    assert abs(zak_eval(2, 1, F(1, 2), F(1, 2))) < 1e-15
    assert abs(zak_eval(2, 1, 1, 0) - 1) < 1e-15


def test_zak_rejects_nonpositive_dilation():
    with pytest.raises(PreconditionViolated):
        zak_eval(2, 0, 0, 0)


def test_zak_against_bruteforce():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 5)
        lam = F(rng.randint(1, 12), rng.randint(1, 12))
        x, g = rand_rational(rng), rand_rational(rng)
        assert abs(zak_eval(n, lam, x, g) - zak_bruteforce(n, lam, x, g)) < 1e-12


def test_quasi_periodicity():
    rng = random.Random(11)
    worst = 0.0
    for _ in range(1000):
        n = rng.randint(1, 4)
        lam = F(rng.randint(1, 9), rng.randint(1, 9))
        x, g = rand_rational(rng), rand_rational(rng)
        z = zak_eval(n, lam, x, g)
        ph = cmath.exp(2j * math.pi * float(g))
        worst = max(worst, abs(zak_eval(n, lam, x + 1, g) - ph * z), abs(zak_eval(n, lam, x, g + 1) - z))
    assert worst <= 1e-12


def test_lattice_reduces_density():
    lat = lattice(F(1, 3), F(5, 2))
    assert (lat.p, lat.q) == (5, 6)
    with pytest.raises(PreconditionViolated):
        lattice(0, 1)
    with pytest.raises(TypeError):
        lattice(0.3, 1)


def test_zz_shape_and_provenance():
    lat = lattice(F(1, 3), F(5, 2))
    m = zz_matrix(2, lat, ZZPoint(0, 0))
    assert m.shape == (5, 6)
    assert m.n == 2 and m.lattice == lat and m.point == ZZPoint(0, 0)


def test_zz_single_entry_modulus():
    m = zz_matrix(1, lattice(1, 1), ZZPoint(F(1, 2), F(1, 2)))
    assert m.shape == (1, 1)
    assert abs(abs(m.data[0, 0]) - 1) < 1e-15


def test_zzpoint_reduces():
    pt = ZZPoint(F(7, 3), F(-1, 4))
    assert pt == ZZPoint(F(1, 3), F(3, 4))


def test_zz_entry_consistency():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 4)
        a = F(rng.randint(1, 6), rng.randint(2, 9))
        b = F(rng.randint(1, 9), rng.randint(1, 5))
        lat = lattice(a, b)
        if lat.p > 12 or lat.q > 12:
            continue
        pt = ZZPoint(F(rng.randint(0, 30), 31), F(rng.randint(0, 16), 17))
        m = zz_matrix(n, lat, pt)
        k, ell = rng.randrange(lat.p), rng.randrange(lat.q)
        direct = zak_bruteforce(n, 1 / b, pt.x - F(ell * lat.p, lat.q), pt.gamma + F(k, lat.p)) / math.sqrt(lat.p)
        assert abs(m.data[k, ell] - direct) <= 1e-12


def test_sigma_min_examples():
    assert smallest_singular_value(np.zeros((2, 3))) == 0
    assert abs(smallest_singular_value(np.hstack([np.eye(2), np.zeros((2, 1))])) - 1) < 1e-15
    assert smallest_singular_value(np.ones((3, 2))) == 0  # p > q never spans


def test_sigma_min_permutation_invariant():
    rng = np.random.default_rng(5)
    m = zz_matrix(3, lattice(F(2, 7), F(3, 1)), ZZPoint(F(1, 5), F(2, 9)))
    s0 = smallest_singular_value(m)
    for _ in range(10):
        perm = rng.permutation(m.shape[1])
        assert abs(smallest_singular_value(m.data[:, perm]) - s0) <= 1e-12


def test_sigma_min_at_certified_point():
    m = zz_matrix(2, lattice(F(1, 3), F(5, 2)), ZZPoint(F(1, 4), 0))
    assert smallest_singular_value(m) <= 1e-9 * max(1.0, m.frobenius)


def test_column_group_sum_center():
    lat = lattice(F(1, 3), F(5, 2))
    g = column_group_sum(2, lat, 3, 2, F(1, 2))
    assert g.in_region and g.offset == 0
    assert abs(g.K - math.sqrt(2)) < 1e-12
    assert g.off_axis <= 1e-10


def test_column_group_sum_matches_matrix_columns():
    lat = lattice(F(1, 3), F(5, 2))
    x = F(1, 2)
    m = zz_matrix(2, lat, ZZPoint(x / 2, 0))
    direct = m.data[:, 0] + m.data[:, 3]
    assert np.max(np.abs(column_group_sum(2, lat, 3, 2, x).vector - direct)) < 1e-13


def test_column_group_sum_endpoint_region():
    # b = 31/12: rb - p = 1/6, region [1/3, 1]
    lat = lattice(F(10, 31), F(31, 12))
    inside = column_group_sum(2, lat, 3, 2, F(2, 3))
    assert inside.in_region and inside.off_axis <= 1e-10 * (1 + abs(inside.K))
    outside = column_group_sum(2, lat, 3, 2, F(1, 7))
    assert not outside.in_region
    assert outside.off_axis > 1e-6  # the lemma is silent here and the sum is not axis-aligned


def test_column_group_sum_preconditions():
    lat = lattice(F(1, 3), F(5, 2))
    with pytest.raises(PreconditionViolated):
        column_group_sum(2, lat, 2, 2, 0)  # q = 6 is not 2 * 2
    with pytest.raises(PreconditionViolated):
        column_group_sum(2, lattice(F(5, 12), 2), 3, 2, 0)  # rb - p = -1


def test_scan_certified_point():
    res = scan(2, lattice(F(1, 3), F(5, 2)), 16)
    assert res.min_value <= 1e-6
    assert res.argmin[1] == 0
    assert res.min_value == res.values.min()


def test_scan_tiny_grid():
    res = scan(3, lattice(F(1, 2), F(3, 2)), 2)
    assert res.values.shape == (2, 2)
    i, j = res.argmin
    assert res.values[i, j] == res.min_value == res.values.min()
    with pytest.raises(PreconditionViolated):
        scan(2, lattice(F(1, 2), F(3, 2)), 1)


def test_scan_refinement_monotone():
    lat = lattice(F(1, 3), F(1, 2))
    coarse, fine = scan(2, lat, 4), scan(2, lat, 8)
    assert fine.min_value <= coarse.min_value
    assert np.array_equal(fine.values[::2, ::2], coarse.values)


def test_scan_deterministic():
    lat = lattice(F(2, 5), F(2, 1))
    assert np.array_equal(scan(2, lat, 6).values, scan(2, lat, 6).values)
