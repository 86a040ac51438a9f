import math
import random
from fractions import Fraction

import pytest

from sl2torus import (
    DeterminantError,
    ToleranceConfig,
    apply_conjugation,
    classify,
    exact_classify,
    make_pair,
    make_sl2,
    rotation,
    search_conjugator,
    sl2_from_coords,
)
from sl2torus.atlas import random_sl2, sample_sector
from sl2torus.canonical import SECTORS
from sl2torus.oracle import CONVERGENCE_THRESHOLD, DISTINCT_FLOOR

CFG = ToleranceConfig()


def test_sl2_from_coords_always_unit_det():
    rng = random.Random(0)
    for _ in range(200):
        S = sl2_from_coords(rng.uniform(0, 2 * math.pi),
                            rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert S.det() == pytest.approx(1.0, abs=1e-10)


def test_sl2_from_coords_identity():
    S = sl2_from_coords(0.0, 0.0, 0.0)
    assert S.max_abs_diff(make_sl2(1, 0, 0, 1)) <= 1e-15


def test_search_identical_pairs():
    p = make_pair(rotation(1.0), rotation(2.0))
    report = search_conjugator(p, p, seed=0)
    assert report.converged
    assert report.residual <= CONVERGENCE_THRESHOLD


def test_search_planted_conjugator():
    rng = random.Random(7)
    p = make_pair(make_sl2(2, 0, 0, 0.5), make_sl2(3, 0, 0, 1 / 3))
    q0 = apply_conjugation(p, random_sl2(rng))
    q = make_pair(q0.U1, q0.U2)
    report = search_conjugator(p, q, seed=1)
    assert report.converged
    # the returned witness must actually conjugate p onto q
    got = apply_conjugation(p, report.best_S)
    assert got.U1.max_abs_diff(q.U1) <= 1e-6
    assert got.U2.max_abs_diff(q.U2) <= 1e-6


def test_search_flipped_twin_fails():
    # reflection-conjugate elliptic pairs are GL- but not SL-equivalent
    p = make_pair(rotation(2.0), rotation(5.0))
    q = make_pair(rotation(2 * math.pi - 2.0), rotation(2 * math.pi - 5.0))
    report = search_conjugator(p, q, seed=2)
    assert not report.converged
    assert report.residual >= DISTINCT_FLOOR


def test_search_different_sectors_fails():
    p = make_pair(make_sl2(1, 0, 0, 1), make_sl2(1, 1, 0, 1))
    q = make_pair(make_sl2(1, 0, 0, 1), make_sl2(1, -1, 0, 1))
    report = search_conjugator(p, q, seed=3)
    assert not report.converged


def test_search_deterministic():
    p = sample_sector("DD", seed=5, conjugate=True)
    q = sample_sector("DD", seed=6, conjugate=True)
    r1 = search_conjugator(p, q, seed=9)
    r2 = search_conjugator(p, q, seed=9)
    assert r1.residual == r2.residual
    assert r1.best_S == r2.best_S


@pytest.mark.parametrize("sector", SECTORS)
def test_search_within_each_sector(sector):
    base = sample_sector(sector, seed=42, conjugate=False)
    rng = random.Random(13)
    q0 = apply_conjugation(base, random_sl2(rng))
    q = make_pair(q0.U1, q0.U2)
    report = search_conjugator(base, q, seed=4)
    assert report.converged, (sector, report.residual)


# --- exact classification -------------------------------------------------


def test_exact_hyperbolic():
    st_ = exact_classify(Fraction(3, 2), Fraction(1), Fraction(1, 2), Fraction(1))
    assert st_.tag == "A"


def test_exact_parabolic_tiny_offdiag():
    st_ = exact_classify(Fraction(1), Fraction(1, 7), Fraction(0), Fraction(1))
    assert (st_.tag, st_.eps) == ("C", 1)


def test_exact_scalar():
    st_ = exact_classify(Fraction(-1), Fraction(0), Fraction(0), Fraction(-1))
    assert (st_.tag, st_.eps) == ("B", -1)


def test_exact_elliptic():
    st_ = exact_classify(Fraction(0), Fraction(-1), Fraction(1), Fraction(0))
    assert st_.tag == "D"


def test_exact_rejects_bad_determinant():
    with pytest.raises(DeterminantError):
        exact_classify(Fraction(2), Fraction(0), Fraction(0), Fraction(1))


def test_exact_agrees_with_float_away_from_boundary():
    rng = random.Random(17)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        c = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        if b == 0:
            continue
        # complete to determinant one: d = (1 + b c) / a when a != 0
        if a == 0:
            continue
        d = (1 + b * c) / a
        tr = a + d
        if abs(abs(tr) - 2) < Fraction(1, 1000):
            continue
        exact = exact_classify(a, b, c, d)
        approx = classify(make_sl2(float(a), float(b), float(c), float(d)), CFG)
        assert exact.tag == approx.tag


def test_oracle_agrees_with_constructive_equivalence():
    # for pairs drawn from the same canonical point, the search converges;
    # across distinct canonical points it does not
    rng = random.Random(23)
    base = sample_sector("AA1", seed=77, conjugate=False)
    same0 = apply_conjugation(base, random_sl2(rng))
    same = make_pair(same0.U1, same0.U2)
    other = sample_sector("AA2", seed=77, conjugate=True)
    assert search_conjugator(base, same, seed=5).converged
    assert not search_conjugator(base, other, seed=5).converged
