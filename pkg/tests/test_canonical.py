import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2torus import (
    DegenerateCC,
    ParamOutOfRange,
    SL2Matrix,
    ToleranceConfig,
    apply_conjugation,
    canonicalize,
    equivalent,
    make_pair,
    make_sl2,
    reconstruct,
    rotation,
    sl2_from_coords,
)
from sl2torus.atlas import random_sl2, sample_params
from sl2torus.canonical import SECTOR_CONTINUOUS, SECTORS

CFG = ToleranceConfig()
I = make_sl2(1, 0, 0, 1)
NEG_I = make_sl2(-1, 0, 0, -1)
SWAP = SL2Matrix(0.0, -1.0, 1.0, 0.0)


def pair(U1, U2):
    return make_pair(U1, U2, CFG)


def assert_params(c, expected, tol=1e-9):
    assert set(c.params) == set(expected)
    for k, v in expected.items():
        if isinstance(v, int):
            assert c.params[k] == v, k
        else:
            assert c.params[k] == pytest.approx(v, abs=tol), k


# --- dispatch and the identity pair ---------------------------------------


def test_identity_pair_is_bb():
    c = canonicalize(pair(I, I))
    assert c.sector == "BB"
    assert_params(c, {"eps1": 1, "eps2": 1})
    assert c.witness == I


# --- AA -------------------------------------------------------------------


def test_aa1_already_canonical():
    c = canonicalize(pair(make_sl2(0.5, 0, 0, 2), make_sl2(1 / 3, 0, 0, 3)))
    assert c.sector == "AA1"
    assert_params(c, {"lam": 0.5, "mu": 1 / 3})
    assert c.witness.max_abs_diff(I) == 0.0


def test_aa2():
    c = canonicalize(pair(make_sl2(0.5, 0, 0, 2), make_sl2(3, 0, 0, 1 / 3)))
    assert c.sector == "AA2"
    assert_params(c, {"lam": 0.5, "mu": 1 / 3})


def test_aa1_needs_swap():
    c = canonicalize(pair(make_sl2(2, 0, 0, 0.5), make_sl2(3, 0, 0, 1 / 3)))
    assert c.sector == "AA1"
    assert_params(c, {"lam": 0.5, "mu": 1 / 3})
    # hand-applied swap conjugation moves the small eigenvalue first
    assert c.witness.max_abs_diff(SWAP) <= 1e-15
    swapped = apply_conjugation(
        pair(make_sl2(2, 0, 0, 0.5), make_sl2(3, 0, 0, 1 / 3)), SWAP
    )
    assert swapped.U1.a == pytest.approx(0.5)


# --- scalar partner (AB, BA, BB) ------------------------------------------


def test_ab():
    c = canonicalize(pair(make_sl2(1 / 3, 0, 0, 3), NEG_I))
    assert c.sector == "AB"
    assert_params(c, {"lam": 1 / 3, "eps2": -1})


def test_bb_mixed_signs():
    c = canonicalize(pair(NEG_I, I))
    assert c.sector == "BB"
    assert_params(c, {"eps1": -1, "eps2": 1})


def test_ba_conjugated():
    rng = random.Random(11)
    S = random_sl2(rng)
    q = apply_conjugation(pair(I, make_sl2(0.2, 0, 0, 5)), S)
    c = canonicalize(pair(q.U1, q.U2))
    assert c.sector == "BA"
    assert_params(c, {"eps1": 1, "mu": 0.2}, tol=1e-10)


# --- BC / CB --------------------------------------------------------------


def test_bc_canonical_plus():
    c = canonicalize(pair(NEG_I, make_sl2(1, 1, 0, 1)))
    assert c.sector == "BC"
    assert_params(c, {"eps1": -1, "eps2": 1, "eps4": 1})
    assert c.witness.max_abs_diff(I) == 0.0


def test_bc_canonical_minus():
    c = canonicalize(pair(NEG_I, make_sl2(1, -1, 0, 1)))
    assert c.sector == "BC"
    assert_params(c, {"eps1": -1, "eps2": 1, "eps4": -1})


def test_cb_canonical():
    c = canonicalize(pair(make_sl2(-1, 1, 0, -1), I))
    assert c.sector == "CB"
    assert_params(c, {"eps1": -1, "eps3": 1, "eps2": 1})


def test_bc_sign_is_sl2_invariant():
    # conjugating by any unit-determinant matrix must preserve eps4
    rng = random.Random(5)
    base = pair(NEG_I, make_sl2(1, -1, 0, 1))
    for _ in range(20):
        q = apply_conjugation(base, random_sl2(rng))
        c = canonicalize(pair(q.U1, q.U2))
        assert c.params["eps4"] == -1


# --- BD / DB --------------------------------------------------------------


def test_bd_canonical():
    c = canonicalize(pair(NEG_I, rotation(2.0)))
    assert c.sector == "BD"
    assert_params(c, {"eps1": -1, "phi": 2.0})
    assert c.witness.max_abs_diff(I) <= 1e-12


def test_db_canonical():
    c = canonicalize(pair(rotation(5.0), I))
    assert c.sector == "DB"
    assert_params(c, {"theta": 5.0, "eps2": 1})


def test_bd_negative_det_conjugation_flips_angle():
    rng = random.Random(9)
    H = random_sl2(rng)
    G = SL2Matrix(-1.0, 0.0, 0.0, 1.0) @ H  # det = -1
    Gi = H.inv() @ SL2Matrix(-1.0, 0.0, 0.0, 1.0)
    R = rotation(2.0)
    U2 = Gi @ R @ G
    # direct multiplication confirms the flipped rotation angle
    c = canonicalize(pair(I, make_sl2(U2.a, U2.b, U2.c, U2.d)))
    assert c.sector == "BD"
    assert_params(c, {"eps1": 1, "phi": 2 * math.pi - 2.0}, tol=1e-9)


# --- CC -------------------------------------------------------------------


def test_cc_already_canonical():
    h = math.sqrt(2) / 2
    c = canonicalize(pair(make_sl2(1, h, 0, 1), make_sl2(1, h, 0, 1)))
    assert c.sector == "CC"
    assert_params(c, {"eps1": 1, "eps2": 1, "alpha": math.pi / 4})
    assert c.witness.max_abs_diff(I) <= 1e-12
    assert c.trace.c == pytest.approx(1.0)


def test_cc_hand_construction():
    # v1' = (1,0), v2' = (0,1), coupling scalar 2, det S' = 1
    c = canonicalize(pair(make_sl2(1, 1, 0, 1), make_sl2(1, 2, 0, 1)))
    assert c.sector == "CC"
    assert c.trace.c == pytest.approx(2.0)
    assert c.trace.det_sprime_sign == 1
    assert c.params["alpha"] == pytest.approx(math.atan(2))
    assert math.cos(c.params["alpha"]) > 0


def test_cc_round_trip_alpha_4():
    rng = random.Random(21)
    base = reconstruct("CC", {"eps1": 1, "eps2": 1, "alpha": 4.0})
    q = apply_conjugation(base, random_sl2(rng))
    c = canonicalize(pair(q.U1, q.U2))
    assert c.sector == "CC"
    assert c.params["alpha"] == pytest.approx(4.0, abs=1e-9)
    assert math.tan(c.params["alpha"]) == pytest.approx(c.trace.c, abs=1e-8)
    sgn = 1 if math.cos(c.params["alpha"]) > 0 else -1
    assert sgn == c.trace.det_sprime_sign


# --- DD -------------------------------------------------------------------


def test_dd_canonical():
    c = canonicalize(pair(rotation(2.0), rotation(5.0)))
    assert c.sector == "DD"
    assert_params(c, {"theta": 2.0, "phi": 5.0})


def test_dd_transposed_angles_flip():
    R2t = make_sl2(*[rotation(2.0).a, rotation(2.0).c,
                     rotation(2.0).b, rotation(2.0).d])
    R5t = make_sl2(*[rotation(5.0).a, rotation(5.0).c,
                     rotation(5.0).b, rotation(5.0).d])
    c = canonicalize(pair(R2t, R5t))
    assert c.sector == "DD"
    assert_params(c, {"theta": 2 * math.pi - 2.0, "phi": 2 * math.pi - 5.0})


def test_dd_round_trip_equal_angles():
    rng = random.Random(2)
    base = reconstruct("DD", {"theta": 1.0, "phi": 1.0})
    q = apply_conjugation(base, random_sl2(rng))
    c = canonicalize(pair(q.U1, q.U2))
    assert_params(c, {"theta": 1.0, "phi": 1.0}, tol=1e-9)


# --- reconstruct ----------------------------------------------------------


def test_reconstruct_bb():
    p = reconstruct("BB", {"eps1": 1, "eps2": -1})
    assert p.U1 == I and p.U2 == NEG_I


def test_reconstruct_cc():
    p = reconstruct("CC", {"eps1": 1, "eps2": 1, "alpha": math.pi / 4})
    assert p.U1.b == pytest.approx(math.sqrt(2) / 2)
    assert p.U2.b == pytest.approx(math.sqrt(2) / 2)


def test_reconstruct_dd():
    p = reconstruct("DD", {"theta": math.pi / 2, "phi": 3 * math.pi / 2})
    assert p.U1.max_abs_diff(rotation(math.pi / 2)) == 0.0
    assert p.U2.max_abs_diff(rotation(3 * math.pi / 2)) == 0.0


@pytest.mark.parametrize("sector,params", [
    ("AA1", {"lam": 1.5, "mu": 0.5}),
    ("AA1", {"lam": 0.0, "mu": 0.5}),
    ("BD", {"eps1": 1, "phi": math.pi}),
    ("BD", {"eps1": 2, "phi": 1.0}),
    ("CC", {"eps1": 1, "eps2": 1, "alpha": math.pi / 2}),
    ("DD", {"theta": 0.0, "phi": 1.0}),
])
def test_reconstruct_rejects_out_of_range(sector, params):
    with pytest.raises(ParamOutOfRange):
        reconstruct(sector, params)


# --- apply_conjugation ----------------------------------------------------


def test_apply_conjugation_identity():
    p = pair(make_sl2(2, 0, 0, 0.5), I)
    q = apply_conjugation(p, I)
    assert q.U1 == p.U1 and q.U2 == p.U2


def test_apply_conjugation_swap():
    p = pair(make_sl2(2, 0, 0, 0.5), I)
    q = apply_conjugation(p, SWAP)
    assert q.U1.max_abs_diff(make_sl2(0.5, 0, 0, 2)) <= 1e-15


def test_apply_conjugation_group_action():
    rng = random.Random(4)
    S = random_sl2(rng)
    p = pair(rotation(2.0), rotation(5.0))
    q = apply_conjugation(apply_conjugation(p, S), S.inv())
    assert q.U1.max_abs_diff(p.U1) <= 1e-12
    assert q.U2.max_abs_diff(p.U2) <= 1e-12


# --- properties -----------------------------------------------------------


sector_st = st.sampled_from(SECTORS)
seed_st = st.integers(0, 10**6)


@given(sector_st, seed_st)
@settings(max_examples=60, deadline=None)
def test_round_trip_property(sector, seed):
    rng = random.Random(seed)
    params = sample_params(sector, rng)
    base = reconstruct(sector, params)
    q = apply_conjugation(base, random_sl2(rng))
    c = canonicalize(make_pair(q.U1, q.U2, CFG), CFG)
    assert c.sector == sector
    for k, v in params.items():
        if isinstance(v, int):
            assert c.params[k] == v
        else:
            assert c.params[k] == pytest.approx(v, abs=CFG.param_tol)
    # witness validity
    target = reconstruct(sector, c.params)
    got = apply_conjugation(q, c.witness)
    assert got.U1.max_abs_diff(target.U1) <= 10 * CFG.param_tol
    assert got.U2.max_abs_diff(target.U2) <= 10 * CFG.param_tol


@given(sector_st, seed_st)
@settings(max_examples=40, deadline=None)
def test_idempotence(sector, seed):
    rng = random.Random(seed)
    params = sample_params(sector, rng)
    c = canonicalize(reconstruct(sector, params), CFG)
    assert c.sector == sector
    for k, v in params.items():
        assert c.params[k] == pytest.approx(v, abs=1e-12)
    assert c.witness.max_abs_diff(I) <= 1e-9


@given(seed_st)
@settings(max_examples=25, deadline=None)
def test_equivalence_relation(seed):
    rng = random.Random(seed)
    sector = rng.choice(SECTORS)
    params = sample_params(sector, rng)
    base = reconstruct(sector, params)
    ps = [apply_conjugation(base, random_sl2(rng)) for _ in range(3)]
    a, b, c = (make_pair(p.U1, p.U2, CFG) for p in ps)
    assert equivalent(a, a, CFG)
    assert equivalent(a, b, CFG) == equivalent(b, a, CFG) is True
    assert equivalent(a, c, CFG) and equivalent(b, c, CFG)


# --- equivalence: positive and negative -----------------------------------


def test_equivalent_under_conjugation():
    rng = random.Random(8)
    p = pair(rotation(2.0), rotation(5.0))
    q = apply_conjugation(p, random_sl2(rng))
    assert equivalent(p, make_pair(q.U1, q.U2, CFG), CFG)


def test_bd_transpose_not_equivalent():
    R = rotation(2.0)
    Rt = make_sl2(R.a, R.c, R.b, R.d)
    assert not equivalent(pair(NEG_I, R), pair(NEG_I, Rt), CFG)


def test_bc_flip_not_equivalent():
    assert not equivalent(
        pair(I, make_sl2(1, 1, 0, 1)), pair(I, make_sl2(1, -1, 0, 1)), CFG
    )


def test_aa1_aa2_distinct():
    p = reconstruct("AA1", {"lam": 0.5, "mu": 0.25})
    q = reconstruct("AA2", {"lam": 0.5, "mu": 0.25})
    assert not equivalent(make_pair(p.U1, p.U2), make_pair(q.U1, q.U2), CFG)


def test_degenerate_cc_raises():
    # a coupling scalar at or below param_tol cannot be normalized reliably;
    # 1e-8 still classifies as parabolic but is a degenerate coupling
    U1 = make_sl2(1, 1, 0, 1)
    U2 = make_sl2(1, 1e-8, 0, 1)
    with pytest.raises(DegenerateCC):
        canonicalize(pair(U1, U2), CFG)
