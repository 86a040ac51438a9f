"""Canonical representatives of commuting pairs under simultaneous
unit-determinant conjugation: the eleven sectors, an explicit conjugating
witness, reconstruction from parameters, and the equivalence decision."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateCC, ParamOutOfRange, SL2TorusError
from .pairs import CommutingPair, coarse_combo
from .sl2 import (
    DEFAULT_TOL,
    IDENTITY,
    SL2Matrix,
    ToleranceConfig,
    classify,
    conjugate,
    rotation,
)

SECTORS = ("AA1", "AA2", "AB", "BA", "BB", "BC", "CB", "BD", "DB", "CC", "DD")

# Parameter layout per sector: which keys are continuous, which discrete.
SECTOR_CONTINUOUS = {
    "AA1": ("lam", "mu"),
    "AA2": ("lam", "mu"),
    "AB": ("lam",),
    "BA": ("mu",),
    "BB": (),
    "BC": (),
    "CB": (),
    "BD": ("phi",),
    "DB": ("theta",),
    "CC": ("alpha",),
    "DD": ("theta", "phi"),
}
SECTOR_DISCRETE = {
    "AA1": (),
    "AA2": (),
    "AB": ("eps2",),
    "BA": ("eps1",),
    "BB": ("eps1", "eps2"),
    "BC": ("eps1", "eps2", "eps4"),
    "CB": ("eps1", "eps2", "eps3"),
    "BD": ("eps1",),
    "DB": ("eps2",),
    "CC": ("eps1", "eps2"),
    "DD": (),
}

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CanonTrace:
    """Audit record of the constructive steps that produced a canonical form."""

    joint_eigendirections: tuple = ()
    c: float | None = None              # CC coupling scalar, tan(alpha) = c
    det_sprime_sign: int | None = None  # sign of det S' before repair
    branch_notes: tuple = ()


@dataclass(frozen=True)
class CanonicalPair:
    sector: str
    params: dict
    witness: SL2Matrix
    trace: CanonTrace = field(default_factory=CanonTrace)

    def continuous(self):
        return tuple(self.params[k] for k in SECTOR_CONTINUOUS[self.sector])

    def discrete(self):
        return tuple(self.params[k] for k in SECTOR_DISCRETE[self.sector])


def apply_conjugation(p: CommutingPair, S: SL2Matrix) -> CommutingPair:
    return CommutingPair(conjugate(p.U1, S), conjugate(p.U2, S))


def _check_unit_interval(name, x):
    if not 0.0 < abs(x) < 1.0:
        raise ParamOutOfRange(f"{name} = {x!r} not in 0 < |{name}| < 1")


def _check_open_angle(name, x):
    if not (0.0 < x < _TWO_PI) or x == math.pi:
        raise ParamOutOfRange(f"{name} = {x!r} not in (0,pi) u (pi,2pi)")


def _check_sign(name, s):
    if s not in (1, -1):
        raise ParamOutOfRange(f"{name} = {s!r} not in {{+1, -1}}")


def _check_alpha(x):
    if not 0.0 < x < _TWO_PI or x in (math.pi / 2, math.pi, 3 * math.pi / 2):
        raise ParamOutOfRange(f"alpha = {x!r} outside its allowed range")


def _diag(x):
    return SL2Matrix(x, 0.0, 0.0, 1.0 / x)


def _scalar(eps):
    return SL2Matrix(float(eps), 0.0, 0.0, float(eps))


def _jordan(eps, off):
    return SL2Matrix(float(eps), float(off), 0.0, float(eps))


def reconstruct(sector: str, params: dict) -> CommutingPair:
    """The literal canonical matrices of the given sector and parameters."""
    p = params
    if sector in ("AA1", "AA2"):
        _check_unit_interval("lam", p["lam"])
        _check_unit_interval("mu", p["mu"])
        U2 = _diag(p["mu"]) if sector == "AA1" else _diag(1.0 / p["mu"])
        return CommutingPair(_diag(p["lam"]), U2)
    if sector == "AB":
        _check_unit_interval("lam", p["lam"])
        _check_sign("eps2", p["eps2"])
        return CommutingPair(_diag(p["lam"]), _scalar(p["eps2"]))
    if sector == "BA":
        _check_sign("eps1", p["eps1"])
        _check_unit_interval("mu", p["mu"])
        return CommutingPair(_scalar(p["eps1"]), _diag(p["mu"]))
    if sector == "BB":
        _check_sign("eps1", p["eps1"])
        _check_sign("eps2", p["eps2"])
        return CommutingPair(_scalar(p["eps1"]), _scalar(p["eps2"]))
    if sector == "BC":
        for k in ("eps1", "eps2", "eps4"):
            _check_sign(k, p[k])
        return CommutingPair(_scalar(p["eps1"]), _jordan(p["eps2"], p["eps4"]))
    if sector == "CB":
        for k in ("eps1", "eps2", "eps3"):
            _check_sign(k, p[k])
        return CommutingPair(_jordan(p["eps1"], p["eps3"]), _scalar(p["eps2"]))
    if sector == "BD":
        _check_sign("eps1", p["eps1"])
        _check_open_angle("phi", p["phi"])
        return CommutingPair(_scalar(p["eps1"]), rotation(p["phi"]))
    if sector == "DB":
        _check_open_angle("theta", p["theta"])
        _check_sign("eps2", p["eps2"])
        return CommutingPair(rotation(p["theta"]), _scalar(p["eps2"]))
    if sector == "CC":
        _check_sign("eps1", p["eps1"])
        _check_sign("eps2", p["eps2"])
        _check_alpha(p["alpha"])
        return CommutingPair(
            _jordan(p["eps1"], math.cos(p["alpha"])),
            _jordan(p["eps2"], math.sin(p["alpha"])),
        )
    if sector == "DD":
        _check_open_angle("theta", p["theta"])
        _check_open_angle("phi", p["phi"])
        return CommutingPair(rotation(p["theta"]), rotation(p["phi"]))
    raise ParamOutOfRange(f"unknown sector {sector!r}")


# ---------------------------------------------------------------------------
# constructive case handlers
# ---------------------------------------------------------------------------


def _columns(v, w) -> SL2Matrix:
    return SL2Matrix(v[0], w[0], v[1], w[1])


def _det2(v, w):
    return v[0] * w[1] - v[1] * w[0]


def _sl2_from_basis(v, w):
    """Rescale the second basis vector so the column matrix has det 1."""
    d = _det2(v, w)
    return _columns(v, (w[0] / d, w[1] / d))


def canon_AA(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    st1 = classify(p.U1, cfg)
    v, w = st1.directions  # small-|eigenvalue| direction first
    S = _sl2_from_basis(v, w)
    C1 = conjugate(p.U1, S)
    C2 = conjugate(p.U2, S)
    lam = C1.a
    mu_first = C2.a
    trace = CanonTrace(
        joint_eigendirections=(v, w),
        det_sprime_sign=1 if _det2(v, w) > 0 else -1,
    )
    if abs(mu_first) < 1.0:
        return CanonicalPair(
            "AA1", {"lam": lam, "mu": mu_first}, S,
            CanonTrace(trace.joint_eigendirections, None,
                       trace.det_sprime_sign, ("AA1",)),
        )
    return CanonicalPair(
        "AA2", {"lam": lam, "mu": C2.d}, S,
        CanonTrace(trace.joint_eigendirections, None,
                   trace.det_sprime_sign, ("AA2",)),
    )


def canon_scalar_partner(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    """Combos AB, BA, BB: the scalar side is conjugation-invariant."""
    t1 = classify(p.U1, cfg)
    t2 = classify(p.U2, cfg)
    if t1.tag == "B" and t2.tag == "B":
        return CanonicalPair(
            "BB", {"eps1": t1.eps, "eps2": t2.eps}, IDENTITY,
            CanonTrace(branch_notes=("BB trivial",)),
        )
    if t2.tag == "B":  # (A, B)
        v, w = t1.directions
        S = _sl2_from_basis(v, w)
        lam = conjugate(p.U1, S).a
        return CanonicalPair(
            "AB", {"lam": lam, "eps2": t2.eps}, S,
            CanonTrace((v, w), None, 1 if _det2(v, w) > 0 else -1, ("AB",)),
        )
    # (B, A)
    v, w = t2.directions
    S = _sl2_from_basis(v, w)
    mu = conjugate(p.U2, S).a
    return CanonicalPair(
        "BA", {"eps1": t1.eps, "mu": mu}, S,
        CanonTrace((v, w), None, 1 if _det2(v, w) > 0 else -1, ("BA",)),
    )


def _parabolic_basis(U: SL2Matrix, eps):
    """Columns v1, w with U v1 = eps v1 and U w = v1 + eps w."""
    na, nb = U.a - eps, U.b
    nc, nd = U.c, U.d - eps
    # pick the standard basis vector whose image under the nilpotent part
    # is larger; this yields the identity witness on canonical input
    n1 = math.hypot(na, nc)
    n2 = math.hypot(nb, nd)
    if n2 >= n1:
        w = (0.0, 1.0)
        v1 = (nb, nd)
    else:
        w = (1.0, 0.0)
        v1 = (na, nc)
    return v1, w


def canon_BC_CB(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    t1 = classify(p.U1, cfg)
    t2 = classify(p.U2, cfg)
    bc = t1.tag == "B"  # else CB
    Uc = p.U2 if bc else p.U1
    eps_c = (t2 if bc else t1).eps
    v1, w = _parabolic_basis(Uc, eps_c)
    d = _det2(v1, w)
    sgn = 1 if d > 0 else -1
    if sgn > 0:
        r = 1.0 / math.sqrt(d)
        S = _columns((v1[0] * r, v1[1] * r), (w[0] * r, w[1] * r))
        off = 1
    else:
        r = 1.0 / math.sqrt(-d)
        # repair with diag(-1, 1); the off-diagonal sign flips and the two
        # signs are not related by any unit-determinant conjugation
        S = _columns((-v1[0] * r, -v1[1] * r), (w[0] * r, w[1] * r))
        off = -1
    trace = CanonTrace((v1,), None, sgn, ("BC" if bc else "CB",))
    if bc:
        params = {"eps1": t1.eps, "eps2": eps_c, "eps4": off}
        return CanonicalPair("BC", params, S, trace)
    params = {"eps1": eps_c, "eps2": t2.eps, "eps3": off}
    return CanonicalPair("CB", params, S, trace)


def _elliptic_eigenvector(U: SL2Matrix):
    """Complex eigenvector for the eigenvalue with positive imaginary part."""
    t = max(-1.0, min(1.0, U.trace() / 2.0))
    ev = complex(t, math.sqrt(max(0.0, 1.0 - t * t)))
    r1 = (complex(U.b), ev - U.a)
    r2 = (ev - U.d, complex(U.c))
    u = r1 if abs(U.b) >= abs(U.c) else r2
    return u, ev


def _real_rotation_basis(U: SL2Matrix):
    """Real basis turning an elliptic matrix into rotation form, plus the
    sign of the raw basis determinant before the orientation repair."""
    u, _ = _elliptic_eigenvector(U)
    v1 = (2.0 * u[0].real, 2.0 * u[1].real)
    v2 = (2.0 * u[0].imag, 2.0 * u[1].imag)
    d = _det2(v1, v2)
    sgn = 1 if d > 0 else -1
    if sgn < 0:
        # flipping the first basis vector applies angle -> 2*pi - angle
        v1 = (-v1[0], -v1[1])
        d = -d
    r = 1.0 / math.sqrt(d)
    S = _columns((v1[0] * r, v1[1] * r), (v2[0] * r, v2[1] * r))
    return S, sgn, u


def _rotation_angle(C: SL2Matrix) -> float:
    ang = math.atan2(C.c, C.a)
    return ang if ang > 0 else ang + _TWO_PI


def canon_BD_DB(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    t1 = classify(p.U1, cfg)
    t2 = classify(p.U2, cfg)
    bd = t1.tag == "B"  # else DB
    Ud = p.U2 if bd else p.U1
    S, sgn, u = _real_rotation_basis(Ud)
    ang = _rotation_angle(conjugate(Ud, S))
    trace = CanonTrace((), None, sgn, ("BD" if bd else "DB",))
    if bd:
        return CanonicalPair("BD", {"eps1": t1.eps, "phi": ang}, S, trace)
    return CanonicalPair("DB", {"theta": ang, "eps2": t2.eps}, S, trace)


def canon_DD(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    # joint eigenvector computed from U1 alone, validated against U2
    S, sgn, u = _real_rotation_basis(p.U1)
    i = 0 if abs(u[0]) >= abs(u[1]) else 1
    im = (
        p.U2.a * u[0] + p.U2.b * u[1],
        p.U2.c * u[0] + p.U2.d * u[1],
    )
    mu = im[i] / u[i]
    resid = max(abs(im[0] - mu * u[0]), abs(im[1] - mu * u[1]))
    if resid > 10.0 * cfg.class_tol * max(1.0, abs(u[0]), abs(u[1])):
        raise SL2TorusError(
            f"joint eigenvector validation failed, residual {resid:.3e}"
        )
    theta = _rotation_angle(conjugate(p.U1, S))
    phi = _rotation_angle(conjugate(p.U2, S))
    return CanonicalPair(
        "DD", {"theta": theta, "phi": phi}, S,
        CanonTrace((), None, sgn, ("DD",)),
    )


def canon_CC(p: CommutingPair, cfg: ToleranceConfig) -> CanonicalPair:
    t1 = classify(p.U1, cfg)
    t2 = classify(p.U2, cfg)
    v1, w = _parabolic_basis(p.U1, t1.eps)
    d = _det2(v1, w)
    sgn = 1 if d > 0 else -1
    # U2 w - eps2 w = c * v1 for some c != 0
    rw = (
        p.U2.a * w[0] + p.U2.b * w[1] - t2.eps * w[0],
        p.U2.c * w[0] + p.U2.d * w[1] - t2.eps * w[1],
    )
    nv = v1[0] * v1[0] + v1[1] * v1[1]
    c = (rw[0] * v1[0] + rw[1] * v1[1]) / nv
    if abs(c) <= cfg.param_tol:
        raise DegenerateCC(f"coupling scalar {c!r} vanishes within tolerance")
    base = math.atan(c)  # in (-pi/2, pi/2), cos > 0
    if sgn > 0:
        alpha = base if base > 0 else base + _TWO_PI
    else:
        alpha = base + math.pi
    cos_a = math.cos(alpha)
    v1t = (v1[0] / cos_a, v1[1] / cos_a)
    dt = _det2(v1t, w)  # = d / cos(alpha) > 0
    r = 1.0 / math.sqrt(dt)
    S = _columns((v1t[0] * r, v1t[1] * r), (w[0] * r, w[1] * r))
    return CanonicalPair(
        "CC",
        {"eps1": t1.eps, "eps2": t2.eps, "alpha": alpha},
        S,
        CanonTrace((v1,), c, sgn, ("CC",)),
    )


_DISPATCH = {
    ("A", "A"): canon_AA,
    ("A", "B"): canon_scalar_partner,
    ("B", "A"): canon_scalar_partner,
    ("B", "B"): canon_scalar_partner,
    ("B", "C"): canon_BC_CB,
    ("C", "B"): canon_BC_CB,
    ("B", "D"): canon_BD_DB,
    ("D", "B"): canon_BD_DB,
    ("C", "C"): canon_CC,
    ("D", "D"): canon_DD,
}


def canonicalize(p: CommutingPair, cfg: ToleranceConfig = DEFAULT_TOL) -> CanonicalPair:
    combo = coarse_combo(p, cfg)
    result = _DISPATCH[combo](p, cfg)
    # witness validity check: conjugating the input by the witness must
    # reproduce the reconstructed canonical matrices
    target = reconstruct(result.sector, result.params)
    got = apply_conjugation(p, result.witness)
    err = max(
        got.U1.max_abs_diff(target.U1),
        got.U2.max_abs_diff(target.U2),
    )
    if err > 10.0 * cfg.param_tol * _scale(p):
        raise SL2TorusError(
            f"internal witness validation failed ({result.sector}, err {err:.3e})"
        )
    return result


def _scale(p: CommutingPair):
    return max(
        1.0,
        abs(p.U1.a), abs(p.U1.b), abs(p.U1.c), abs(p.U1.d),
        abs(p.U2.a), abs(p.U2.b), abs(p.U2.c), abs(p.U2.d),
    )


def equivalent(
    p: CommutingPair, q: CommutingPair, cfg: ToleranceConfig = DEFAULT_TOL
) -> bool:
    cp = canonicalize(p, cfg)
    cq = canonicalize(q, cfg)
    if cp.sector != cq.sector or cp.discrete() != cq.discrete():
        return False
    return all(
        abs(x - y) <= cfg.param_tol for x, y in zip(cp.continuous(), cq.continuous())
    )
