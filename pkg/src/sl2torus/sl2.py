"""Core 2x2 unit-determinant matrix arithmetic and single-matrix spectral
classification.

A matrix is hyperbolic (two real eigenvalues lambda, 1/lambda), scalar
(plus or minus the identity), parabolic non-scalar (single eigendirection
with eigenvalue +-1), or elliptic (no real eigenvalues, rotation-like).
These are the tags A, B, C, D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    ClassificationAmbiguous,
    DeterminantError,
    NoRealEigenvalues,
)

# Scalar-deviation band: below class_tol we call a near-scalar matrix B,
# above AMBIG_FACTOR*class_tol we call it C, in between we refuse.
AMBIG_FACTOR = 10.0


@dataclass(frozen=True)
class ToleranceConfig:
    det_tol: float = 1e-9
    class_tol: float = 1e-9
    comm_tol: float = 1e-9
    param_tol: float = 1e-8

    def __post_init__(self):
        for name in ("det_tol", "class_tol", "comm_tol", "param_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class SL2Matrix:
    """Row-major 2x2 real matrix; construction via make_sl2 enforces det = 1."""

    a: float
    b: float
    c: float
    d: float

    def trace(self) -> float:
        return self.a + self.d

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def inv(self) -> "SL2Matrix":
        # adjugate; valid because det = 1
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, o: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def entries(self):
        return [[self.a, self.b], [self.c, self.d]]

    def max_abs_diff(self, o: "SL2Matrix") -> float:
        return max(
            abs(self.a - o.a), abs(self.b - o.b),
            abs(self.c - o.c), abs(self.d - o.d),
        )


IDENTITY = SL2Matrix(1.0, 0.0, 0.0, 1.0)


def rotation(angle: float) -> SL2Matrix:
    co, si = math.cos(angle), math.sin(angle)
    return SL2Matrix(co, -si, si, co)


def conjugate(U: SL2Matrix, S: SL2Matrix) -> SL2Matrix:
    """S^{-1} U S."""
    return S.inv() @ U @ S


def commutator_norm(U1: SL2Matrix, U2: SL2Matrix) -> float:
    return (U1 @ U2).max_abs_diff(U2 @ U1)


def make_sl2(a, b, c, d, cfg: ToleranceConfig = DEFAULT_TOL) -> SL2Matrix:
    """Validating constructor; rejects (never renormalizes) non-unit det."""
    det = a * d - b * c
    if abs(det - 1.0) > cfg.det_tol:
        raise DeterminantError(det)
    return SL2Matrix(float(a), float(b), float(c), float(d))


def _normalize_direction(v):
    n = math.hypot(v[0], v[1])
    if n == 0.0:
        raise ValueError("zero eigendirection")
    x, y = v[0] / n, v[1] / n
    # sign convention: first nonzero component positive
    if x < 0 or (abs(x) < 1e-14 and y < 0):
        x, y = -x, -y
    return (x, y)


def _real_eigendirection(U: SL2Matrix, lam: float):
    """Unit kernel vector of U - lam*I, sign-normalized."""
    r1 = (U.a - lam, U.b)
    r2 = (U.c, U.d - lam)
    row = r1 if math.hypot(*r1) >= math.hypot(*r2) else r2
    return _normalize_direction((row[1], -row[0]))


def _parabolic_direction(U: SL2Matrix, eps: float):
    """Eigendirection of a non-scalar parabolic matrix: any nonzero column
    of the nilpotent part U - eps*I lies in its kernel."""
    c1 = (U.a - eps, U.c)
    c2 = (U.b, U.d - eps)
    col = c1 if math.hypot(*c1) >= math.hypot(*c2) else c2
    return _normalize_direction(col)


@dataclass(frozen=True)
class SpectralType:
    tag: str  # "A" | "B" | "C" | "D"
    lam: float | None = None       # A: signed eigenvalue, 0 < |lam| < 1
    eps: int | None = None         # B, C: +-1
    theta: float | None = None     # D: angle in (0,pi) u (pi,2pi)
    directions: tuple = field(default=())  # A: two (small-|ev| first); C: one

    def continuous_datum(self):
        return self.lam if self.tag == "A" else self.theta


def classify(U: SL2Matrix, cfg: ToleranceConfig = DEFAULT_TOL) -> SpectralType:
    t = U.trace()
    if abs(t) > 2.0 + cfg.class_tol:
        disc = math.sqrt(t * t - 4.0)
        sgn = 1.0 if t > 0 else -1.0
        lam = (t - sgn * disc) / 2.0       # the member with |lam| < 1
        lam_inv = (t + sgn * disc) / 2.0
        v_small = _real_eigendirection(U, lam)
        v_big = _real_eigendirection(U, lam_inv)
        return SpectralType("A", lam=lam, directions=(v_small, v_big))
    if abs(abs(t) - 2.0) <= cfg.class_tol:
        eps = 1 if t > 0 else -1
        dev = max(abs(U.a - eps), abs(U.b), abs(U.c), abs(U.d - eps))
        if dev <= cfg.class_tol:
            return SpectralType("B", eps=eps)
        if dev < AMBIG_FACTOR * cfg.class_tol:
            raise ClassificationAmbiguous(
                f"scalar deviation {dev:.3e} in the unresolved band"
            )
        return SpectralType(
            "C", eps=eps, directions=(_parabolic_direction(U, eps),)
        )
    # elliptic
    theta = math.acos(max(-1.0, min(1.0, t / 2.0)))
    if U.c - U.b < 0:
        theta = 2.0 * math.pi - theta
    return SpectralType("D", theta=theta)


def trace_class(U: SL2Matrix, cfg: ToleranceConfig = DEFAULT_TOL) -> str:
    """Coarse partition by trace alone: hyperbolic / parabolic / elliptic."""
    t = abs(U.trace())
    if t > 2.0 + cfg.class_tol:
        return "hyperbolic"
    if t >= 2.0 - cfg.class_tol:
        return "parabolic"
    return "elliptic"


@dataclass(frozen=True)
class EigenDatum:
    value: float
    direction: tuple
    full_plane: bool = False


def eigen_data(U: SL2Matrix, cfg: ToleranceConfig = DEFAULT_TOL):
    """Real eigenvalue/eigendirection list; small-modulus eigenvalue first."""
    st = classify(U, cfg)
    if st.tag == "D":
        raise NoRealEigenvalues("elliptic matrix has no real eigenvalues")
    if st.tag == "A":
        return [
            EigenDatum(st.lam, st.directions[0]),
            EigenDatum(1.0 / st.lam, st.directions[1]),
        ]
    if st.tag == "C":
        return [EigenDatum(float(st.eps), st.directions[0])]
    return [EigenDatum(float(st.eps), (1.0, 0.0), full_plane=True)]
