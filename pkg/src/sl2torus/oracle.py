"""Construction-free verification tools: a direct numerical search for a
conjugator between two pairs, and exact-rational classification for
boundary cases."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from scipy.optimize import minimize as scipy_minimize

from .errors import DeterminantError
from .pairs import CommutingPair
from .sl2 import SL2Matrix, SpectralType

CONVERGENCE_THRESHOLD = 1e-8
DISTINCT_FLOOR = 1e-3  # empirical separation, not a mathematical claim


def sl2_from_coords(omega: float, s: float, x: float) -> SL2Matrix:
    """Rotation * positive diagonal scaling * unit upper shear; covers the
    whole group (Iwasawa-style product)."""
    co, si = math.cos(omega), math.sin(omega)
    es = math.exp(s)
    ei = 1.0 / es
    # R(omega) @ diag(es, ei) @ [[1, x], [0, 1]]
    return SL2Matrix(
        co * es, co * es * x - si * ei,
        si * es, si * es * x + co * ei,
    )


@dataclass(frozen=True)
class ConjugatorSearchReport:
    best_S: SL2Matrix
    residual: float
    iterations: int
    converged: bool


def _residual(coords, p: CommutingPair, q: CommutingPair) -> float:
    S = sl2_from_coords(*coords)
    Si = S.inv()
    r = 0.0
    for U, V in ((p.U1, q.U1), (p.U2, q.U2)):
        M = Si @ U @ S
        r = max(
            r,
            abs(M.a - V.a), abs(M.b - V.b),
            abs(M.c - V.c), abs(M.d - V.d),
        )
    return r


def _minimize(f, x0, max_evals, xatol, fatol):
    res = scipy_minimize(
        f, x0, method="Nelder-Mead",
        options={"maxfev": max_evals, "xatol": xatol, "fatol": fatol},
    )
    return list(res.x), float(res.fun), int(res.nfev)


def search_conjugator(
    p: CommutingPair,
    q: CommutingPair,
    budget: int = 200_000,
    starts: int = 100,
    seed: int = 0,
) -> ConjugatorSearchReport:
    """Multi-start derivative-free (simplex) minimization of the conjugation
    residual over the three-parameter group coordinates.  Non-convergence is
    data, not an error."""
    rng = random.Random(seed)
    start_points = []
    for i in range(8):
        for s in (-1.0, 0.0, 1.0):
            for x in (-1.5, 0.0, 1.5):
                start_points.append((i * math.pi / 4.0, s, x))
    while len(start_points) < starts:
        start_points.append(
            (rng.uniform(0.0, 2 * math.pi), rng.uniform(-2, 2), rng.uniform(-3, 3))
        )
    start_points = start_points[:starts]

    f = lambda c: _residual(c, p, q)
    total = 0
    best = None
    best_r = math.inf
    # coarse pass over every start, then polish the most promising ones
    coarse = []
    per_start = max(60, budget // (4 * starts))
    for x0 in start_points:
        x, fx, ev = _minimize(f, x0, per_start, 1e-6, 1e-12)
        total += ev
        coarse.append((fx, x))
        if fx < best_r:
            best_r, best = fx, x
        if best_r <= CONVERGENCE_THRESHOLD:
            break
    if best_r > CONVERGENCE_THRESHOLD:
        coarse.sort(key=lambda t: t[0])
        for fx, x in coarse[:5]:
            if total >= budget:
                break
            x, fx, ev = _minimize(
                f, x, min(5000, budget - total), 1e-15, 1e-16
            )
            total += ev
            if fx < best_r:
                best_r, best = fx, x
            if best_r <= CONVERGENCE_THRESHOLD:
                break
    return ConjugatorSearchReport(
        best_S=sl2_from_coords(*best),
        residual=best_r,
        iterations=total,
        converged=best_r <= CONVERGENCE_THRESHOLD,
    )


# ---------------------------------------------------------------------------
# exact-rational classification
# ---------------------------------------------------------------------------


def exact_classify(a, b, c, d) -> SpectralType:
    """Classification with exact rational arithmetic; the only decidable way
    to separate the scalar and parabolic cases on the |tr| = 2 boundary."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    det = a * d - b * c
    if det != 1:
        raise DeterminantError(det)
    t = a + d
    disc = t * t - 4
    if disc > 0:
        ft = float(t)
        root = math.sqrt(float(disc))
        sgn = 1.0 if ft > 0 else -1.0
        lam = (ft - sgn * root) / 2.0
        U = SL2Matrix(float(a), float(b), float(c), float(d))
        from .sl2 import _real_eigendirection  # float eigendirections

        return SpectralType(
            "A",
            lam=lam,
            directions=(
                _real_eigendirection(U, lam),
                _real_eigendirection(U, (ft + sgn * root) / 2.0),
            ),
        )
    if disc < 0:
        theta = math.acos(float(t) / 2.0)
        if c - b < 0:
            theta = 2.0 * math.pi - theta
        return SpectralType("D", theta=theta)
    eps = 1 if t == 2 else -1
    if a == eps and d == eps and b == 0 and c == 0:
        return SpectralType("B", eps=eps)
    from .sl2 import _parabolic_direction

    U = SL2Matrix(float(a), float(b), float(c), float(d))
    return SpectralType(
        "C", eps=eps, directions=(_parabolic_direction(U, eps),)
    )
