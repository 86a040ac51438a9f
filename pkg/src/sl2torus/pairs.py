"""Commuting ordered pairs and their coarse type combinations."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForbiddenCombo, NotCommuting
from .sl2 import DEFAULT_TOL, SL2Matrix, ToleranceConfig, classify, commutator_norm

# Coarse combinations that can occur for commuting pairs: matching non-B
# types, or anything paired with a scalar.
ALLOWED_COMBOS = frozenset(
    {("A", "A"), ("C", "C"), ("D", "D")}
    | {("B", t) for t in "ABCD"}
    | {(t, "B") for t in "ABCD"}
)


@dataclass(frozen=True)
class CommutingPair:
    U1: SL2Matrix
    U2: SL2Matrix


def make_pair(
    U1: SL2Matrix, U2: SL2Matrix, cfg: ToleranceConfig = DEFAULT_TOL
) -> CommutingPair:
    norm = commutator_norm(U1, U2)
    if norm > cfg.comm_tol:
        raise NotCommuting(norm)
    return CommutingPair(U1, U2)


def allowed_combination(t1: str, t2: str) -> bool:
    return (t1, t2) in ALLOWED_COMBOS


def coarse_combo(p: CommutingPair, cfg: ToleranceConfig = DEFAULT_TOL):
    combo = (classify(p.U1, cfg).tag, classify(p.U2, cfg).tag)
    if not allowed_combination(*combo):
        # cannot happen for exactly commuting pairs; fail loudly
        raise ForbiddenCombo(combo)
    return combo
