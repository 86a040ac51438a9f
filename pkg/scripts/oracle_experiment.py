#!/usr/bin/env python3
"""Residual-separation experiment for the numerical conjugator search.

For each sector, plants pairs that are equivalent (same canonical point,
random conjugation) and pairs that are distinct (different canonical point
in the same sector), runs the search on both, and prints the residual
statistics.  The two regimes should be separated by several orders of
magnitude."""

import argparse
import math
import random

from sl2torus import (
    apply_conjugation,
    make_pair,
    reconstruct,
    search_conjugator,
)
from sl2torus.atlas import random_sl2, sample_params
from sl2torus.canonical import SECTOR_DISCRETE, SECTORS


def distinct_params(sector, params, rng):
    out = dict(params)
    discrete = SECTOR_DISCRETE[sector]
    if discrete:
        k = rng.choice(discrete)
        out[k] = -out[k]
    else:
        k = next(iter(k for k in out if not isinstance(out[k], int)))
        v = out[k]
        if sector.startswith("AA"):
            out[k] = math.copysign(abs(v) * 0.4 + 0.03, v)
        else:
            lo = 0.0 if v < math.pi else math.pi
            out[k] = lo + math.pi * (0.8 if v - lo < math.pi / 2 else 0.2)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-sector", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'sector':6s} {'kind':9s} {'min':>10s} {'max':>10s} {'conv':>5s}")
    for sector in SECTORS:
        for kind in ("equiv", "distinct"):
            residuals, conv = [], 0
            for i in range(args.per_sector):
                rng = random.Random((args.seed, sector, kind, i).__hash__())
                params = sample_params(sector, rng)
                p = reconstruct(sector, params)
                if kind == "equiv":
                    q0 = apply_conjugation(p, random_sl2(rng))
                else:
                    q0 = apply_conjugation(
                        reconstruct(sector, distinct_params(sector, params, rng)),
                        random_sl2(rng))
                rep = search_conjugator(p, make_pair(q0.U1, q0.U2), seed=i)
                residuals.append(rep.residual)
                conv += rep.converged
            print(f"{sector:6s} {kind:9s} {min(residuals):10.2e} "
                  f"{max(residuals):10.2e} {conv:3d}/{args.per_sector}")


if __name__ == "__main__":
    main()
