#!/usr/bin/env python3
"""Render every figure (SVG + CSV) into an output directory."""

import argparse
import pathlib

from sl2torus.figures import FIGURES, figure_rows, rows_to_csv, rows_to_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="figures", help="output directory")
    ap.add_argument("--resolution", type=int, default=24,
                    help="samples per axis for sheets/arcs")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for figure in FIGURES:
        rows = figure_rows(figure, args.resolution)
        (outdir / f"{figure}.csv").write_text(rows_to_csv(rows))
        (outdir / f"{figure}.svg").write_text(rows_to_svg(rows))
        print(f"{figure}: {len(rows)} rows -> {outdir}/{figure}.{{csv,svg}}")


if __name__ == "__main__":
    main()
