"""Structural renderings of the moduli-space depiction: sample-point rows
for CSV emission and a fixed-camera orthographic SVG."""

from __future__ import annotations

import math

from . import constants as K
from .atlas import (
    ALPHA_COMPONENTS,
    ANGLE_COMPONENTS,
    _SIGN_CHAR,
    _SIGNS,
    _lbl,
    bb_label,
    embed,
)
from .canonical import CanonicalPair, CanonTrace
from .sl2 import IDENTITY

FIGURES = ("ab", "bc", "bd", "overall")

PI = math.pi


def _point(kind, component, circle, sector, params):
    ep = embed(CanonicalPair(sector, params, IDENTITY, CanonTrace()))
    return {
        "kind": kind,
        "component": component,
        "circle": circle,
        "sector": sector,
        "params": ";".join(f"{k}={v!r}" for k, v in sorted(params.items())),
        "x": ep.x,
        "y": ep.y,
        "z": ep.z,
    }


def _interior(n):
    """n strictly interior samples of (0, 1)."""
    return [(i + 0.5) / n for i in range(n)]


def _angle_samples(comp, n):
    lo, hi = comp
    return [lo + t * (hi - lo) for t in _interior(n)]


def _ab_rows(n):
    rows = []
    for sector, side in (("AA1", "sheet-AA1"), ("AA2", "sheet-AA2")):
        for s1 in _SIGNS:
            for s2 in _SIGNS:
                for lam in (s1 * t for t in _interior(n)):
                    for mu in (s2 * t for t in _interior(n)):
                        rows.append(_point("sheet", side, "", sector,
                                           {"lam": lam, "mu": mu}))
    for e in _SIGNS:
        for s in _SIGNS:
            comp = 0 if s < 0 else 1
            ab = _lbl("AB", _SIGN_CHAR[e], f"lam{comp}")
            ba = _lbl("BA", _SIGN_CHAR[e], f"mu{comp}")
            for t in _interior(n):
                rows.append(_point("edge", ab, "", "AB",
                                   {"lam": s * t, "eps2": e}))
                rows.append(_point("edge", ba, "", "BA",
                                   {"eps1": e, "mu": s * t}))
    for e1 in _SIGNS:
        for e2 in _SIGNS:
            rows.append(_point("vertex", bb_label(e1, e2), "", "BB",
                               {"eps1": e1, "eps2": e2}))
    return rows


def _bc_rows(n):
    rows = []
    for e1 in _SIGNS:
        for e2 in _SIGNS:
            circle = f"circle:{_SIGN_CHAR[e1]}{_SIGN_CHAR[e2]}"
            for k, comp in enumerate(ALPHA_COMPONENTS):
                label = _lbl("CC", _SIGN_CHAR[e1], _SIGN_CHAR[e2], f"arc{k}")
                for alpha in _angle_samples(comp, n):
                    rows.append(_point("arc", label, circle, "CC",
                                       {"eps1": e1, "eps2": e2,
                                        "alpha": alpha}))
            for e4 in _SIGNS:
                rows.append(_point(
                    "point",
                    _lbl("BC", _SIGN_CHAR[e1], _SIGN_CHAR[e2], _SIGN_CHAR[e4]),
                    circle, "BC", {"eps1": e1, "eps2": e2, "eps4": e4}))
            for e3 in _SIGNS:
                rows.append(_point(
                    "point",
                    _lbl("CB", _SIGN_CHAR[e1], _SIGN_CHAR[e2], _SIGN_CHAR[e3]),
                    circle, "CB", {"eps1": e1, "eps2": e2, "eps3": e3}))
    return rows


def _bd_rows(n):
    rows = []
    for c1, tc in enumerate(ANGLE_COMPONENTS):
        for c2, pc in enumerate(ANGLE_COMPONENTS):
            label = _lbl("DD", f"theta{c1}", f"phi{c2}")
            for theta in _angle_samples(tc, n):
                for phi in _angle_samples(pc, n):
                    rows.append(_point("patch", label, "", "DD",
                                       {"theta": theta, "phi": phi}))
    for e in _SIGNS:
        for comp, pc in enumerate(ANGLE_COMPONENTS):
            bd = _lbl("BD", _SIGN_CHAR[e], f"phi{comp}")
            db = _lbl("DB", f"theta{comp}", _SIGN_CHAR[e])
            for ang in _angle_samples(pc, n):
                rows.append(_point("arc", bd, "", "BD",
                                   {"eps1": e, "phi": ang}))
                rows.append(_point("arc", db, "", "DB",
                                   {"theta": ang, "eps2": e}))
    for e1 in _SIGNS:
        for e2 in _SIGNS:
            rows.append(_point("vertex", bb_label(e1, e2), "", "BB",
                               {"eps1": e1, "eps2": e2}))
    return rows


def figure_rows(figure: str, resolution: int = 12):
    if figure == "ab":
        rows = _ab_rows(resolution)
    elif figure == "bc":
        rows = _bc_rows(resolution)
    elif figure == "bd":
        rows = _bd_rows(resolution)
    elif figure == "overall":
        rows = _ab_rows(resolution) + _bc_rows(resolution) + _bd_rows(resolution)
    else:
        raise ValueError(f"unknown figure {figure!r}")
    for r in rows:
        r["figure"] = figure
    return rows


CSV_HEADER = "figure,kind,component,circle,sector,params,x,y,z"


def rows_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f'{r["figure"]},{r["kind"]},{r["component"]},{r["circle"]},'
            f'{r["sector"]},"{r["params"]}",{r["x"]!r},{r["y"]!r},{r["z"]!r}'
        )
    return "\n".join(lines) + "\n"


def _project(x, y, z):
    u = K.CAMERA_U[0] * x + K.CAMERA_U[1] * y + K.CAMERA_U[2] * z
    v = K.CAMERA_V[0] * x + K.CAMERA_V[1] * y + K.CAMERA_V[2] * z
    return u, v


_KIND_STYLE = {
    "sheet": ('fill="#9ecae1"', 1.2),
    "patch": ('fill="#a1d99b"', 1.2),
    "edge": ('fill="#3182bd"', 2.0),
    "arc": ('fill="#e6550d"', 2.0),
    "point": ('fill="#756bb1"', 3.0),
    "vertex": ('fill="#000000"', 4.0),
}


def rows_to_svg(rows, width: int = 800, height: int = 600) -> str:
    pts = [(_project(r["x"], r["y"], r["z"]), r["kind"]) for r in rows]
    us = [p[0][0] for p in pts]
    vs = [p[0][1] for p in pts]
    umin, umax = min(us), max(us)
    vmin, vmax = min(vs), max(vs)
    span_u = (umax - umin) or 1.0
    span_v = (vmax - vmin) or 1.0
    scale = min((width - 40) / span_u, (height - 40) / span_v)

    def to_px(u, v):
        return (20 + (u - umin) * scale, 20 + (v - vmin) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for (u, v), kind in pts:
        style, radius = _KIND_STYLE[kind]
        px, py = to_px(u, v)
        parts.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{radius}" {style}/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
