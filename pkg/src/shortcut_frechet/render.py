"""Deterministic SVG pictures for debugging.

Two panels side by side: the plane (curves, the ``delta`` neighbourhood of
``T``, buffer zones and a witness shortcut curve) and the free-space diagram
(sampled free space, reachable gates).  Nothing here feeds back into the
deciders.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .geom import PolygonalCurve

__all__ = ["render_svg"]

PANEL = 480.0
PAD = 20.0


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """World-to-panel affine map with y pointing up."""

    def __init__(self, xs, ys, x_off: float):
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, 1e-9)
        self.k = (PANEL - 2 * PAD) / span
        self.x0, self.y1, self.off = x0, y1, x_off

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return self.off + PAD + (x - self.x0) * self.k, PAD + (self.y1 - y) * self.k


def _path(fr: _Frame, pts) -> str:
    return " ".join(("M" if k == 0 else "L") + f"{_f(fr(*p)[0])},{_f(fr(*p)[1])}" for k, p in enumerate(pts))


def _free_rows(T: PolygonalCurve, B: PolygonalCurve, delta: float, grid: int):
    """Runs of free samples, one list per sample row: ``(row, col_start, col_end)``."""
    n1, n2 = T.n_edges, B.n_edges
    W, H = n1 * grid, n2 * grid
    tp = [T.at_grid((c + 0.5) / grid) for c in range(W)]
    d2 = delta * delta
    out = []
    for r in range(H):
        q = B.at_grid((r + 0.5) / grid)
        start = None
        for c in range(W + 1):
            free = c < W and (tp[c][0] - q[0]) ** 2 + (tp[c][1] - q[1]) ** 2 <= d2
            if free and start is None:
                start = c
            elif not free and start is not None:
                out.append((r, start, c))
                start = None
    return out


def render_svg(
    T: PolygonalCurve,
    B: PolygonalCurve,
    delta: Optional[float] = None,
    witness: Optional[PolygonalCurve] = None,
    zones: Sequence = (),
    gates: Optional[dict] = None,
    grid: int = 64,
    free_space: bool = True,
) -> str:
    """SVG text.  ``zones`` are ``(x0, x1, y0, y1)`` rectangles, ``gates`` maps
    cells to :class:`~shortcut_frechet.freespace.ReachSet`."""
    if grid < 1:
        raise ValueError("grid must be positive")
    show_fs = free_space and delta is not None
    width = 2 * PANEL if show_fs else PANEL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(PANEL)}" viewBox="0 0 {_f(width)} {_f(PANEL)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    xs = [p[0] for p in T] + [p[0] for p in B]
    ys = [p[1] for p in T] + [p[1] for p in B]
    if delta:
        xs += [min(xs) - delta, max(xs) + delta]
        ys += [min(ys) - delta, max(ys) + delta]
    fr = _Frame(xs, ys, 0.0)

    out.append('<g id="plane">')
    if delta:
        # a round-capped stroke of width 2 delta is exactly the hippodrome union
        out.append(
            f'<path d="{_path(fr, T)}" fill="none" stroke="#cfe3ff" stroke-width="{_f(2 * delta * fr.k)}" '
            'stroke-linecap="round" stroke-linejoin="round"/>'
        )
    for x0, x1, y0, y1 in zones:
        (ax, ay), (bx, by) = fr(float(x0), float(y1)), fr(float(x1), float(y0))
        out.append(f'<rect x="{_f(ax)}" y="{_f(ay)}" width="{_f(bx - ax)}" height="{_f(by - ay)}" fill="#ffe9c7" stroke="#e0a040" stroke-width="0.5"/>')
    out.append(f'<path d="{_path(fr, T)}" fill="none" stroke="#1f4fbf" stroke-width="1.5"/>')
    out.append(f'<path d="{_path(fr, B)}" fill="none" stroke="#444" stroke-width="1"/>')
    if witness is not None:
        out.append(f'<path d="{_path(fr, witness)}" fill="none" stroke="#d03030" stroke-width="1.5" stroke-dasharray="4 2"/>')
    for p in (T[0], B[0]):
        x, y = fr(*p)
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="black"/>')
    out.append("</g>")

    if show_fs:
        n1, n2 = T.n_edges, B.n_edges
        fs = _Frame([0, n1], [0, n2], PANEL)
        cw = fs.k / grid
        out.append('<g id="free-space">')
        for r, c0, c1 in _free_rows(T, B, delta, grid):
            x, y = fs(c0 / grid, (r + 1) / grid)
            out.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f((c1 - c0) * cw)}" height="{_f(cw)}" fill="#9fd89f"/>')
        for i in range(n1 + 1):
            (x, y0), (_, y1) = fs(i, 0), fs(i, n2)
            out.append(f'<line x1="{_f(x)}" y1="{_f(y0)}" x2="{_f(x)}" y2="{_f(y1)}" stroke="#888" stroke-width="0.5"/>')
        for j in range(n2 + 1):
            (x0, y), (x1, _) = fs(0, j), fs(n1, j)
            out.append(f'<line x1="{_f(x0)}" y1="{_f(y)}" x2="{_f(x1)}" y2="{_f(y)}" stroke="#888" stroke-width="0.5"/>')
        for (i, j), rs in sorted((gates or {}).items()):
            for g, col in ((rs.gate_left, "#2060d0"), (rs.gate_right, "#d06020")):
                if g is not None:
                    x, y = fs(i + g.x, j + g.y)
                    out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2" fill="{col}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
