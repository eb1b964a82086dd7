"""Plot artifacts: marching-squares contours, sampled polylines, SVG and CSV."""
from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

import numpy as np
from scipy.optimize import minimize

from .parametric import ParametricCurve
from .poly2 import BivariatePoly, evaluate

DEFAULT_GRID = 512
MIN_GRID = 16
_EPS = np.finfo(float).eps

BBox = tuple[float, float, float, float]


def check_bbox(bbox) -> BBox:
    xmin, xmax, ymin, ymax = (float(v) for v in bbox)
    if not (np.isfinite([xmin, xmax, ymin, ymax]).all() and xmin < xmax and ymin < ymax):
        raise ValueError(f"degenerate bounding box {bbox}")
    return xmin, xmax, ymin, ymax


def _abs_bound(p: BivariatePoly, ax, ay):
    """``sum |c_ij| ax^i ay^j``: bounds ``|p|`` on any box with ``|x|<=ax, |y|<=ay``."""
    out = np.zeros(np.broadcast(ax, ay).shape)
    for (i, j), c in p.terms.items():
        out = out + abs(float(c)) * ax**i * ay**j
    return out


@dataclass
class Rasterization:
    segments: np.ndarray  # (n, 2, 2)
    residuals: np.ndarray  # (n, 2): |p| at each endpoint
    bounds: np.ndarray  # (n, 2): interpolation bound for each endpoint
    markers: list = field(default_factory=list)  # exact (x, y) Fractions
    bbox: BBox = (-5.0, 5.0, -5.0, 5.0)
    grid: int = DEFAULT_GRID

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    def within_bounds(self) -> bool:
        return bool(np.all(self.residuals <= self.bounds))

    def vertices(self) -> np.ndarray:
        return self.segments.reshape(-1, 2)


def _crossings(f0, f1):
    """Edges whose endpoint values straddle zero, and the interpolation fraction."""
    hit = (f0 > 0) != (f1 > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(hit, f0 / (f0 - f1), 0.0)
    return hit, np.clip(t, 0.0, 1.0)


def rasterize_implicit(p: BivariatePoly, bbox=(-5.0, 5.0, -5.0, 5.0), grid: int = DEFAULT_GRID) -> Rasterization:
    """Contour of ``p = 0`` on a ``grid`` x ``grid`` cell lattice.

    Saddle cells are split according to the sign of ``p`` at the cell
    centre.  Each vertex carries the edge bound ``h^2/8 max|p''|`` plus a
    floating-point evaluation allowance.
    """
    if grid < MIN_GRID:
        raise ValueError(f"grid must be at least {MIN_GRID}")
    xmin, xmax, ymin, ymax = check_bbox(bbox)
    xs = np.linspace(xmin, xmax, grid + 1)
    ys = np.linspace(ymin, ymax, grid + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    F = evaluate(p, X, Y)
    hx, hy = xs[1] - xs[0], ys[1] - ys[0]

    # horizontal edges (i, j)-(i+1, j) and vertical edges (i, j)-(i, j+1)
    h_hit, h_t = _crossings(F[:-1, :], F[1:, :])
    v_hit, v_t = _crossings(F[:, :-1], F[:, 1:])

    # per crossed cell: bottom, right, top, left
    count = h_hit[:, :-1].astype(np.int8) + v_hit[1:, :] + h_hit[:, 1:] + v_hit[:-1, :]
    ci, cj = np.nonzero(count)
    count = count[ci, cj]
    hits = np.stack([h_hit[ci, cj], v_hit[ci + 1, cj], h_hit[ci, cj + 1], v_hit[ci, cj]], axis=-1)
    px = np.stack([X[ci, cj] + h_t[ci, cj] * hx, X[ci + 1, cj], X[ci, cj + 1] + h_t[ci, cj + 1] * hx, X[ci, cj]], -1)
    py = np.stack([Y[ci, cj], Y[ci + 1, cj] + v_t[ci + 1, cj] * hy, Y[ci, cj + 1], Y[ci, cj] + v_t[ci, cj] * hy], -1)
    pts = np.stack([px, py], axis=-1)

    segs = []
    two = count == 2
    if two.any():
        idx = np.argsort(~hits[two], axis=-1, kind="stable")[:, :2]
        cell_pts = pts[two]
        rows = np.arange(len(idx))
        segs.append(np.stack([cell_pts[rows, idx[:, 0]], cell_pts[rows, idx[:, 1]]], axis=1))
    four = count == 4
    if four.any():
        fi, fj = ci[four], cj[four]
        centre = evaluate(p, X[fi, fj] + hx / 2, Y[fi, fj] + hy / 2)
        joined = (centre > 0) == (F[fi, fj] > 0)  # corner (i, j) linked to the centre
        cp = pts[four]
        a = np.where(joined[:, None, None], np.stack([cp[:, 0], cp[:, 1]], 1), np.stack([cp[:, 0], cp[:, 3]], 1))
        b = np.where(joined[:, None, None], np.stack([cp[:, 2], cp[:, 3]], 1), np.stack([cp[:, 1], cp[:, 2]], 1))
        segs.extend([a, b])
    segments = np.concatenate(segs) if segs else np.zeros((0, 2, 2))
    keep = np.any(segments[:, 0] != segments[:, 1], axis=-1)
    segments = segments[keep]

    verts = segments.reshape(-1, 2)
    residuals = np.abs(evaluate(p, verts[:, 0], verts[:, 1])) if len(verts) else np.zeros(0)
    bounds = _vertex_bounds(p, verts, hx, hy, xs, ys)
    markers = _isolated_markers(p, F, X, Y)
    return Rasterization(
        segments, residuals.reshape(-1, 2), bounds.reshape(-1, 2), markers, (xmin, xmax, ymin, ymax), grid
    )


def _vertex_bounds(p, verts, hx, hy, xs, ys):
    if not len(verts):
        return np.zeros(0)
    pxx, pyy = p.diff_x().diff_x(), p.diff_y().diff_y()
    # which edge family each vertex sits on: vertical edges have x on a grid line
    fx = (verts[:, 0] - xs[0]) / hx
    on_vertical = np.abs(fx - np.round(fx)) < 1e-9
    i = np.clip(np.floor(fx), 0, len(xs) - 2).astype(int)
    fy = (verts[:, 1] - ys[0]) / hy
    j = np.clip(np.floor(fy), 0, len(ys) - 2).astype(int)
    ax_h = np.maximum(np.abs(xs[i]), np.abs(xs[i + 1]))
    ay_v = np.maximum(np.abs(ys[j]), np.abs(ys[j + 1]))
    ax, ay = np.abs(verts[:, 0]), np.abs(verts[:, 1])
    second = np.where(
        on_vertical,
        hy * hy / 8 * _abs_bound(pyy, ax, ay_v),
        hx * hx / 8 * _abs_bound(pxx, ax_h, ay),
    )
    rounding = 8 * max(p.degree, 1) * _EPS * (_abs_bound(p, ax, ay) + _abs_bound(p, ax + hx, ay + hy))
    return second + rounding


def _rational_candidates(x: float, y: float):
    for d in (1, 2, 3, 4, 5, 8, 10, 16, 100, 1000):
        yield Fraction(x).limit_denominator(d), Fraction(y).limit_denominator(d)


def _isolated_markers(p, F, X, Y, limit: int = 64) -> list:
    """Strict local minima of ``|p|`` with no nearby sign change, confirmed exactly."""
    A = np.abs(F)
    core = A[1:-1, 1:-1]
    strict = np.ones_like(core, dtype=bool)
    any_pos = F[1:-1, 1:-1] > 0
    any_neg = F[1:-1, 1:-1] < 0
    n, m = A.shape
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == dj == 0:
                continue
            nb = A[1 + di : n - 1 + di, 1 + dj : m - 1 + dj]
            strict &= core < nb
            nf = F[1 + di : n - 1 + di, 1 + dj : m - 1 + dj]
            any_pos |= nf > 0
            any_neg |= nf < 0
    ci, cj = np.nonzero(strict & ~(any_pos & any_neg))
    order = np.argsort(core[ci, cj], kind="stable")[:limit]
    found = []
    for k in order:
        x0, y0 = X[ci[k] + 1, cj[k] + 1], Y[ci[k] + 1, cj[k] + 1]
        h = max(X[1, 0] - X[0, 0], Y[0, 1] - Y[0, 0])
        res = minimize(lambda v: float(evaluate(p, v[0], v[1])) ** 2, [x0, y0], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-30, "initial_simplex": [[x0, y0], [x0 + h, y0], [x0, y0 + h]]})
        for cand in (tuple(res.x), (x0, y0)):
            hit = next((q for q in _rational_candidates(*cand) if evaluate(p, *q) == 0), None)
            if hit is not None:
                if hit not in found:
                    found.append(hit)
                break
    return sorted(found)


def is_closed(curve: ParametricCurve, t0: float, t1: float, tol: float = 1e-12) -> bool:
    a, b = curve.point(t0), curve.point(t1)
    return bool(np.all(np.isfinite(a)) and np.linalg.norm(a - b) <= tol * max(1.0, np.linalg.norm(a)))


def sample_parametric(curve: ParametricCurve, t0: float, t1: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``n`` points uniform in ``t``; non-finite points are dropped.

    When the curve closes up over ``[t0, t1]`` the repeated end point is
    omitted, so the ``n`` samples are evenly spread around the loop.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    if not (curve.contains(t0) and curve.contains(t1)):
        raise ValueError(f"[{t0}, {t1}] is outside the curve domain {curve.domain}")
    ts = np.linspace(t0, t1, n, endpoint=not is_closed(curve, t0, t1))
    pts = curve.point(ts)
    ok = np.isfinite(pts).all(axis=1)
    return ts[ok], pts[ok]


def close_polyline(pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, float)
    return np.vstack([pts, pts[:1]]) if len(pts) else pts


def auto_bbox(polylines: Sequence[np.ndarray], pad: float = 0.1) -> BBox:
    pts = [np.asarray(q, float).reshape(-1, 2) for q in polylines]
    pts = [q[np.isfinite(q).all(axis=1)] for q in pts]
    pts = [q for q in pts if len(q)]
    if not pts:
        return (-5.0, 5.0, -5.0, 5.0)
    allp = np.concatenate(pts)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    lo, hi = lo - pad * span, hi + pad * span
    if not (hi - lo > 1e-6).all():
        return (-5.0, 5.0, -5.0, 5.0)
    return (float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))


@dataclass(frozen=True)
class Style:
    stroke: str = "#000000"
    width: float = 1.5
    dash: Optional[str] = None


@dataclass
class Layer:
    curve: Union[BivariatePoly, np.ndarray, Rasterization]
    style: Style = Style()
    label: str = ""


@dataclass
class Scene:
    layers: list = field(default_factory=list)
    bbox: BBox = (-5.0, 5.0, -5.0, 5.0)
    grid: int = DEFAULT_GRID

    def __post_init__(self):
        self.bbox = check_bbox(self.bbox)
        if self.grid < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}")

    def add(self, curve, label: str = "", **style) -> "Scene":
        self.layers.append(Layer(curve, Style(**style), label))
        return self


def _fmt(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    def __init__(self, bbox: BBox, width: int, height: int, margin: int):
        self.bbox, self.w, self.h, self.m = bbox, width, height, margin

    def __call__(self, x, y):
        xmin, xmax, ymin, ymax = self.bbox
        sx = self.m + (x - xmin) / (xmax - xmin) * (self.w - 2 * self.m)
        sy = self.h - self.m - (y - ymin) / (ymax - ymin) * (self.h - 2 * self.m)
        return sx, sy


def _polyline_path(pts: np.ndarray, tf) -> str:
    parts, pen_down = [], False
    for x, y in pts:
        if not (np.isfinite(x) and np.isfinite(y)):
            pen_down = False
            continue
        sx, sy = tf(x, y)
        parts.append(("L" if pen_down else "M") + f"{_fmt(sx)} {_fmt(sy)}")
        pen_down = True
    return " ".join(parts)


def _segments_path(segs: np.ndarray, tf) -> str:
    parts = []
    for (x0, y0), (x1, y1) in segs:
        a, b = tf(x0, y0), tf(x1, y1)
        parts.append(f"M{_fmt(a[0])} {_fmt(a[1])}L{_fmt(b[0])} {_fmt(b[1])}")
    return " ".join(parts)


def emit_svg(scene: Scene, width: int = 600, height: int = 600, margin: int = 30) -> str:
    """SVG 1.1 text: axes, one ``path`` per layer, isolated-point circles and a legend."""
    tf = _Frame(scene.bbox, width, height, margin)
    xmin, xmax, ymin, ymax = scene.bbox
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        '<g id="axes" stroke="#888888" stroke-width="0.75">',
    ]
    if xmin <= 0 <= xmax:
        (x0, y0), (x1, y1) = tf(0, ymin), tf(0, ymax)
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>')
    if ymin <= 0 <= ymax:
        (x0, y0), (x1, y1) = tf(xmin, 0), tf(xmax, 0)
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>')
    out.append("</g>")

    for k, layer in enumerate(scene.layers):
        st = layer.style
        curve, markers = layer.curve, []
        if isinstance(curve, BivariatePoly):
            curve = rasterize_implicit(curve, scene.bbox, scene.grid)
        if isinstance(curve, Rasterization):
            d, markers = _segments_path(curve.segments, tf), curve.markers
        else:
            d = _polyline_path(np.asarray(curve, float).reshape(-1, 2), tf)
        dash = f' stroke-dasharray="{st.dash}"' if st.dash else ""
        out.append(
            f'<path id="layer{k}" d="{d}" fill="none" stroke="{st.stroke}" '
            f'stroke-width="{_fmt(st.width)}"{dash}/>'
        )
        for mx, my in markers:
            sx, sy = tf(float(mx), float(my))
            out.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="{_fmt(2 * st.width)}" fill="{st.stroke}"/>')

    labelled = [l for l in scene.layers if l.label]
    if labelled:
        out.append('<g id="legend" font-family="sans-serif" font-size="12">')
        for k, layer in enumerate(labelled):
            y = margin + 16 * k
            x = width - margin - 150
            out.append(
                f'<line x1="{x}" y1="{y - 4}" x2="{x + 20}" y2="{y - 4}" stroke="{layer.style.stroke}" '
                f'stroke-width="{_fmt(layer.style.width)}"/>'
            )
            out.append(f'<text x="{x + 26}" y="{y}">{escape(layer.label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_csv(points, ts=None) -> str:
    """``t,x,y`` rows with 12 significant digits; ``t`` defaults to the row index."""
    pts = np.asarray(points, float).reshape(-1, 2)
    ts = np.arange(len(pts), dtype=float) if ts is None else np.asarray(ts, float)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "y"])
    for t, (x, y) in zip(ts, pts):
        w.writerow([f"{t:.12g}", f"{x:.12g}", f"{y:.12g}"])
    return buf.getvalue()
