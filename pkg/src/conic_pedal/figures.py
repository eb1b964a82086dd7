"""Regenerate the example figures (conic, pedal, inversion, all together)."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402

from .catalog import EXAMPLES, Example  # noqa: E402
from .conic import Conic, classify, parametrize  # noqa: E402
from .limacon import limacon_parametric  # noqa: E402
from .pedal_ops import antipedal_curve, pedal_curve, pedal_parametrization  # noqa: E402
from .render import (  # noqa: E402
    DEFAULT_GRID,
    Rasterization,
    Scene,
    emit_csv,
    emit_svg,
    rasterize_implicit,
    sample_parametric,
)

COLORS = {"conic": "#1f4e9c", "pedal": "#c0392b", "inversion": "#1e8449"}

# plotting windows (xmin, xmax, ymin, ymax) for: conic, pedal, inversion, together
WINDOWS = {
    "C1": [(-1.5, 3.5, -1.5, 3.5), (-1.5, 3.5, -1.5, 3.5), (-1.8, 0.8, -1.5, 1.1), (-2, 3.5, -1.5, 3.5)],
    "C2": [(-40, 10, -40, 10), (-4, 2, -4, 2), (-4, 2, -4, 2), (-6, 3, -6, 3)],
    "C3": [(-5, 5, -5, 5), (-3.2, 1.6, -4.3, 0.5), (-2, 6, -6, 2), (-4, 4, -5, 3)],
    "C4": [(-1, 7, -4, 4), (-3, 7, -5, 5), (-4, 1, -2.5, 2.5), (-4, 7, -5.5, 5.5)],
    "C5": [(-2, 4.5, -1, 5.5), (-3, 4.5, -2, 5.5), (-1.7, 0.7, -2.5, 0.5), (-3, 4.5, -2.5, 5.5)],
    "C6": [(-0.5, 2.5, 0.5, 3.5), (-1.5, 4, -1, 4.5), (-3, 3, -3, 3), (-3, 4, -3, 4.5)],
}


def _layers(ex: Example):
    """(key, label, implicit polynomial, parametric branches) for the three curves."""
    C = ex.conic
    inv = antipedal_curve(C)
    if ex.circle is not None:
        pedal_branches = (limacon_parametric(ex.circle),)
    else:
        pedal_branches = pedal_parametrization(C)
    return [
        ("conic", f"{ex.name} ({classify(C).tag.value})", C.as_poly(), parametrize(C)),
        ("pedal", f"pedal of {ex.name}", pedal_curve(C), pedal_branches),
        ("inversion", f"inversion of the pedal ({classify(inv).tag.value})", inv.as_poly(), parametrize(inv)),
    ]


def _sample_branches(branches, bbox, n):
    """Uniform samples per branch, with the parameter range widened for unbounded branches."""
    reach = 4 * max(abs(v) for v in bbox)
    out = []
    for br in branches:
        lo, hi = br.domain
        lo = lo if math.isfinite(lo) else -reach
        hi = hi if math.isfinite(hi) else reach
        out.append(sample_parametric(br, lo, hi, n))
    return out


def _draw(ax, rast: Rasterization, color: str, label: str):
    ax.add_collection(LineCollection(rast.segments, colors=color, linewidths=1.4, label=label))
    for mx, my in rast.markers:
        ax.plot([float(mx)], [float(my)], "o", color=color, markersize=4)


def _axes(ax, bbox, title):
    xmin, xmax, ymin, ymax = bbox
    ax.axhline(0, color="0.6", lw=0.6)
    ax.axvline(0, color="0.6", lw=0.6)
    ax.set_xlim(xmin, xmax)
    ax.set_ylim(ymin, ymax)
    ax.set_aspect("equal")
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)


def render_example(name: str, outdir, grid: int = DEFAULT_GRID, samples: int = 2000) -> list[Path]:
    """Write ``figNN.{png,svg}`` plus ``figNN_<curve>.csv`` for one example."""
    ex = EXAMPLES[name]
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    layers = _layers(ex)
    windows = WINDOWS[name]
    written = []
    panels = [[layers[0]], [layers[1]], [layers[2]], layers]
    for fig_no, window, panel in zip(ex.figures, windows, panels):
        stem = outdir / f"fig{fig_no:02d}"
        scene = Scene(bbox=window, grid=grid)
        fig, ax = plt.subplots(figsize=(4, 4), dpi=150)
        for key, label, poly, branches in panel:
            rast = rasterize_implicit(poly, window, grid)
            scene.add(rast, label, stroke=COLORS[key])
            _draw(ax, rast, COLORS[key], label)
            rows_t, rows_p = [], []
            for ts, pts in _sample_branches(branches, window, samples):
                rows_t.append(ts)
                rows_p.append(pts)
            csv_path = Path(f"{stem}_{key}.csv")
            csv_path.write_text(emit_csv(np.concatenate(rows_p), np.concatenate(rows_t)))
            written.append(csv_path)
        title = f"Fig. {fig_no}: " + (f"{ex.name}, its pedal and inversion" if len(panel) > 1 else panel[0][1])
        _axes(ax, window, title)
        if len(panel) > 1:
            ax.legend(fontsize=7, loc="best")
        # fixed margins; tight_layout costs more than the rasterization itself
        fig.subplots_adjust(left=0.12, right=0.97, bottom=0.08, top=0.92)
        fig.savefig(f"{stem}.png")
        plt.close(fig)
        Path(f"{stem}.svg").write_text(emit_svg(scene))
        written += [Path(f"{stem}.png"), Path(f"{stem}.svg")]
    return written


def render_all(outdir, grid: int = DEFAULT_GRID, samples: int = 2000, names=None) -> list[Path]:
    out = []
    for name in names or EXAMPLES:
        out += render_example(name, outdir, grid, samples)
    return out
