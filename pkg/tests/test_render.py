import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from conic_pedal import jet
from conic_pedal.catalog import C1, EXAMPLES
from conic_pedal.conic import parametrize
from conic_pedal.figures import WINDOWS, _layers
from conic_pedal.limacon import CircleSpec, limacon_parametric
from conic_pedal.parametric import ParametricCurve
from conic_pedal.pedal_ops import antipedal_curve, pedal_curve
from conic_pedal.poly2 import BivariatePoly
from conic_pedal.render import (
    Scene,
    auto_bbox,
    close_polyline,
    emit_csv,
    emit_svg,
    rasterize_implicit,
    sample_parametric,
)

x, y = BivariatePoly.x(), BivariatePoly.y()
rho = BivariatePoly.circle()
SVG = "{http://www.w3.org/2000/svg}"


def _endpoint_degrees(segments):
    keys = {}
    for p in segments.reshape(-1, 2):
        k = (round(p[0], 9), round(p[1], 9))
        keys[k] = keys.get(k, 0) + 1
    return keys


def test_unit_circle_contour():
    r = rasterize_implicit(rho - 1, (-2, 2, -2, 2), 256)
    cell_diag = math.hypot(4 / 256, 4 / 256)
    radii = np.hypot(*r.vertices().T)
    assert np.max(np.abs(radii - 1)) <= 2 * cell_diag
    assert r.within_bounds()
    # closed: every vertex is shared by exactly two segments
    assert set(_endpoint_degrees(r.segments).values()) == {2}
    assert r.markers == []


def test_isolated_origin_gets_a_marker():
    r = rasterize_implicit(pedal_curve(C1), (-1.5, 3.5, -1.5, 3.5), 200)
    assert r.markers == [(Fraction(0), Fraction(0))]
    assert len(r.segments) > 100


def test_empty_curve():
    r = rasterize_implicit(rho + 1, (-2, 2, -2, 2), 64)
    assert r.segments.shape == (0, 2, 2) and r.markers == []
    assert r.max_residual == 0.0


def test_no_false_marker_at_a_near_miss():
    # x^2 + y^2 + 1e-6 has a strict minimum but no real zero
    r = rasterize_implicit(rho + Fraction(1, 10**6), (-1, 1, -1, 1), 64)
    assert r.markers == []


@pytest.mark.parametrize("delta", [Fraction(1, 1000), Fraction(-1, 1000)])
def test_saddle_cells_follow_centre_sign(delta):
    # the origin is a cell centre, so the central cell is a saddle
    r = rasterize_implicit(x * y - delta, (-1, 1, -1, 1), 17)
    mids = r.segments.mean(axis=1)
    prod = mids[:, 0] * mids[:, 1]
    assert np.all(np.sign(prod) == np.sign(float(delta)))


def test_preconditions():
    with pytest.raises(ValueError):
        rasterize_implicit(rho - 1, (-1, 1, -1, 1), 8)
    with pytest.raises(ValueError):
        rasterize_implicit(rho - 1, (1, 1, -1, 1), 32)
    with pytest.raises(ValueError):
        Scene(bbox=(0, 1, 2, 2))


@pytest.mark.parametrize("name", list(EXAMPLES))
def test_grid_doubling_and_bounds_on_examples(name):
    for (key, _, poly, _), window in zip(_layers(EXAMPLES[name]), WINDOWS[name]):
        prev = None
        for g in (64, 128, 256):
            r = rasterize_implicit(poly, window, g)
            assert r.within_bounds(), (name, key, g)
            if prev is not None:
                assert r.max_residual < prev
            prev = r.max_residual


def test_sample_parametric():
    circle = ParametricCurve(lambda t: (jet.cos(t), jet.sin(t)), (0.0, 2 * math.pi))
    ts, pts = sample_parametric(circle, 0.0, 2 * math.pi, 8)
    assert len(pts) == 8
    k = np.arange(8) * math.pi / 4
    assert np.allclose(pts, np.column_stack([np.cos(k), np.sin(k)]))
    ts, pts = sample_parametric(limacon_parametric(CircleSpec(3, 0, 9)), 0.0, 2 * math.pi, 360)
    assert len(pts) == 360 and np.allclose(pts[0], [6, 0])
    assert np.allclose(close_polyline(pts)[-1], [6, 0])
    with pytest.raises(ValueError):
        sample_parametric(circle, -1.0, 1.0, 10)
    with pytest.raises(ValueError):
        sample_parametric(circle, 0.0, 1.0, 1)


def test_hyperbola_branch_samples_are_finite_and_monotone():
    from conic_pedal.catalog import C3

    for br in parametrize(C3):
        ts, pts = sample_parametric(br, -50.0, 50.0, 101)
        assert np.all(np.diff(ts) > 0) and np.isfinite(pts).all()


def test_auto_bbox():
    assert auto_bbox([]) == (-5.0, 5.0, -5.0, 5.0)
    assert auto_bbox([np.array([[0.0, 0.0], [10.0, 5.0]])]) == pytest.approx((-1.0, 11.0, -0.5, 5.5))


def test_empty_scene_svg_is_valid():
    root = ET.fromstring(emit_svg(Scene()).split("\n", 2)[2])
    assert root.tag == SVG + "svg"
    assert root.findall(f".//{SVG}path") == []
    assert len(root.findall(f".//{SVG}line")) == 2


def test_composite_svg_has_labelled_layers():
    scene = Scene(bbox=(-2, 3.5, -1.5, 3.5), grid=128)
    (br,) = parametrize(C1)
    _, pts = sample_parametric(br, 0.0, 2 * math.pi, 200)
    scene.add(close_polyline(pts), "C1", stroke="#1f4e9c")
    scene.add(pedal_curve(C1), "pedal", stroke="#c0392b")
    scene.add(antipedal_curve(C1).as_poly(), "inversion", stroke="#1e8449")
    text = emit_svg(scene)
    assert text.startswith('<?xml version="1.0"')
    assert "svg11.dtd" in text
    root = ET.fromstring(text.split("\n", 2)[2])
    assert len(root.findall(f".//{SVG}path")) == 3
    assert [t.text for t in root.findall(f".//{SVG}text")] == ["C1", "pedal", "inversion"]
    assert len(root.findall(f".//{SVG}circle")) == 1
    assert text == emit_svg(scene)


def test_csv():
    text = emit_csv([[0.1, 2.0], [1 / 3, -4.5], [1e-13, 7.0]], [0.0, 0.5, 1.0])
    lines = text.split("\n")
    assert lines[0] == "t,x,y"
    assert lines[2] == "0.5,0.333333333333,-4.5"
    assert len(lines) == 5 and lines[-1] == ""
    assert "\r" not in text
