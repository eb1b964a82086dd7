import math

import numpy as np
import pytest
import sympy as sp

from conic_pedal import jet
from conic_pedal.catalog import C1, C2, C3
from conic_pedal.conic import Conic, parametrize
from conic_pedal.errors import DomainError, OriginInversionError, SilhouettePointError
from conic_pedal.frontal import (
    LegendrianCurve,
    antipedal_curve_of,
    antipedal_frontal,
    beta_profile,
    find_singular_points,
    frame,
    inversion_map,
    inverted,
    inverted_parabola,
    ordinary_cusp_test,
    parabola_cusp_constants,
    pedal_curve_of,
    pedal_frontal,
    primitive_frontal,
    regular_curvature,
)
from conic_pedal.parametric import ParametricCurve, finite_difference_mismatch
from conic_pedal.pedal_ops import antipedal_curve, pedal_curve, pedal_foot
from conic_pedal.poly2 import scaled_residual
from conic_pedal.verify import random_parabola

circle = ParametricCurve(lambda t: (jet.cos(t), jet.sin(t)), (0, 2 * math.pi), "unit circle")
cusp = ParametricCurve(lambda t: (t * t, t * t * t), label="cusp")


def _flip(lc: LegendrianCurve) -> LegendrianCurve:
    def nu_fn(t):
        nx, ny = lc.nu_at(t)
        return -nx, -ny

    return LegendrianCurve(lc.gamma, nu_fn)


def test_default_lift_on_unit_circle():
    fr = frame(LegendrianCurve(circle), 0.7)
    assert np.allclose(fr.nu, [math.cos(0.7), math.sin(0.7)])
    assert np.allclose(fr.mu, [-math.sin(0.7), math.cos(0.7)])
    assert fr.ell == pytest.approx(1.0)
    assert fr.beta == pytest.approx(1.0)


def test_inward_normal_on_unit_circle():
    lc = LegendrianCurve(circle, lambda t: (-jet.cos(t), -jet.sin(t)))
    fr = frame(lc, 1.3)
    # mu = J nu = (sin, -cos) = -gamma', and nu' = (sin, -cos) = mu
    assert fr.ell == pytest.approx(1.0)
    assert fr.beta == pytest.approx(-1.0)


@pytest.mark.parametrize("t", [0.2, 1.1, 2.9, 4.4])
def test_ell_is_speed_times_curvature_on_ellipse(t):
    (ell_curve,) = parametrize(C1)
    lc = LegendrianCurve(ell_curve)
    fr = frame(lc, t)
    speed = np.hypot(*ell_curve.derivatives(t, 1)[1])
    assert fr.beta == pytest.approx(speed, rel=1e-12)
    assert fr.ell == pytest.approx(speed * regular_curvature(ell_curve, t), rel=1e-10)


def test_curvature_formula_against_sympy():
    s = sp.symbols("s")
    gx, gy = 2 * sp.cos(s), sp.sin(s)
    kappa = (sp.diff(gx, s) * sp.diff(gy, s, 2) - sp.diff(gx, s, 2) * sp.diff(gy, s)) / (
        sp.diff(gx, s) ** 2 + sp.diff(gy, s) ** 2
    ) ** sp.Rational(3, 2)
    ell = ParametricCurve(lambda t: (2 * jet.cos(t), jet.sin(t)))
    for t in (0.3, 1.7):
        assert regular_curvature(ell, t) == pytest.approx(float(kappa.subs(s, t)), rel=1e-12)


@pytest.mark.parametrize("C", [C1, C2, C3])
def test_legendrian_condition(C):
    for br in parametrize(C):
        lc = LegendrianCurve(br)
        leg, unit = lc.legendrian_defect(np.linspace(-1.5, 1.5, 13) + (3.0 if br.domain[0] == 0 else 0.0))
        assert leg < 1e-12 and unit < 1e-12


@pytest.mark.parametrize("C", [C1, C2, C3])
def test_pointwise_pedal_matches_algebraic_foot(C):
    for br in parametrize(C):
        lc = LegendrianCurve(br)
        for t in np.linspace(0.3, 2.5, 7):
            assert np.allclose(pedal_frontal(lc, t), pedal_foot(C, br.point(t)), atol=1e-12)


@pytest.mark.parametrize("C", [C1, C3])
def test_maps_are_invariant_under_normal_flip(C):
    br = parametrize(C)[0]
    lc, fl = LegendrianCurve(br), _flip(LegendrianCurve(br))
    for t in (0.4, 1.0, 2.2):
        assert np.allclose(pedal_frontal(lc, t), pedal_frontal(fl, t))
        assert np.allclose(antipedal_frontal(lc, t), antipedal_frontal(fl, t))
        assert np.allclose(primitive_frontal(lc, t), primitive_frontal(fl, t))


def test_antipedal_curve_lies_on_anti_pedal_conic():
    for C in (C1, C2, C3):
        G2 = antipedal_curve(C).as_poly()
        for br in parametrize(C):
            ap = antipedal_curve_of(LegendrianCurve(br))
            ts = np.linspace(0.35, 2.6, 9)
            pts = ap.point(ts)
            assert np.max(scaled_residual(G2, pts[:, 0], pts[:, 1])) < 1e-10


def test_primitive_inverts_pedal():
    (br,) = parametrize(C1)
    ped = LegendrianCurve(pedal_curve_of(LegendrianCurve(br)))
    for t in np.linspace(0.1, 6.0, 11):
        assert np.allclose(primitive_frontal(ped, t), br.point(t), atol=1e-10)


def test_pedal_curve_is_jet_aware():
    (br,) = parametrize(C1)
    ped = pedal_curve_of(LegendrianCurve(br))
    assert finite_difference_mismatch(ped, [0.5, 2.0, 4.0]) < 1e-5
    G1 = pedal_curve(C1)
    pts = ped.point(np.linspace(0, 6, 20))
    assert np.max(scaled_residual(G1, pts[:, 0], pts[:, 1])) < 1e-12


def test_silhouette_point_rejected():
    shifted = ParametricCurve(lambda t: (1 + jet.cos(t), jet.sin(t)))
    lc = LegendrianCurve(shifted)
    with pytest.raises(SilhouettePointError):
        antipedal_frontal(lc, math.pi)
    with pytest.raises(SilhouettePointError):
        primitive_frontal(lc, math.pi)
    assert np.allclose(pedal_frontal(lc, math.pi), [0.0, 0.0])


def test_inversion_map():
    from fractions import Fraction

    assert inversion_map((Fraction(3), Fraction(4))) == (Fraction(3, 25), Fraction(4, 25))
    assert np.allclose(inversion_map((0.0, 2.0)), [0.0, 0.5])
    with pytest.raises(OriginInversionError):
        inversion_map((0, 0))
    inv = inverted(circle)
    assert np.allclose(inv.point(0.4), circle.point(0.4))


def test_cusp_tests():
    res = ordinary_cusp_test(cusp, 0.0)
    assert res.is_cusp
    assert np.allclose(res.tangent, [1, 0])
    assert res.determinant == pytest.approx(12.0)
    assert not ordinary_cusp_test(ParametricCurve(lambda t: (t * t, t**4)), 0.0).is_cusp
    assert not ordinary_cusp_test(ParametricCurve(lambda t: (t, t * t)), 0.0).is_cusp


def test_singular_points_of_cusp_and_regular_curves():
    lc = LegendrianCurve(cusp)
    assert find_singular_points(lc, -1.0, 1.0, 201) == pytest.approx([0.0], abs=1e-9)
    betas = beta_profile(lc, np.linspace(-1, 1, 11))
    assert betas[0] * betas[-1] < 0
    assert find_singular_points(LegendrianCurve(circle), 0.0, 6.0, 200) == []
    fr = frame(lc, 0.0)
    assert fr.singular and abs(fr.beta) < 1e-12


def test_inverted_parabola_closed_forms_symbolically():
    a, th, b1, b2, tau = sp.symbols("a theta b1 b2 tau", real=True)
    w1 = sp.cos(th) * tau - a * sp.sin(th) + b1 * tau**2
    w2 = sp.sin(th) * tau + a * sp.cos(th) + b2 * tau**2
    f = w1**2 + w2**2
    sx, sy = tau**2 * w1 / f, tau**2 * w2 / f
    d = lambda e, k: sp.simplify(sp.diff(e, tau, k).subs(tau, 0))  # noqa: E731
    assert d(sx, 1) == 0 and d(sy, 1) == 0
    assert sp.simplify(d(sx, 2) + 2 * sp.sin(th) / a) == 0
    assert sp.simplify(d(sy, 2) - 2 * sp.cos(th) / a) == 0
    assert sp.simplify(d(sx, 3) - 6 * sp.cos(th) / a**2) == 0
    assert sp.simplify(d(sy, 3) - 6 * sp.sin(th) / a**2) == 0
    det = sp.simplify(d(sx, 2) * d(sy, 3) - d(sy, 2) * d(sx, 3))
    assert sp.simplify(det + 12 / a**3) == 0


def test_inverted_parabola_is_inversion_of_c2():
    sigma = inverted_parabola(C2)
    G3 = C2.as_poly()
    for tau in (0.3, -0.8, 1.7):
        p = sigma.point(tau)
        q = inversion_map(p)
        assert abs(G3(*q)) / (1 + np.dot(q, q)) < 1e-9
    consts = parabola_cusp_constants(C2)
    test = ordinary_cusp_test(sigma, 0.0)
    assert test.is_cusp
    assert np.allclose(test.derivatives[2], consts["second"], rtol=1e-10)
    assert np.allclose(test.derivatives[3], consts["third"], rtol=1e-10)
    assert test.determinant == pytest.approx(consts["determinant"], rel=1e-10)
    with pytest.raises(DomainError):
        inverted_parabola(C1)


def test_random_parabola_cusp_matches_closed_form():
    rng = np.random.default_rng(7)
    for _ in range(10):
        C = random_parabola(rng)
        test = ordinary_cusp_test(inverted_parabola(C), 0.0)
        assert test.is_cusp
        assert test.determinant == pytest.approx(parabola_cusp_constants(C)["determinant"], rel=1e-9)


def test_unit_circle_conic_is_its_own_pedal():
    C = Conic(1, 1, 0, 0, 0, -1)
    (br,) = parametrize(C)
    lc = LegendrianCurve(br)
    for t in (0.0, 1.0, 2.5):
        assert np.allclose(pedal_frontal(lc, t), br.point(t))
        assert np.allclose(antipedal_frontal(lc, t), br.point(t))
