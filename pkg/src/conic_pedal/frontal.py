"""Legendrian curves and the pointwise pedal / anti-pedal / primitive maps.

A frontal is a curve ``gamma`` with a unit normal field ``nu`` such that
``<gamma', nu> = 0``.  With ``mu = J nu`` (``J`` the quarter turn) the
curvature pair ``(ell, beta)`` is defined by ``nu' = ell mu`` and
``gamma' = beta mu``; singular points of ``gamma`` are the zeros of ``beta``.

The default lift is ``nu = -J gamma'/|gamma'|`` so that ``mu`` is the unit
tangent and ``beta = |gamma'|`` on regular stretches.  The pedal, anti-pedal
and primitive are all invariant under ``nu -> -nu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .conic import Conic, ConicKind, normal_form
from .errors import DomainError, OriginInversionError, SilhouettePointError, SingularPointError
from .jet import Jet
from .parametric import ParametricCurve

STAR_TOL = 1e-8
# |gamma'| below this (relative to |gamma''|) switches to the one-sided limit
_SINGULAR_SPEED = 1e-9


def _jt(vx, vy):
    """``J (vx, vy)``: rotate a quarter turn counter-clockwise."""
    return -vy, vx


def _normal_jets(gamma: ParametricCurve, t0: float, order: int) -> tuple[Jet, Jet, bool]:
    x, y = gamma.jets(t0, order + 2)
    dx, dy = x.derivative(), y.derivative()
    speed = math.hypot(dx.value, dy.value)
    accel = math.hypot(dx.c[1], dy.c[1]) if dx.order >= 1 else 0.0
    singular = speed <= _SINGULAR_SPEED * max(1.0, accel)
    if singular:
        # gamma' = (t - t0) h(t): the unit normal extends through h
        dx, dy = dx.shift(), dy.shift()
        if math.hypot(dx.value, dy.value) <= _SINGULAR_SPEED:
            raise SingularPointError(f"cannot extend the unit normal at t = {t0}")
    else:
        dx, dy = Jet(dx.c[: order + 1]), Jet(dy.c[: order + 1])
    norm = (dx * dx + dy * dy).sqrt()
    # nu = -J(gamma'/|gamma'|)
    return dy / norm, -dx / norm, singular


def _is_variable(t: Jet) -> bool:
    return t.order == 0 or (t.c[1] == 1.0 and not np.any(t.c[2:]))


@dataclass(frozen=True)
class LegendrianCurve:
    """A curve ``gamma`` with unit normal ``nu``.

    ``nu_fn`` is an optional jet-aware callable ``t -> (nx, ny)``; when omitted
    the normal is lifted from the derivatives of ``gamma``.
    """

    gamma: ParametricCurve
    nu_fn: Optional[Callable] = None

    def nu_at(self, t):
        """Unit normal at ``t``; ``t`` may be a float, an array or a parameter jet."""
        if isinstance(t, Jet):
            if self.nu_fn is not None:
                return self.nu_fn(t)
            if not _is_variable(t):
                raise ValueError("normal lift needs the identity jet t0 + eps")
            nx, ny, _ = _normal_jets(self.gamma, t.value, t.order)
            return nx, ny
        if np.ndim(t) > 0:
            vals = np.array([self.nu(float(s)) for s in np.ravel(t)])
            shape = np.shape(t)
            return vals[:, 0].reshape(shape), vals[:, 1].reshape(shape)
        if self.nu_fn is not None:
            nx, ny = self.nu_fn(t)
            return float(nx), float(ny)
        nx, ny, _ = _normal_jets(self.gamma, float(t), 0)
        return nx.value, ny.value

    def nu(self, t: float) -> np.ndarray:
        return np.array(self.nu_at(float(t)), dtype=float)

    def mu(self, t: float) -> np.ndarray:
        n = self.nu(t)
        return np.array(_jt(*n))

    def legendrian_defect(self, ts) -> tuple[float, float]:
        """Worst ``|<gamma', nu>|`` and worst ``| |nu| - 1 |`` over ``ts``."""
        worst_leg = worst_unit = 0.0
        for t in np.atleast_1d(ts):
            d = self.gamma.derivatives(float(t), 1)
            n = self.nu(float(t))
            worst_leg = max(worst_leg, abs(float(d[1] @ n)))
            worst_unit = max(worst_unit, abs(float(np.hypot(*n)) - 1.0))
        return worst_leg, worst_unit


@dataclass(frozen=True)
class Frame:
    nu: np.ndarray
    mu: np.ndarray
    ell: float
    beta: float
    singular: bool = False


def frame(curve: LegendrianCurve, t: float) -> Frame:
    """Frenet-type frame ``(nu, mu)`` and curvature pair ``(ell, beta)`` at ``t``."""
    t = float(t)
    singular = False
    if curve.nu_fn is not None:
        nx, ny = curve.nu_fn(Jet.variable(t, 1))
        nx = nx if isinstance(nx, Jet) else Jet.constant(float(nx), 1)
        ny = ny if isinstance(ny, Jet) else Jet.constant(float(ny), 1)
    else:
        nx, ny, singular = _normal_jets(curve.gamma, t, 1)
    nu = np.array([nx.value, ny.value])
    dnu = np.array([nx.derivatives()[1], ny.derivatives()[1]])
    mu = np.array(_jt(*nu))
    dgamma = curve.gamma.derivatives(t, 1)[1]
    return Frame(nu, mu, float(dnu @ mu), float(dgamma @ mu), singular)


def regular_curvature(curve: ParametricCurve, t: float) -> float:
    """Classical signed curvature ``(x'y'' - x''y') / |gamma'|^3``."""
    d = curve.derivatives(float(t), 2)
    return float((d[1, 0] * d[2, 1] - d[2, 0] * d[1, 1]) / np.hypot(*d[1]) ** 3)


# -- pointwise operators ---------------------------------------------------------


def _support(curve: LegendrianCurve, t):
    g = curve.gamma.fn(t)
    n = curve.nu_at(t)
    return g, n, g[0] * n[0] + g[1] * n[1]


def _check_star(h, t) -> None:
    hv = h.value if isinstance(h, Jet) else np.min(np.abs(h))
    if abs(hv) < STAR_TOL:
        raise SilhouettePointError(f"silhouette point at t = {t}: <gamma, nu> = {hv:.3g}")


def pedal_frontal(curve: LegendrianCurve, t):
    """``<gamma, nu> nu``."""
    _, n, h = _support(curve, t)
    return _pack((h * n[0], h * n[1]), t)


def antipedal_frontal(curve: LegendrianCurve, t):
    """``nu / <gamma, nu>``; needs the star condition ``<gamma, nu> != 0``."""
    _, n, h = _support(curve, t)
    _check_star(h, t)
    return _pack((n[0] / h, n[1] / h), t)


def primitive_frontal(curve: LegendrianCurve, t):
    """``2 gamma - |gamma|^2 / <gamma, nu> nu``; needs the star condition."""
    g, n, h = _support(curve, t)
    _check_star(h, t)
    k = (g[0] * g[0] + g[1] * g[1]) / h
    return _pack((2 * g[0] - k * n[0], 2 * g[1] - k * n[1]), t)


def _pack(xy, t):
    if isinstance(t, Jet):
        return xy
    return np.array([np.asarray(xy[0], float), np.asarray(xy[1], float)]).T


def pedal_curve_of(curve: LegendrianCurve, label: str = "pedal") -> ParametricCurve:
    return ParametricCurve(lambda t: _as_pair(pedal_frontal(curve, t)), curve.gamma.domain, label)


def antipedal_curve_of(curve: LegendrianCurve, label: str = "anti-pedal") -> ParametricCurve:
    return ParametricCurve(lambda t: _as_pair(antipedal_frontal(curve, t)), curve.gamma.domain, label)


def primitive_curve_of(curve: LegendrianCurve, label: str = "primitive") -> ParametricCurve:
    return ParametricCurve(lambda t: _as_pair(primitive_frontal(curve, t)), curve.gamma.domain, label)


def _as_pair(v):
    if isinstance(v, tuple):
        return v
    v = np.asarray(v)
    return v[..., 0], v[..., 1]


def inversion_map(p):
    """``p / |p|^2``; exact for rational input."""
    x, y = p
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        r = Fraction(x) ** 2 + Fraction(y) ** 2
        if r == 0:
            raise OriginInversionError()
        return Fraction(x) / r, Fraction(y) / r
    x, y = float(x), float(y)
    r = x * x + y * y
    if r == 0.0:
        raise OriginInversionError()
    return np.array([x / r, y / r])


def inverted(curve: ParametricCurve, label: str = "") -> ParametricCurve:
    """``Psi o gamma`` as a jet-aware curve."""

    def fn(t):
        x, y = curve.fn(t)
        r = x * x + y * y
        return x / r, y / r

    return ParametricCurve(fn, curve.domain, label or f"inversion of {curve.label}")


# -- singular points -------------------------------------------------------------


@dataclass(frozen=True)
class CuspTest:
    is_cusp: bool
    tangent: Optional[np.ndarray]
    determinant: float
    derivatives: np.ndarray


def ordinary_cusp_test(curve: ParametricCurve, t0: float, tol: float = 1e-7) -> CuspTest:
    """``gamma'(t0) = 0``, ``gamma''(t0) != 0`` and ``det(gamma'', gamma''') != 0``."""
    d = curve.derivatives(float(t0), 3)
    g1, g2, g3 = d[1], d[2], d[3]
    n2, n3 = float(np.hypot(*g2)), float(np.hypot(*g3))
    det = float(g2[0] * g3[1] - g2[1] * g3[0])
    ok = (
        np.hypot(*g1) <= tol * max(1.0, n2)
        and n2 > tol
        and abs(det) > tol * n2 * max(1.0, n3)
    )
    return CuspTest(bool(ok), g2 / n2 if ok else None, det, d)


def _aligned_beta(curve: LegendrianCurve, t: float, ref: np.ndarray) -> tuple[float, np.ndarray]:
    n = curve.nu(t)
    if n @ ref < 0:
        n = -n
    dg = curve.gamma.derivatives(t, 1)[1]
    return float(dg @ np.array(_jt(*n))), n


def beta_profile(curve: LegendrianCurve, ts) -> np.ndarray:
    """``beta`` along ``ts`` with ``nu`` continued continuously (no sign jumps)."""
    out = np.empty(len(ts))
    ref = None
    for k, t in enumerate(ts):
        n = curve.nu(float(t))
        if ref is not None and n @ ref < 0:
            n = -n
        ref = n
        dg = curve.gamma.derivatives(float(t), 1)[1]
        out[k] = float(dg @ np.array(_jt(*n)))
    return out


def find_singular_points(
    curve: LegendrianCurve, t0: float, t1: float, n: int = 2000, tol: float = 1e-7
) -> list[float]:
    """Zeros of ``beta`` on ``[t0, t1]``: sign changes refined by bisection, plus
    touching zeros found as local minima of ``|beta|`` below ``tol``."""
    ts = np.linspace(t0, t1, n)
    betas = beta_profile(curve, ts)
    found: list[float] = []
    for k in range(n - 1):
        a, b = ts[k], ts[k + 1]
        if betas[k] == 0.0:
            found.append(float(a))
            continue
        if betas[k] * betas[k + 1] < 0:
            # both ends aligned to the same reference keep opposite signs
            ref = curve.nu(float(a))
            f = lambda s, ref=ref: _aligned_beta(curve, s, ref)[0]
            found.append(float(brentq(f, a, b, xtol=1e-12)))
    mags = np.abs(betas)
    for k in range(1, n - 1):
        if mags[k] <= mags[k - 1] and mags[k] <= mags[k + 1] and betas[k - 1] * betas[k + 1] > 0:
            res = minimize_scalar(
                lambda s: abs(_aligned_beta(curve, s, curve.nu(float(ts[k])))[0]),
                bounds=(ts[k - 1], ts[k + 1]),
                method="bounded",
                options={"xatol": 1e-12},
            )
            if res.fun <= tol:
                found.append(float(res.x))
    found.sort()
    dedup: list[float] = []
    for t in found:
        if not dedup or t - dedup[-1] > 1e-9:
            dedup.append(t)
    return dedup


# -- inversion of a parabola near the point at infinity ---------------------------


def inverted_parabola(C: Conic) -> ParametricCurve:
    """Inversion of the parabola ``C`` reparametrized by ``tau = 1/t``.

    With ``C`` written as ``R(theta)(t, a t^2) + (b1, b2)``, the image is
    ``sigma(tau) = tau^2 w(tau) / |w(tau)|^2`` where ``w(tau) = tau^2 gamma(1/tau)``;
    ``sigma(0)`` is the origin.
    """
    nf = normal_form(C)
    if nf.kind is not ConicKind.PARABOLA:
        raise DomainError("inverted_parabola needs a parabola")
    a = nf.params["a"]
    cs, sn = math.cos(nf.theta), math.sin(nf.theta)
    b1, b2 = float(nf.origin[0]), float(nf.origin[1])

    def fn(tau):
        w1 = cs * tau - a * sn + b1 * tau * tau
        w2 = sn * tau + a * cs + b2 * tau * tau
        f = w1 * w1 + w2 * w2
        return tau * tau * w1 / f, tau * tau * w2 / f

    return ParametricCurve(fn, label="inverted parabola")


def parabola_cusp_constants(C: Conic) -> dict:
    """Closed forms at ``tau = 0``: ``sigma'' = (2/a)(-sin, cos)``,
    ``sigma''' = (6/a^2)(cos, sin)`` and ``det = -12/a^3``."""
    nf = normal_form(C)
    a = nf.params["a"]
    cs, sn = math.cos(nf.theta), math.sin(nf.theta)
    return {
        "a": a,
        "theta": nf.theta,
        "second": np.array([-2 * sn / a, 2 * cs / a]),
        "third": np.array([6 * cs / a**2, 6 * sn / a**2]),
        "determinant": -12.0 / a**3,
    }
