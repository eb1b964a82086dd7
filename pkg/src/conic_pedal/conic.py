"""Quadratic curves: invariants, classification, tangent lines, parametrizations.

A conic is stored by the six coefficients of

    g(x, y) = a11 x^2 + a22 y^2 + 2 a12 xy + 2 a1 x + 2 a2 y + c

Note the factor of two on ``a12``, ``a1`` and ``a2``: ``x^2 - 2xy + 4x`` has
``a12 = -1`` and ``a1 = 2``.  This is also the convention of the JSON form
``{"a11": "...", "a22": "...", "a12": "...", "a1": "...", "a2": "...", "c": "..."}``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import jet
from .errors import (
    DomainError,
    InputError,
    NotParametrizableError,
    SingularPointError,
)
from .parametric import ParametricCurve
from .poly2 import BivariatePoly, as_fraction, quadratic_form_directions, sign_normalize

FIELDS = ("a11", "a22", "a12", "a1", "a2", "c")


class ConicKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    PARABOLA = "parabola"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class ConicClass:
    tag: ConicKind
    # Delta0 > 0 and a11 * Delta > 0: an ellipse with no real points
    empty_real_locus: bool = False


@dataclass(frozen=True)
class Conic:
    a11: Fraction
    a22: Fraction
    a12: Fraction
    a1: Fraction
    a2: Fraction
    c: Fraction

    def __post_init__(self):
        for name in FIELDS:
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a11 == 0 and self.a22 == 0 and self.a12 == 0:
            raise DomainError("not a quadratic curve: a11 = a22 = a12 = 0")

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, f) for f in FIELDS)

    def matrix(self) -> list[list[Fraction]]:
        return [
            [self.a11, self.a12, self.a1],
            [self.a12, self.a22, self.a2],
            [self.a1, self.a2, self.c],
        ]

    def as_poly(self) -> BivariatePoly:
        return BivariatePoly(
            {
                (2, 0): self.a11,
                (0, 2): self.a22,
                (1, 1): 2 * self.a12,
                (1, 0): 2 * self.a1,
                (0, 1): 2 * self.a2,
                (0, 0): self.c,
            }
        )

    @classmethod
    def from_poly(cls, p: BivariatePoly) -> "Conic":
        if p.degree != 2:
            raise DomainError(f"expected a degree-2 polynomial, got degree {p.degree}")
        k = p.coeff
        return cls(k(2, 0), k(0, 2), k(1, 1) / 2, k(1, 0) / 2, k(0, 1) / 2, k(0, 0))

    def __call__(self, x, y):
        return self.as_poly()(x, y)

    def scaled(self, k) -> "Conic":
        k = as_fraction(k)
        return Conic(*(v * k for v in self.coeffs))

    def rotated(self, cos, sin) -> "Conic":
        """Image of the curve under the rotation with the given cosine and sine.

        Exact when ``cos`` and ``sin`` are rational (Pythagorean triples).
        """
        cs, sn = as_fraction(cos), as_fraction(sin)
        if cs * cs + sn * sn != 1:
            raise ValueError("cos^2 + sin^2 must equal 1")
        # g'(p) = g(R^T p): Q' = R Q R^T, L' = R L
        r = ((cs, -sn), (sn, cs))
        q = ((self.a11, self.a12), (self.a12, self.a22))
        rq = [[sum(r[i][k] * q[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        qn = [[sum(rq[i][k] * r[j][k] for k in range(2)) for j in range(2)] for i in range(2)]
        ln = [r[i][0] * self.a1 + r[i][1] * self.a2 for i in range(2)]
        return Conic(qn[0][0], qn[1][1], qn[0][1], ln[0], ln[1], self.c)

    def contains_origin(self) -> bool:
        return self.c == 0

    def float_coeffs(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.coeffs)

    def to_json(self) -> dict:
        return {f: str(getattr(self, f)) for f in FIELDS}

    @classmethod
    def from_json(cls, data) -> "Conic":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid conic JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InputError("conic JSON must be an object")
        missing = [f for f in FIELDS if f not in data]
        if missing:
            raise InputError(f"conic JSON is missing {', '.join(missing)}")
        return cls(*(as_fraction(data[f]) for f in FIELDS))

    def equation(self) -> str:
        return self.as_poly().equation()


def _det3(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def invariants(C: Conic) -> tuple[Fraction, Fraction]:
    """``(Delta0, Delta)``: the quadratic-part and full symmetric determinants."""
    delta0 = C.a11 * C.a22 - C.a12 * C.a12
    return delta0, _det3(C.matrix())


def classify(C: Conic) -> ConicClass:
    d0, d = invariants(C)
    if d == 0:
        return ConicClass(ConicKind.REDUCIBLE)
    if d0 > 0:
        return ConicClass(ConicKind.ELLIPSE, empty_real_locus=C.a11 * d > 0)
    if d0 < 0:
        return ConicClass(ConicKind.HYPERBOLA)
    return ConicClass(ConicKind.PARABOLA)


def _on_conic(C: Conic, p0) -> bool:
    x0, y0 = p0
    val = C.as_poly()(x0, y0)
    if isinstance(val, Fraction):
        return val == 0
    scale = float(max(abs(v) for v in C.coeffs))
    return abs(float(val)) <= 1e-9 * scale * (1.0 + float(x0) ** 2 + float(y0) ** 2)


def tangent_line(C: Conic, p0) -> tuple:
    """Coefficients ``(A, B, D)`` of the tangent ``A x + B y + D = 0`` at ``p0``."""
    if not _on_conic(C, p0):
        raise DomainError(f"point {tuple(p0)} is not on the conic")
    x0, y0 = p0
    a11, a22, a12, a1, a2, c = C.coeffs if _exact(p0) else C.float_coeffs()
    A = a1 + a11 * x0 + a12 * y0
    B = a2 + a12 * x0 + a22 * y0
    D = c + a1 * x0 + a2 * y0
    if A == 0 and B == 0:
        raise SingularPointError("singular point")
    return A, B, D


def _exact(p) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in p)


# -- normal forms and parametrizations ------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Euclidean normal form: ``p = origin + R u`` with ``R`` the rotation by ``theta``.

    ellipse:   u = (alpha cos t, beta sin t)
    hyperbola: u = (t, +-(b/a) sqrt(t^2 + a^2))
    parabola:  u = (t, a t^2)
    """

    kind: ConicKind
    theta: float
    origin: np.ndarray
    params: dict

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    def local(self, p) -> np.ndarray:
        return self.rotation.T @ (np.asarray(p, float) - self.origin)


def _proper_frame(e1: np.ndarray) -> float:
    return math.atan2(e1[1], e1[0])


def normal_form(C: Conic) -> NormalForm:
    cls = classify(C)
    if cls.tag is ConicKind.REDUCIBLE or cls.empty_real_locus:
        raise NotParametrizableError()
    a11, a22, a12, a1, a2, c = C.float_coeffs()
    q = np.array([[a11, a12], [a12, a22]])
    lin = np.array([a1, a2])
    lam, vec = np.linalg.eigh(q)
    d0, d = invariants(C)

    if cls.tag is ConicKind.PARABOLA:
        k0 = int(np.argmin(np.abs(lam)))
        lam_p = float(a11 + a22)
        axis = vec[:, k0]
        theta = math.atan2(-axis[0], axis[1])
        e1 = np.array([math.cos(theta), math.sin(theta)])
        axis = np.array([-math.sin(theta), math.cos(theta)])
        m2 = float(axis @ lin)
        s = -float(e1 @ lin) / lam_p
        p = -(lam_p * s * s + 2 * s * float(e1 @ lin) + c) / (2 * m2)
        vertex = s * e1 + p * axis
        return NormalForm(cls.tag, theta, vertex, {"a": -lam_p / (2 * m2)})

    # central conics: center solves Q x = -L exactly
    cx = (C.a12 * C.a2 - C.a22 * C.a1) / d0
    cy = (C.a12 * C.a1 - C.a11 * C.a2) / d0
    center = np.array([float(cx), float(cy)])
    k = float(d / d0)  # g(center)

    if cls.tag is ConicKind.ELLIPSE:
        e1 = vec[:, 0]
        theta = _proper_frame(e1)
        return NormalForm(
            cls.tag, theta, center,
            {"alpha": math.sqrt(-k / lam[0]), "beta": math.sqrt(-k / lam[1])},
        )

    # hyperbola: transverse axis is the eigendirection with -k / lambda > 0
    kt = 0 if -k / lam[0] > 0 else 1
    kc = 1 - kt
    e1 = vec[:, kc]
    theta = _proper_frame(e1)
    return NormalForm(
        cls.tag, theta, center,
        {"a": math.sqrt(k / lam[kc]), "b": math.sqrt(-k / lam[kt])},
    )


def _placed(nf: NormalForm, local_fn, label: str, inverse) -> ParametricCurve:
    cs, sn = math.cos(nf.theta), math.sin(nf.theta)
    ox, oy = float(nf.origin[0]), float(nf.origin[1])

    def fn(t):
        u1, u2 = local_fn(t)
        return ox + cs * u1 - sn * u2, oy + sn * u1 + cs * u2

    return ParametricCurve(fn, label=label, inverse=inverse)


def parametrize(C: Conic) -> tuple[ParametricCurve, ...]:
    """One branch for ellipses and parabolas, two for hyperbolas."""
    nf = normal_form(C)
    if nf.kind is ConicKind.ELLIPSE:
        al, be = nf.params["alpha"], nf.params["beta"]

        def inv(p):
            u = nf.local(p)
            return math.atan2(u[1] / be, u[0] / al) % (2 * math.pi)

        curve = _placed(nf, lambda t: (al * jet.cos(t), be * jet.sin(t)), "ellipse", inv)
        return (ParametricCurve(curve.fn, (0.0, 2 * math.pi), curve.label, inv),)

    if nf.kind is ConicKind.PARABOLA:
        a = nf.params["a"]
        return (_placed(nf, lambda t: (t, a * t * t), "parabola", lambda p: float(nf.local(p)[0])),)

    a, b = nf.params["a"], nf.params["b"]
    branches = []
    for sign in (1.0, -1.0):
        def local(t, sign=sign):
            return t, sign * (b / a) * jet.sqrt(t * t + a * a)

        branches.append(
            _placed(nf, local, f"hyperbola{'+' if sign > 0 else '-'}", lambda p: float(nf.local(p)[0]))
        )
    return tuple(branches)


def locate(C: Conic, p) -> tuple[int, float]:
    """Branch index and parameter of a point of ``C`` in :func:`parametrize`."""
    branches = parametrize(C)
    best = None
    for k, br in enumerate(branches):
        t = br.inverse(p)
        err = float(np.linalg.norm(br.point(t) - np.asarray(p, float)))
        if best is None or err < best[2]:
            best = (k, t, err)
    return best[0], best[1]


def asymptotic_directions(C: Conic) -> list[np.ndarray]:
    if classify(C).tag is not ConicKind.HYPERBOLA:
        raise DomainError("asymptotic directions need a hyperbola")
    return quadratic_form_directions(C.a11, C.a12, C.a22)


def axis_direction(C: Conic) -> np.ndarray:
    if classify(C).tag is not ConicKind.PARABOLA:
        raise DomainError("axis direction needs a parabola")
    (v,) = quadratic_form_directions(C.a11, C.a12, C.a22)
    return sign_normalize(v)
