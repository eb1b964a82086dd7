"""Generalized limacons: pedals of circles with respect to the origin."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import jet
from .conic import Conic, ConicKind, classify, invariants
from .errors import DomainError, InputError, TheoremViolation
from .parametric import ParametricCurve
from .poly2 import BivariatePoly, as_fraction
from .singularity import CuspWitness, SingularityKind, SingularityReport, classify_origin

_RHO = BivariatePoly.circle()
_X = BivariatePoly.x()
_Y = BivariatePoly.y()


@dataclass(frozen=True)
class CircleSpec:
    """Circle ``(x-a)^2 + (y-b)^2 = r^2`` stored with the exact square ``r2``."""

    a: Fraction
    b: Fraction
    r2: Fraction

    def __post_init__(self):
        for name in ("a", "b", "r2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.r2 <= 0:
            raise InputError("radius must be positive")

    @classmethod
    def from_radius(cls, a, b, r) -> "CircleSpec":
        r = as_fraction(r)
        if r <= 0:
            raise InputError("radius must be positive")
        return cls(a, b, r * r)

    @property
    def r(self) -> float:
        return math.sqrt(self.r2)

    @property
    def power(self) -> Fraction:
        """``a^2 + b^2 - r^2``: the sign decides the origin type."""
        return self.a**2 + self.b**2 - self.r2

    def as_conic(self) -> Conic:
        return Conic(1, 1, 0, -self.a, -self.b, self.power)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "r2": str(self.r2)}


def limacon_implicit(spec: CircleSpec) -> BivariatePoly:
    a, b, r2 = spec.a, spec.b, spec.r2
    return (
        _RHO**2
        - 2 * (a * _X + b * _Y) * _RHO
        + BivariatePoly({(2, 0): a * a - r2, (1, 1): 2 * a * b, (0, 2): b * b - r2})
    )


def limacon_parametric(spec: CircleSpec) -> ParametricCurve:
    r, a, b = spec.r, float(spec.a), float(spec.b)

    def fn(th):
        c, s = jet.cos(th), jet.sin(th)
        k = r + a * c + b * s
        return k * c, k * s

    return ParametricCurve(fn, (0.0, 2 * math.pi), "limacon")


def limacon_inversion(spec: CircleSpec) -> Conic:
    a, b, r2 = spec.a, spec.b, spec.r2
    return Conic(r2 - a * a, r2 - b * b, -a * b, a, b, -1)


def inversion_invariants(spec: CircleSpec) -> tuple[Fraction, Fraction]:
    """Closed forms ``(r^2 (r^2 - a^2 - b^2), -r^4)``."""
    return spec.r2 * (spec.r2 - spec.a**2 - spec.b**2), -spec.r2**2


def _by_sign(spec: CircleSpec) -> SingularityKind:
    s = spec.power
    if s == 0:
        return SingularityKind.CUSP
    return SingularityKind.ISOLATED_POINT if s < 0 else SingularityKind.NODE


_CLASS_FOR = {
    SingularityKind.CUSP: ConicKind.PARABOLA,
    SingularityKind.ISOLATED_POINT: ConicKind.ELLIPSE,
    SingularityKind.NODE: ConicKind.HYPERBOLA,
}


def cusp_parameter(spec: CircleSpec) -> float | None:
    """Angle at which the parametrization reaches the origin in the cusp case."""
    if spec.power != 0:
        return None
    return math.atan2(-float(spec.b), -float(spec.a)) % (2 * math.pi)


def classify_limacon(spec: CircleSpec) -> SingularityReport:
    expected = _by_sign(spec)
    t0 = cusp_parameter(spec)
    witness = None if t0 is None else CuspWitness(limacon_parametric(spec), t0)
    report = classify_origin(limacon_implicit(spec), witness)
    if report.kind is not expected:
        raise TheoremViolation(
            f"theorem violation: sign rule gives {expected.value}, tangent cone gives {report.kind.value}"
        )
    inv = limacon_inversion(spec)
    if invariants(inv) != inversion_invariants(spec):
        raise TheoremViolation("theorem violation: inversion invariants differ from closed form")
    if classify(inv).tag is not _CLASS_FOR[expected]:
        raise TheoremViolation("theorem violation: inversion class disagrees with sign rule")
    return report


def rotation_reduction(spec: CircleSpec) -> tuple[float, float]:
    """``(A, phi)`` with ``A = sqrt(a^2+b^2)`` and ``(cos phi, sin phi) = (a, b)/A``."""
    if spec.a == 0 and spec.b == 0:
        raise DomainError("already a circle, phi undefined")
    a, b = float(spec.a), float(spec.b)
    return math.hypot(a, b), math.atan2(b, a)


def pascal_limacon(r: float, A: float) -> ParametricCurve:
    def fn(th):
        c, s = jet.cos(th), jet.sin(th)
        k = r + A * c
        return k * c, k * s

    return ParametricCurve(fn, (0.0, 2 * math.pi), "Pascal limacon")


def rotation_gap(spec: CircleSpec, n: int = 100) -> float:
    """Max distance between the limacon rotated by ``-phi`` and the Pascal form."""
    A, phi = rotation_reduction(spec)
    th = np.linspace(0.0, 2 * math.pi, n)
    pts = limacon_parametric(spec).point(th)
    c, s = math.cos(phi), math.sin(phi)
    back = pts @ np.array([[c, -s], [s, c]])
    ref = pascal_limacon(spec.r, A).point(th - phi)
    return float(np.max(np.hypot(*(back - ref).T)))
