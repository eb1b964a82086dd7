"""Local type of the origin on an algebraic curve, and the trichotomy checks.

The verdict comes from the lowest-degree homogeneous part of the defining
polynomial, after removing factors of ``x^2 + y^2`` (which contribute only
the origin as a real point).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .conic import (
    Conic,
    ConicKind,
    asymptotic_directions,
    axis_direction,
    classify,
    locate,
)
from .errors import EmptyCurveError, TheoremViolation
from .frontal import inverted_parabola, ordinary_cusp_test
from .parametric import ParametricCurve
from .pedal_ops import antipedal_curve, inversion_curve, pedal_curve, pedal_parametrization
from .poly2 import (
    BivariatePoly,
    quadratic_form_directions,
    same_direction,
    same_directions,
    sign_normalize,
    strip_circle_factor,
)

DIRECTION_TOL = 1e-9


class SingularityKind(str, enum.Enum):
    NOT_ON_CURVE = "not_on_curve"
    REGULAR_POINT = "regular_point"
    NODE = "node"
    CUSP = "cusp"
    ISOLATED_POINT = "isolated_point"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SingularityReport:
    kind: SingularityKind
    tangents: tuple = ()
    circle_factor_multiplicity: int = 0
    note: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "tangents": [[float(v[0]), float(v[1])] for v in self.tangents],
            "circle_factor_multiplicity": self.circle_factor_multiplicity,
            "note": self.note,
        }


@dataclass(frozen=True)
class CuspWitness:
    """A parametrization passing through the origin at ``t0``."""

    curve: ParametricCurve
    t0: float


def lowest_form(p: BivariatePoly) -> tuple[int, BivariatePoly]:
    d = p.lowest_degree
    return d, p.homogeneous_part(d)


def classify_origin(p: BivariatePoly, witness: Optional[CuspWitness] = None) -> SingularityReport:
    """Classify the origin on ``V(p)``.

    A perfect-square quadratic lowest form is reported as a cusp only when
    ``witness`` passes the ordinary-cusp test at the origin; otherwise the
    verdict is ``DEGENERATE``.
    """
    if p.is_zero():
        raise EmptyCurveError()
    q, k = strip_circle_factor(p)
    d, form = lowest_form(q)
    if d == 0:
        if k:
            return SingularityReport(
                SingularityKind.ISOLATED_POINT, (), k,
                "origin lies only on the x^2+y^2 factor",
            )
        return SingularityReport(SingularityKind.NOT_ON_CURVE, (), 0)
    if d == 1:
        gx, gy = float(form.coeff(1, 0)), float(form.coeff(0, 1))
        return SingularityReport(SingularityKind.REGULAR_POINT, (sign_normalize((-gy, gx)),), k)
    if d >= 3:
        return SingularityReport(SingularityKind.DEGENERATE, (), k, f"lowest form has degree {d}")

    a, b2, c = form.coeff(2, 0), form.coeff(1, 1), form.coeff(0, 2)
    b = b2 / 2
    disc = b * b - a * c
    dirs = tuple(quadratic_form_directions(a, b, c))
    if disc < 0:
        return SingularityReport(SingularityKind.ISOLATED_POINT, (), k)
    if disc > 0:
        return SingularityReport(SingularityKind.NODE, dirs, k)
    if witness is None:
        return SingularityReport(
            SingularityKind.DEGENERATE, dirs, k,
            "double-line tangent cone; no parametrization supplied to confirm a cusp",
        )
    at = witness.curve.point(witness.t0)
    if np.hypot(*at) > 1e-7:
        return SingularityReport(
            SingularityKind.DEGENERATE, dirs, k, "witness does not pass through the origin"
        )
    test = ordinary_cusp_test(witness.curve, witness.t0)
    if not test.is_cusp:
        return SingularityReport(
            SingularityKind.DEGENERATE, dirs, k, "witness fails the ordinary-cusp test"
        )
    if not same_direction(test.tangent, dirs[0], 1e-6):
        return SingularityReport(
            SingularityKind.DEGENERATE, dirs, k, "witness tangent disagrees with the tangent cone"
        )
    return SingularityReport(SingularityKind.CUSP, dirs, k)


def pedal_cusp_witness(C: Conic) -> Optional[CuspWitness]:
    """Pedal of the branch of ``C`` through the origin, if there is one."""
    if C.c != 0:
        return None
    k, t0 = locate(C, (0.0, 0.0))
    return CuspWitness(pedal_parametrization(C)[k], t0)


def inversion_cusp_witness(C: Conic) -> Optional[CuspWitness]:
    if classify(C).tag is not ConicKind.PARABOLA:
        return None
    return CuspWitness(inverted_parabola(C), 0.0)


_EXPECTED = {
    ConicKind.ELLIPSE: SingularityKind.ISOLATED_POINT,
    ConicKind.HYPERBOLA: SingularityKind.NODE,
    ConicKind.PARABOLA: SingularityKind.CUSP,
}


@dataclass(frozen=True)
class TrichotomyResult:
    report: SingularityReport
    conic_class: ConicKind
    reference: Conic
    consistent: bool = True
    details: dict = field(default_factory=dict)


def _check_correspondence(report: SingularityReport, reference: Conic) -> TrichotomyResult:
    tag = classify(reference).tag
    expected = _EXPECTED.get(tag)
    if expected is None or report.kind is not expected:
        raise TheoremViolation(
            f"theorem violation: origin is {report.kind.value} but the conic is {tag.value}"
        )
    details = {}
    if tag is ConicKind.HYPERBOLA:
        asym = asymptotic_directions(reference)
        details["asymptotes"] = asym
        if not same_directions(report.tangents, asym, DIRECTION_TOL):
            raise TheoremViolation("theorem violation: node tangents differ from the asymptotes")
    elif tag is ConicKind.PARABOLA:
        axis = axis_direction(reference)
        details["axis"] = axis
        if not same_directions(report.tangents, [axis], DIRECTION_TOL):
            raise TheoremViolation("theorem violation: cusp tangent differs from the axis")
    return TrichotomyResult(report, tag, reference, True, details)


def pedal_origin_trichotomy(C: Conic) -> TrichotomyResult:
    """Origin type on the pedal against the class of the anti-pedal conic."""
    report = classify_origin(pedal_curve(C), pedal_cusp_witness(C))
    return _check_correspondence(report, antipedal_curve(C))


def inversion_origin_trichotomy(C: Conic) -> TrichotomyResult:
    """Origin type on the inversion of ``C`` against the class of ``C`` itself."""
    report = classify_origin(inversion_curve(C), inversion_cusp_witness(C))
    return _check_correspondence(report, C)


def origin_form_determinant(p: BivariatePoly) -> Fraction:
    """``a c - b^2`` for the quadratic part ``a x^2 + 2b xy + c y^2`` of ``p``."""
    form = p.homogeneous_part(2)
    a, b, c = form.coeff(2, 0), form.coeff(1, 1) / 2, form.coeff(0, 2)
    return a * c - b * b
