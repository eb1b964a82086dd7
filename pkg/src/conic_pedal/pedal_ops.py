"""Pedal, anti-pedal and inversion of a conic as exact polynomials.

All constructions take the pedal point at the origin.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .conic import Conic, classify, invariants, ConicKind, parametrize, tangent_line
from .errors import ReducibleConicError, SingularPointError
from .parametric import ParametricCurve
from .poly2 import BivariatePoly


@dataclass(frozen=True)
class CofactorSet:
    D11: Fraction
    D12: Fraction
    D22: Fraction
    D31: Fraction
    D32: Fraction
    D33: Fraction


def cofactors(C: Conic) -> CofactorSet:
    a11, a22, a12, a1, a2, c = C.coeffs
    return CofactorSet(
        D11=a22 * c - a2 * a2,
        D12=-(a12 * c - a1 * a2),
        D22=a11 * c - a1 * a1,
        D31=a12 * a2 - a1 * a22,
        D32=-(a11 * a2 - a1 * a12),
        D33=a11 * a22 - a12 * a12,
    )


def _require_irreducible(C: Conic) -> None:
    if invariants(C)[1] == 0:
        raise ReducibleConicError()


_RHO = BivariatePoly.circle()
_X = BivariatePoly.x()
_Y = BivariatePoly.y()


def pedal_curve(C: Conic) -> BivariatePoly:
    """Implicit equation of the pedal of ``C``: a quartic, or a cubic for parabolas."""
    _require_irreducible(C)
    a11, a22, a12, a1, a2, c = C.coeffs
    return (
        (a12 * a12 - a11 * a22) * _RHO**2
        + 2 * (a12 * a2 - a1 * a22) * _RHO * _X
        + 2 * (a1 * a12 - a2 * a11) * _RHO * _Y
        + BivariatePoly(
            {
                (2, 0): a2 * a2 - a22 * c,
                (1, 1): 2 * (a12 * c - a1 * a2),
                (0, 2): a1 * a1 - a11 * c,
            }
        )
    )


def pedal_curve_from_cofactors(C: Conic) -> BivariatePoly:
    """The same quartic written through the cofactors of the 3x3 matrix."""
    d = cofactors(C)
    return (
        -d.D33 * _RHO**2
        + 2 * d.D31 * _RHO * _X
        + 2 * d.D32 * _RHO * _Y
        + BivariatePoly({(2, 0): -d.D11, (1, 1): -2 * d.D12, (0, 2): -d.D22})
    )


def antipedal_curve(C: Conic) -> Conic:
    """Inversion image of the pedal, returned unscaled in the conic convention."""
    _require_irreducible(C)
    a11, a22, a12, a1, a2, c = C.coeffs
    return Conic(
        a11=a2 * a2 - a22 * c,
        a22=a1 * a1 - a11 * c,
        a12=a12 * c - a1 * a2,
        a1=a12 * a2 - a1 * a22,
        a2=a1 * a12 - a11 * a2,
        c=a12 * a12 - a11 * a22,
    )


def inversion_curve(C: Conic) -> BivariatePoly:
    """Implicit equation of the inversion of ``C``; cubic exactly when ``c = 0``."""
    _require_irreducible(C)
    a11, a22, a12, a1, a2, c = C.coeffs
    return (
        c * _RHO**2
        + 2 * a1 * _X * _RHO
        + 2 * a2 * _Y * _RHO
        + BivariatePoly({(2, 0): a11, (1, 1): 2 * a12, (0, 2): a22})
    )


def _foot(coeffs, x0, y0):
    a11, a22, a12, a1, a2, c = coeffs
    A = a1 + a11 * x0 + a12 * y0
    B = a2 + a12 * x0 + a22 * y0
    k = -(c + a1 * x0 + a2 * y0) / (A * A + B * B)
    return A * k, B * k


def pedal_foot(C: Conic, p0):
    """Foot of the perpendicular from the origin to the tangent of ``C`` at ``p0``.

    Exact (Fractions) for rational ``p0``; floats otherwise.
    """
    A, B, _ = tangent_line(C, p0)
    if A * A + B * B == 0:
        raise SingularPointError("degenerate tangent")
    coeffs = C.coeffs if isinstance(A, Fraction) else C.float_coeffs()
    x, y = _foot(coeffs, p0[0], p0[1])
    return (x, y) if isinstance(x, Fraction) else np.array([x, y], dtype=float)


def pedal_parametrization(C: Conic) -> tuple[ParametricCurve, ...]:
    """Pedal of each branch of :func:`~conic_pedal.conic.parametrize` (jet-aware)."""
    _require_irreducible(C)
    coeffs = C.float_coeffs()
    out = []
    for br in parametrize(C):
        fn = br.fn

        def pedal_fn(t, fn=fn):
            x0, y0 = fn(t)
            return _foot(coeffs, x0, y0)

        out.append(ParametricCurve(pedal_fn, br.domain, f"pedal of {br.label}", None))
    return tuple(out)


@dataclass(frozen=True)
class IdentityReport:
    c: Fraction
    delta: Fraction
    hat_delta0: Fraction
    hat_delta: Fraction

    @property
    def delta0_identity(self) -> bool:
        return self.hat_delta0 == self.c * self.delta

    @property
    def delta_identity(self) -> bool:
        return self.hat_delta == -self.delta * self.delta

    @property
    def holds(self) -> bool:
        return self.delta0_identity and self.delta_identity


def verify_invariant_identities(C: Conic) -> IdentityReport:
    """Invariants of the unscaled anti-pedal against ``c*Delta`` and ``-Delta^2``."""
    _, delta = invariants(C)
    hd0, hd = invariants(antipedal_curve(C))
    return IdentityReport(C.c, delta, hd0, hd)


def antipedal_class(C: Conic) -> ConicKind:
    return classify(antipedal_curve(C)).tag
