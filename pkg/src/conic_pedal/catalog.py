"""The six shipped examples: three conics and three circles, with their printed equations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .conic import Conic
from .limacon import CircleSpec
from .poly2 import BivariatePoly

_x, _y = BivariatePoly.x(), BivariatePoly.y()
_rho = BivariatePoly.circle()


@dataclass(frozen=True)
class Example:
    name: str
    conic: Conic
    pedal_printed: BivariatePoly
    inversion_printed: BivariatePoly
    conic_class: str
    origin: str  # expected origin type on the pedal
    figures: tuple[int, int, int, int]
    circle: Optional[CircleSpec] = None


def _conic_poly(a11, a22, b, d, e, f):
    """``a11 x^2 + a22 y^2 + b xy + d x + e y + f`` as written (no factor 2)."""
    return a11 * _x**2 + a22 * _y**2 + b * _x * _y + d * _x + e * _y + f


C1 = Conic(4, 3, -1, -3, -2, -6)
C2 = Conic(1, 1, -1, 2, 3, 14)
C3 = Conic(3, 0, -1, 1, -1, 0)

C4 = CircleSpec(3, 0, 9)
C5 = CircleSpec(1, 2, 7)
C6 = CircleSpec(1, 2, 1)

EXAMPLES: dict[str, Example] = {
    "C1": Example(
        "C1", C1,
        _rho**2 - 2 * _x * _rho - 2 * _y * _rho - 2 * _x**2 - 3 * _y**2,
        _conic_poly(2, 3, 0, 2, 2, -1),
        "ellipse", "isolated_point", (1, 2, 3, 4),
    ),
    "C2": Example(
        "C2", C2,
        2 * _x * _rho + 2 * _y * _rho + _x**2 + 8 * _x * _y + 2 * _y**2,
        _conic_poly(1, 2, 8, 2, 2, 0),
        "parabola", "node", (5, 6, 7, 8),
    ),
    "C3": Example(
        "C3", C3,
        _rho**2 + 2 * _x * _rho + 4 * _y * _rho + _x**2 + 2 * _x * _y + _y**2,
        _conic_poly(1, 1, 2, 2, 4, 1),
        "hyperbola", "cusp", (9, 10, 11, 12),
    ),
    "C4": Example(
        "C4", C4.as_conic(),
        _rho**2 - 6 * _x * _rho - 9 * _y**2,
        _conic_poly(0, 9, 0, 6, 0, -1),
        "ellipse", "cusp", (13, 14, 15, 16), C4,
    ),
    "C5": Example(
        "C5", C5.as_conic(),
        _rho**2 - (2 * _x + 4 * _y) * _rho - 6 * _x**2 - 3 * _y**2 + 4 * _x * _y,
        _conic_poly(6, 3, -4, 2, 4, -1),
        "ellipse", "isolated_point", (17, 18, 19, 20), C5,
    ),
    "C6": Example(
        "C6", C6.as_conic(),
        _rho**2 - (2 * _x + 4 * _y) * _rho + 3 * _y**2 + 4 * _x * _y,
        _conic_poly(0, 3, 4, -2, -4, 1),
        "ellipse", "node", (21, 22, 23, 24), C6,
    ),
}
