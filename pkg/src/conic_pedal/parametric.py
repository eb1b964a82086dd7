"""Smooth plane curves ``t -> (x(t), y(t))`` with analytic derivatives."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .jet import Jet

CurveFn = Callable[[object], tuple[object, object]]


@dataclass(frozen=True)
class ParametricCurve:
    """A plane curve given by a jet-aware callable.

    ``fn`` must accept a float, a numpy array or a :class:`~conic_pedal.jet.Jet`
    and return the pair ``(x, y)``; derivatives of any order then come from
    Taylor propagation rather than finite differences.  ``inverse`` optionally
    maps a point of the curve back to its parameter.
    """

    fn: CurveFn
    domain: tuple[float, float] = (-np.inf, np.inf)
    label: str = ""
    inverse: Optional[Callable[[np.ndarray], float]] = field(default=None, compare=False)

    def __call__(self, t):
        return self.point(t)

    def point(self, t) -> np.ndarray:
        x, y = self.fn(t)
        return np.array([x, y], dtype=float) if np.ndim(t) == 0 else np.stack(
            np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float)), axis=-1
        )

    def jets(self, t: float, order: int) -> tuple[Jet, Jet]:
        tj = Jet.variable(float(t), order)
        x, y = self.fn(tj)
        if not isinstance(x, Jet):
            x = Jet.constant(float(x), order)
        if not isinstance(y, Jet):
            y = Jet.constant(float(y), order)
        return x, y

    def derivatives(self, t: float, order: int = 3) -> np.ndarray:
        """Array of shape ``(order + 1, 2)``: ``gamma, gamma', ..., gamma^(order)``."""
        x, y = self.jets(t, order)
        return np.column_stack([x.derivatives(), y.derivatives()])

    # component accessors
    def x(self, t):
        return self.fn(t)[0]

    def y(self, t):
        return self.fn(t)[1]

    def dx(self, t):
        return self.derivatives(t, 1)[1, 0]

    def dy(self, t):
        return self.derivatives(t, 1)[1, 1]

    def d2x(self, t):
        return self.derivatives(t, 2)[2, 0]

    def d2y(self, t):
        return self.derivatives(t, 2)[2, 1]

    def d3x(self, t):
        return self.derivatives(t, 3)[3, 0]

    def d3y(self, t):
        return self.derivatives(t, 3)[3, 1]

    def contains(self, t: float) -> bool:
        lo, hi = self.domain
        return lo <= t <= hi

    def sample(self, t0: float, t1: float, n: int) -> tuple[np.ndarray, np.ndarray]:
        if n < 2:
            raise ValueError("need at least two samples")
        if not (self.contains(t0) and self.contains(t1)):
            raise ValueError(f"[{t0}, {t1}] is outside the curve domain {self.domain}")
        ts = np.linspace(t0, t1, n)
        return ts, self.point(ts)

    def map(self, g: Callable, label: str = "") -> "ParametricCurve":
        """Compose with a point map ``g(x, y) -> (x', y')`` that is jet-aware."""
        fn = self.fn
        return ParametricCurve(lambda t: g(*fn(t)), self.domain, label or self.label)


def finite_difference_mismatch(curve: ParametricCurve, ts, h: float = 1e-5) -> float:
    """Worst relative gap between analytic derivatives and central differences.

    Order ``k+1`` is checked by differencing the analytic order ``k``, for
    ``k = 0, 1, 2``.
    """
    worst = 0.0
    for t in np.atleast_1d(ts):
        d0 = curve.derivatives(t, 3)
        lo = curve.derivatives(t - h, 3)
        hi = curve.derivatives(t + h, 3)
        fd = (hi[:3] - lo[:3]) / (2 * h)
        an = d0[1:4]
        rel = np.abs(fd - an) / np.maximum(1.0, np.abs(an))
        worst = max(worst, float(rel.max()))
    return worst
