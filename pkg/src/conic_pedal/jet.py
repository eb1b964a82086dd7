"""Truncated Taylor series ("jets") for exact-to-rounding derivatives.

A :class:`Jet` of order ``K`` holds the Taylor coefficients ``c[0..K]`` of a
scalar function around a base point.  Curve callables written with ordinary
arithmetic plus :func:`sqrt`, :func:`sin`, :func:`cos` work unchanged on
floats, numpy arrays and jets, which is how :class:`ParametricCurve` gets its
analytic derivatives.
"""
from __future__ import annotations

import math
from numbers import Real

import numpy as np


class Jet:
    __slots__ = ("c",)
    # numpy scalars/arrays defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, t0: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = t0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self) -> float:
        return float(self.c[0])

    def derivatives(self) -> np.ndarray:
        """Return ``[f, f', f'', ...]`` at the base point."""
        k = np.arange(len(self.c))
        return self.c * np.array([math.factorial(int(i)) for i in k], dtype=float)

    def derivative(self) -> "Jet":
        """Jet of the derivative; one order shorter."""
        k = np.arange(1, len(self.c))
        return Jet(self.c[1:] * k)

    def shift(self) -> "Jet":
        """Divide by the local parameter, dropping the constant term."""
        return Jet(self.c[1:])

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if len(other.c) != len(self.c):
                n = min(len(other.c), len(self.c))
                return Jet(other.c[:n])
            return other
        return Jet.constant(float(other), self.order)

    def _pair(self, other):
        o = self._coerce(other)
        n = min(len(self.c), len(o.c))
        return self.c[:n], o.c[:n]

    def __add__(self, other):
        if not isinstance(other, (Jet, Real)):
            return NotImplemented
        a, b = self._pair(other)
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (Jet, Real)):
            return NotImplemented
        a, b = self._pair(other)
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet(np.convolve(a, b)[: len(a)])
        if isinstance(other, Real):
            return Jet(self.c * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        if isinstance(other, Real):
            return Jet(self.c / float(other))
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Jet.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def reciprocal(self) -> "Jet":
        a = self.c
        if a[0] == 0.0:
            raise ZeroDivisionError("jet reciprocal at a zero")
        r = np.zeros_like(a)
        r[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            r[k] = -np.dot(a[1 : k + 1], r[k - 1 :: -1][:k]) / a[0]
        return Jet(r)

    def sqrt(self) -> "Jet":
        a = self.c
        if a[0] <= 0.0:
            raise ValueError("jet sqrt needs a positive base value")
        s = np.zeros_like(a)
        s[0] = math.sqrt(a[0])
        for k in range(1, len(a)):
            acc = a[k] - np.dot(s[1:k], s[k - 1 : 0 : -1])
            s[k] = acc / (2.0 * s[0])
        return Jet(s)

    def sincos(self) -> tuple["Jet", "Jet"]:
        u = self.c
        n = len(u)
        s = np.zeros(n)
        c = np.zeros(n)
        s[0], c[0] = math.sin(u[0]), math.cos(u[0])
        for k in range(1, n):
            j = np.arange(1, k + 1)
            s[k] = np.dot(j * u[1 : k + 1], c[k - 1 :: -1][:k]) / k
            c[k] = -np.dot(j * u[1 : k + 1], s[k - 1 :: -1][:k]) / k
        return Jet(s), Jet(c)

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"Jet({self.c.tolist()})"


def sqrt(x):
    if isinstance(x, Jet):
        return x.sqrt()
    return np.sqrt(x)


def sin(x):
    if isinstance(x, Jet):
        return x.sincos()[0]
    return np.sin(x)


def cos(x):
    if isinstance(x, Jet):
        return x.sincos()[1]
    return np.cos(x)
