"""Exact sparse bivariate polynomials over the rationals.

Curves in this package are zero sets of :class:`BivariatePoly` values.  All
arithmetic is done with :class:`fractions.Fraction`; evaluation is exact for
rational inputs and falls back to floating point (numpy-vectorised) when
given floats or arrays.
"""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import EmptyCurveError, InputError

Exponent = tuple[int, int]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings ("-3/4", "2") to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal literal semantics, not binary expansion
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise InputError(f"not a rational: {value!r}")


def _order_key(e: Exponent) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


class BivariatePoly:
    """Immutable polynomial ``sum a_ij x^i y^j`` with exact coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for (i, j), c in items:
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = as_fraction(c)
            if c:
                clean[(i, j)] = clean.get((i, j), Fraction(0)) + c
                if not clean[(i, j)]:
                    del clean[(i, j)]
        self._terms = clean
        self._hash = None

    # -- construction ----------------------------------------------------
    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def circle(cls) -> "BivariatePoly":
        """The polynomial ``x^2 + y^2``."""
        return cls({(2, 0): 1, (0, 2): 1})

    # -- basic properties --------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    @property
    def lowest_degree(self) -> int:
        if not self._terms:
            return -1
        return min(i + j for i, j in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def homogeneous_part(self, d: int) -> "BivariatePoly":
        return BivariatePoly({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)

    def leading_exponent(self) -> Exponent:
        if not self._terms:
            raise EmptyCurveError()
        return max(self._terms, key=_order_key)

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "BivariatePoly":
        if isinstance(other, BivariatePoly):
            return other
        return BivariatePoly.const(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except InputError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BivariatePoly):
            try:
                k = as_fraction(other)
            except InputError:
                return NotImplemented
            return BivariatePoly({e: c * k for e, c in self._terms.items()})
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = as_fraction(k)
        return BivariatePoly({e: c / k for e, c in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = BivariatePoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BivariatePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == BivariatePoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus --------------------------------------------------------------
    def diff_x(self) -> "BivariatePoly":
        return BivariatePoly({(i - 1, j): c * i for (i, j), c in self._terms.items() if i})

    def diff_y(self) -> "BivariatePoly":
        return BivariatePoly({(i, j - 1): c * j for (i, j), c in self._terms.items() if j})

    # -- evaluation ------------------------------------------------------------
    def __call__(self, x, y):
        return evaluate(self, x, y)

    # -- normalisation -----------------------------------------------------------
    def normalized(self) -> "BivariatePoly":
        """Divide by the coefficient of the largest exponent (total degree, then i)."""
        if not self._terms:
            return self
        return self / self._terms[self.leading_exponent()]

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self._terms.values()), default=Fraction(0))

    # -- text / JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [[i, j, str(c)] for (i, j), c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data) -> "BivariatePoly":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid polynomial JSON: {exc}") from exc
        try:
            rows = data["terms"]
            return cls(((int(i), int(j)), as_fraction(c)) for i, j, c in rows)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"invalid polynomial JSON: {exc}") from exc

    def equation(self) -> str:
        """Human-readable ``... = 0`` form."""
        return f"{self} = 0"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, ((i, j), c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                f"{v}^{p}" if p > 1 else v for v, p in (("x", i), ("y", j)) if p
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"BivariatePoly({self})"


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def evaluate(p: BivariatePoly, x, y):
    """Evaluate ``p`` at ``(x, y)``.

    Exact when both inputs are ints/Fractions; otherwise coefficients are
    converted to float and numpy broadcasting applies.
    """
    if not p._terms:
        return Fraction(0) if _is_exact(x) and _is_exact(y) else np.zeros(np.broadcast(x, y).shape)[()]
    deg_x = max(i for i, _ in p._terms)
    deg_y = max(j for _, j in p._terms)
    if _is_exact(x) and _is_exact(y):
        x, y = Fraction(x), Fraction(y)
        xp = [Fraction(1)]
        for _ in range(deg_x):
            xp.append(xp[-1] * x)
        yp = [Fraction(1)]
        for _ in range(deg_y):
            yp.append(yp[-1] * y)
        return sum((c * xp[i] * yp[j] for (i, j), c in p._terms.items()), Fraction(0))
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xp = [np.ones_like(x)]
    for _ in range(deg_x):
        xp.append(xp[-1] * x)
    yp = [np.ones_like(y)]
    for _ in range(deg_y):
        yp.append(yp[-1] * y)
    total = np.zeros(np.broadcast(x, y).shape)
    for (i, j), c in p._terms.items():
        total = total + float(c) * xp[i] * yp[j]
    return total[()] if total.ndim == 0 else total


def invert_poly(p: BivariatePoly) -> BivariatePoly:
    """Image of ``V(p)`` under the unit-circle inversion.

    Returns ``sum a_ij x^i y^j (x^2+y^2)^(n-i-j)`` with ``n = deg p``, the
    numerator of ``p(x/r, y/r)`` for ``r = x^2+y^2``.
    """
    if p.is_zero():
        raise EmptyCurveError()
    n = p.degree
    rho = BivariatePoly.circle()
    rho_pows = [BivariatePoly.const(1)]
    for _ in range(n):
        rho_pows.append(rho_pows[-1] * rho)
    out = BivariatePoly()
    for (i, j), c in p._terms.items():
        out = out + BivariatePoly({(i, j): c}) * rho_pows[n - i - j]
    return out


def divmod_circle(p: BivariatePoly) -> tuple[BivariatePoly, BivariatePoly]:
    """Exact division by ``x^2 + y^2``: returns ``(q, r)`` with r of x-degree < 2."""
    rem = dict(p._terms)
    quot: dict[Exponent, Fraction] = {}
    while True:
        big = [e for e in rem if e[0] >= 2]
        if not big:
            break
        i, j = max(big)
        c = rem.pop((i, j))
        quot[(i - 2, j)] = quot.get((i - 2, j), 0) + c
        # x^i y^j = x^(i-2) y^j (x^2 + y^2) - x^(i-2) y^(j+2)
        e = (i - 2, j + 2)
        rem[e] = rem.get(e, 0) - c
        if not rem[e]:
            del rem[e]
    return BivariatePoly(quot), BivariatePoly(rem)


def strip_circle_factor(p: BivariatePoly) -> tuple[BivariatePoly, int]:
    """Remove all factors ``x^2 + y^2``; returns ``(q, k)`` with ``p = (x^2+y^2)^k q``."""
    if p.is_zero():
        raise EmptyCurveError()
    k = 0
    while p.degree >= 2:
        q, r = divmod_circle(p)
        if not r.is_zero():
            break
        p, k = q, k + 1
    return p, k


def proportionality_factor(p: BivariatePoly, q: BivariatePoly) -> Fraction | None:
    """The nonzero ``lam`` with ``p == lam * q``, or None."""
    if p.is_zero() or q.is_zero():
        return Fraction(1) if p.is_zero() and q.is_zero() else None
    if p._terms.keys() != q._terms.keys():
        return None
    e = q.leading_exponent()
    lam = p._terms[e] / q._terms[e]
    if all(p._terms[k] == lam * c for k, c in q._terms.items()):
        return lam
    return None


def proportional(p: BivariatePoly, q: BivariatePoly) -> bool:
    return proportionality_factor(p, q) is not None


def scaled_residual(p: BivariatePoly, x, y) -> float:
    """``|p(x,y)|`` with ``p`` scaled to unit max coefficient, over ``1 + |(x,y)|^deg``."""
    m = float(p.max_abs_coeff()) or 1.0
    val = abs(np.asarray(evaluate(p, np.asarray(x, float), np.asarray(y, float)))) / m
    r = np.hypot(x, y)
    return val / (1.0 + r ** max(p.degree, 0))


def quadratic_form_directions(a, b, c) -> list[np.ndarray]:
    """Real unit directions ``v`` with ``a v1^2 + 2 b v1 v2 + c v2^2 = 0``.

    Returns two directions for an indefinite form, one for a degenerate
    (perfect-square) form and none for a definite one.  Each vector has its
    first nonzero component positive; the list is sorted.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = b * b - a * c
    if a == 0 and b == 0 and c == 0:
        raise ValueError("zero quadratic form")
    if disc < 0:
        return []
    af, bf, cf = float(a), float(b), float(c)
    if disc == 0:
        if a != 0:
            dirs = [np.array([-bf, af])]
        else:
            dirs = [np.array([1.0, 0.0])]
    elif a != 0:
        # slopes v1/v2 are q/a and c/q; avoids cancellation in -b +- sqrt(disc)
        s = np.sqrt(float(disc))
        q = -(bf + np.copysign(s, bf))
        dirs = [np.array([q, af]), np.array([cf, q])]
    else:
        dirs = [np.array([1.0, 0.0]), np.array([-cf, 2 * bf])]
    return sorted((sign_normalize(d) for d in dirs), key=lambda v: (v[0], v[1]))


def sign_normalize(v) -> np.ndarray:
    """Unit vector with its first nonzero component positive."""
    v = np.asarray(v, dtype=float)
    n = np.hypot(v[0], v[1])
    if n == 0:
        raise ValueError("zero vector has no direction")
    v = v / n
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = -v
    return v + 0.0


def same_direction(u, v, tol: float) -> bool:
    """Directions agree up to sign within ``tol``."""
    u = sign_normalize(u)
    v = sign_normalize(v)
    return min(np.linalg.norm(u - v), np.linalg.norm(u + v)) <= tol


def same_directions(us, vs, tol: float) -> bool:
    """Unordered sets of directions agree up to sign within ``tol``."""
    us, vs = list(us), list(vs)
    if len(us) != len(vs):
        return False
    remaining = list(vs)
    for u in us:
        hit = next((k for k, v in enumerate(remaining) if same_direction(u, v, tol)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return True
