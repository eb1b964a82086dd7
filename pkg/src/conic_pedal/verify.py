"""Check list run on a single conic, and seeded random conic generators."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .conic import Conic, ConicKind, classify, invariants, parametrize
from .errors import ConicPedalError, SilhouettePointError, TheoremViolation
from .frontal import (
    LegendrianCurve,
    antipedal_frontal,
    inversion_map,
    inverted_parabola,
    ordinary_cusp_test,
    parabola_cusp_constants,
    pedal_curve_of,
    pedal_frontal,
    primitive_frontal,
)
from .parametric import ParametricCurve
from .pedal_ops import (
    antipedal_curve,
    inversion_curve,
    pedal_curve,
    pedal_curve_from_cofactors,
    pedal_foot,
    verify_invariant_identities,
)
from .poly2 import invert_poly, proportional, scaled_residual, strip_circle_factor
from .singularity import inversion_origin_trichotomy, pedal_origin_trichotomy

SEED_ENV = "CONIC_PEDAL_SEED"
DEFAULT_SEED = 20240601

FOOT_TOL = 1e-9
ANTIPEDAL_TOL = 1e-8
ROUND_TRIP_TOL = 1e-7
CUSP_REL_TOL = 1e-4


def env_seed(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw not in (None, "") else default


# -- random conics ------------------------------------------------------------------


def _rat(rng, lo=-5, hi=5, dens=(1, 2)) -> Fraction:
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.choice(dens)))


def _from_center(q11, q22, q12, h, k, s) -> Conic:
    """``Q(v - v0) - s`` expanded into the conic convention."""
    a1 = -(q11 * h + q12 * k)
    a2 = -(q12 * h + q22 * k)
    c = q11 * h * h + 2 * q12 * h * k + q22 * k * k - s
    return Conic(q11, q22, q12, a1, a2, c)


def random_ellipse(rng, through_origin: bool = False, origin_inside: Optional[bool] = None) -> Conic:
    while True:
        q11, q22, q12 = _rat(rng, 1, 6), _rat(rng, 1, 6), _rat(rng, -3, 3)
        if q11 * q22 - q12 * q12 <= 0:
            continue
        h, k, s = _rat(rng), _rat(rng), _rat(rng, 1, 9)
        C = _from_center(q11, q22, q12, h, k, s)
        if through_origin:
            C = Conic(C.a11, C.a22, C.a12, C.a1, C.a2, 0)
        if invariants(C)[1] == 0:
            continue
        if origin_inside is not None and (C.c < 0) != origin_inside:
            continue
        return C


def random_hyperbola(rng, through_origin: bool = False) -> Conic:
    while True:
        q11, q22, q12 = _rat(rng, -5, 5), _rat(rng, -5, 5), _rat(rng, -4, 4)
        if q11 * q22 - q12 * q12 >= 0:
            continue
        h, k = _rat(rng), _rat(rng)
        s = _rat(rng, -6, 6)
        C = _from_center(q11, q22, q12, h, k, s)
        if through_origin:
            C = Conic(C.a11, C.a22, C.a12, C.a1, C.a2, 0)
        if invariants(C)[1] != 0:
            return C


def random_parabola(rng, through_origin: bool = False) -> Conic:
    while True:
        p, q = int(rng.integers(-3, 4)), int(rng.integers(-3, 4))
        if p == q == 0:
            continue
        lam = _rat(rng, 1, 3)
        a1, a2 = _rat(rng), _rat(rng)
        c = Fraction(0) if through_origin else _rat(rng)
        C = Conic(lam * p * p, lam * q * q, lam * p * q, a1, a2, c)
        if invariants(C)[1] != 0:
            return C


GENERATORS: dict[ConicKind, Callable] = {
    ConicKind.ELLIPSE: random_ellipse,
    ConicKind.HYPERBOLA: random_hyperbola,
    ConicKind.PARABOLA: random_parabola,
}


def random_conic(rng, kind: Optional[ConicKind] = None, c_zero_rate: float = 0.2) -> Conic:
    if kind is None:
        kind = list(GENERATORS)[int(rng.integers(0, 3))]
    return GENERATORS[kind](rng, through_origin=bool(rng.random() < c_zero_rate))


def random_poly(rng, max_degree: int = 4):
    from .poly2 import BivariatePoly

    while True:
        n = int(rng.integers(1, max_degree + 1))
        terms = {}
        for i in range(n + 1):
            for j in range(n + 1 - i):
                if rng.random() < 0.5:
                    terms[(i, j)] = _rat(rng)
        p = BivariatePoly(terms)
        if not p.is_zero():
            return p


# -- sample points ------------------------------------------------------------------


def sample_parameters(branch: ParametricCurve, n: int, rng=None) -> np.ndarray:
    lo, hi = branch.domain
    if np.isfinite(lo) and np.isfinite(hi):
        ts = np.linspace(lo, hi, n, endpoint=False) + (hi - lo) / (2 * n)
    else:
        ts = np.linspace(-3.0, 3.0, n)
    if rng is not None:
        ts = ts + rng.uniform(-0.1, 0.1, size=n) * (ts[1] - ts[0])
    return ts


def _branch_samples(C: Conic, n: int, rng=None):
    branches = parametrize(C)
    per = max(1, n // len(branches))
    for br in branches:
        for t in sample_parameters(br, per, rng):
            yield br, float(t)


def foot_residual(C: Conic, n: int = 100, rng=None) -> float:
    """Worst scaled residual of pedal feet (of sampled points of ``C``) on the pedal curve."""
    G1 = pedal_curve(C)
    worst = 0.0
    for br, t in _branch_samples(C, n, rng):
        try:
            x, y = pedal_foot(C, br.point(t))
        except ConicPedalError:
            continue
        worst = max(worst, scaled_residual(G1, x, y))
    return worst


def antipedal_gap(C: Conic, n: int = 100, rng=None) -> float:
    """Worst relative gap between ``Psi(Pe)`` and ``APe`` at sample points."""
    worst = 0.0
    for br, t in _branch_samples(C, n, rng):
        lc = LegendrianCurve(br)
        try:
            ap = antipedal_frontal(lc, t)
            ip = inversion_map(pedal_frontal(lc, t))
        except ConicPedalError:
            continue
        worst = max(worst, float(np.max(np.abs(ip - ap)) / max(1.0, np.max(np.abs(ap)))))
    return worst


def round_trip_error(C: Conic, n: int = 100, rng=None) -> float:
    """Worst ``|Pr(Pe(gamma)) - gamma|`` relative to ``max(1, |gamma|)``."""
    worst = 0.0
    for br, t in _branch_samples(C, n, rng):
        ped = LegendrianCurve(pedal_curve_of(LegendrianCurve(br)))
        try:
            back = primitive_frontal(ped, t)
        except SilhouettePointError:
            continue
        g = br.point(t)
        worst = max(worst, float(np.max(np.abs(back - g)) / max(1.0, np.max(np.abs(g)))))
    return worst


def cusp_order_check(C: Conic) -> dict:
    """Derivatives of the inverted parabola at the origin against the closed forms."""
    sigma = inverted_parabola(C)
    test = ordinary_cusp_test(sigma, 0.0)
    ref = parabola_cusp_constants(C)
    d = test.derivatives
    h = 1e-3
    fd2 = (sigma.point(h) - 2 * sigma.point(0.0) + sigma.point(-h)) / h**2
    return {
        "is_cusp": test.is_cusp,
        "speed": float(np.hypot(*d[1])),
        "second": d[2],
        "determinant": test.determinant,
        "expected": ref["determinant"],
        "rel_error": abs(test.determinant - ref["determinant"]) / abs(ref["determinant"]),
        "fd_second_gap": float(np.max(np.abs(fd2 - d[2])) / max(1.0, np.max(np.abs(d[2])))),
    }


# -- check list ---------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _guard(name: str, fn) -> Check:
    try:
        return fn()
    except TheoremViolation as exc:
        return Check(name, "FAIL", str(exc))


def double_inversion_returns(C: Conic) -> bool:
    q, _ = strip_circle_factor(invert_poly(invert_poly(C.as_poly())))
    return proportional(q, C.as_poly())


def inversion_link(C: Conic) -> bool:
    q, _ = strip_circle_factor(invert_poly(pedal_curve(C)))
    return proportional(q, antipedal_curve(C).as_poly())


def verify_conic(C: Conic, samples: int = 100, rng=None) -> list[Check]:
    """Every identity, theorem correspondence and pointwise check applicable to ``C``."""
    Delta0, Delta = invariants(C)
    if Delta == 0:
        return [Check("irreducible", "FAIL", "reducible conic")]
    cls = classify(C)
    out = [Check("irreducible", "PASS", f"delta0={Delta0}, delta={Delta}, class={cls.tag.value}")]
    if cls.empty_real_locus:
        out.append(Check("real locus", "SKIP", "empty real locus; geometric checks skipped"))
    ids = verify_invariant_identities(C)
    out.append(Check("hat_delta0 = c*delta", _status(ids.delta0_identity), f"{ids.hat_delta0} vs {ids.c * ids.delta}"))
    out.append(Check("hat_delta = -delta^2", _status(ids.delta_identity), f"{ids.hat_delta} vs {-ids.delta**2}"))
    out.append(Check("cofactor form of the pedal", _status(pedal_curve(C) == pedal_curve_from_cofactors(C))))
    out.append(Check("inversion of pedal = anti-pedal", _status(inversion_link(C))))
    out.append(Check("inversion curve = inverted polynomial", _status(inversion_curve(C) == invert_poly(C.as_poly()))))
    out.append(Check("double inversion", _status(double_inversion_returns(C))))

    def tri(name, fn):
        def run():
            r = fn(C)
            return Check(name, "PASS", f"{r.report.kind.value} <-> {r.conic_class.value}")
        return _guard(name, run)

    if cls.empty_real_locus:
        out.append(Check("pedal trichotomy", "SKIP", "empty real locus"))
        out.append(Check("inversion trichotomy", "SKIP", "empty real locus"))
        return out
    out.append(tri("pedal trichotomy", pedal_origin_trichotomy))
    out.append(tri("inversion trichotomy", inversion_origin_trichotomy))

    fr = foot_residual(C, samples, rng)
    out.append(Check("pedal foot on pedal curve", _status(fr <= FOOT_TOL), f"max scaled residual {fr:.3g}"))
    ag = antipedal_gap(C, samples, rng)
    out.append(Check("inversion of pedal point = anti-pedal point", _status(ag <= ANTIPEDAL_TOL), f"max gap {ag:.3g}"))
    if cls.tag is ConicKind.ELLIPSE and C.c != 0 and C(0, 0) * C.a11 < 0:
        rt = round_trip_error(C, samples, rng)
        out.append(Check("primitive of pedal round trip", _status(rt <= ROUND_TRIP_TOL), f"max error {rt:.3g}"))
    else:
        out.append(Check("primitive of pedal round trip", "SKIP", "needs an ellipse enclosing the origin"))
    if cls.tag is ConicKind.PARABOLA:
        cu = cusp_order_check(C)
        ok = cu["is_cusp"] and cu["speed"] < 1e-9 and cu["rel_error"] <= CUSP_REL_TOL
        out.append(Check("cusp order of inverted parabola", _status(ok), f"det {cu['determinant']:.6g} vs {cu['expected']:.6g}"))
    else:
        out.append(Check("cusp order of inverted parabola", "SKIP", "not a parabola"))
    return out


def all_passed(checks: list[Check]) -> bool:
    return all(c.status != "FAIL" for c in checks)


def random_suite(n: int, seed: Optional[int] = None, samples: int = 20) -> dict:
    """``verify_conic`` over ``n`` random conics cycling through the three classes."""
    seed = env_seed() if seed is None else seed
    rng = np.random.default_rng(seed)
    kinds = list(GENERATORS)
    failures = []
    for i in range(n):
        C = random_conic(rng, kinds[i % 3])
        bad = [c for c in verify_conic(C, samples, rng) if c.status == "FAIL"]
        if bad:
            failures.append({"conic": C.to_json(), "failed": [c.to_json() for c in bad]})
    return {"seed": seed, "count": n, "failures": failures, "passed": not failures}
