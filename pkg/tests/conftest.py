import sys
from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from conic_pedal.conic import Conic, invariants
from conic_pedal.poly2 import BivariatePoly

X, Y = sp.symbols("x y")

rationals = st.builds(
    Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3])
)


def to_sympy(p: BivariatePoly):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * X**i * Y**j for (i, j), c in p.terms.items()))


def from_sympy(expr) -> BivariatePoly:
    poly = sp.Poly(sp.expand(expr), X, Y)
    return BivariatePoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@st.composite
def polys(draw, max_degree=4):
    n = draw(st.integers(0, max_degree))
    exps = [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]
    chosen = draw(st.lists(st.sampled_from(exps), min_size=1, max_size=len(exps), unique=True))
    return BivariatePoly({e: draw(rationals) for e in chosen})


@st.composite
def conics(draw):
    vals = [draw(rationals) for _ in range(6)]
    C = None
    if any(vals[:3]):
        C = Conic(*vals)
    from hypothesis import assume

    assume(C is not None and invariants(C)[1] != 0)
    return C


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
