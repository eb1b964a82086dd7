import numpy as np
import pytest

from conic_pedal.catalog import EXAMPLES
from conic_pedal.conic import Conic, ConicKind, classify, invariants
from conic_pedal.verify import (
    all_passed,
    env_seed,
    random_conic,
    random_ellipse,
    random_poly,
    random_suite,
    verify_conic,
)


@pytest.mark.parametrize("name", list(EXAMPLES))
def test_examples_pass_every_check(name):
    checks = verify_conic(EXAMPLES[name].conic, 40)
    assert all_passed(checks), [c for c in checks if c.status == "FAIL"]


def test_generators_hit_requested_class():
    rng = np.random.default_rng(0)
    for kind in (ConicKind.ELLIPSE, ConicKind.HYPERBOLA, ConicKind.PARABOLA):
        for _ in range(20):
            C = random_conic(rng, kind)
            assert classify(C).tag is kind and not classify(C).empty_real_locus
            assert invariants(C)[1] != 0


def test_origin_inside_ellipses():
    rng = np.random.default_rng(1)
    for _ in range(20):
        C = random_ellipse(rng, origin_inside=True)
        assert C.c * C.a11 < 0


def test_random_poly_degree_bound():
    rng = np.random.default_rng(2)
    assert all(0 <= random_poly(rng).degree <= 4 for _ in range(50))


def test_reducible_conic_fails_fast():
    checks = verify_conic(Conic(1, -1, 0, 0, 0, 0))
    assert [c.status for c in checks] == ["FAIL"]


def test_empty_ellipse_skips_geometry():
    checks = verify_conic(Conic(1, 1, 0, 0, 0, 1))
    assert all_passed(checks)
    assert any(c.status == "SKIP" for c in checks)


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("CONIC_PEDAL_SEED", "99")
    assert env_seed() == 99
    monkeypatch.delenv("CONIC_PEDAL_SEED")
    assert env_seed(5) == 5


def test_random_suite_is_reproducible():
    a, b = random_suite(9, seed=4, samples=8), random_suite(9, seed=4, samples=8)
    assert a == b and a["passed"]
