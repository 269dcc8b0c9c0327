import math
import random

import pytest

from quadsemi.arith import is_perfect_square
from quadsemi.dynamics import QuadraticMap
from quadsemi.heights import (
    RIGOR_BOX,
    canonical_height,
    compute_iterate_bound,
    height_defect_bound,
    integral_points_on_phi2,
    min_positive_height,
    naive_height,
)
from quadsemi.portraits import preper_set


def test_naive_height_examples():
    assert naive_height(0) == 0.0
    assert naive_height(1) == 0.0
    assert naive_height(100) == pytest.approx(math.log(100))
    assert naive_height(-100) == pytest.approx(math.log(100))


def test_canonical_height_fixed_point_is_zero():
    # the orbit sticks at 4, so the estimate is log(4)/2^n, inside the error band
    est = canonical_height(QuadraticMap(-12), 4, 20)
    assert est.value == pytest.approx(math.log(4) / 2**20)
    assert est.value <= est.error
    assert est.error == pytest.approx(height_defect_bound(QuadraticMap(-12)) / 2**20)


def test_canonical_height_critical_orbit_of_one():
    est = canonical_height(QuadraticMap(1), 0, 30)
    assert est.value > 0
    assert est.error == pytest.approx(2 * math.log(2) / 2**30)


def test_canonical_height_escaping_point():
    est = canonical_height(QuadraticMap(-12), 5, 20)
    assert est.value > 0.5  # 5 -> 13 -> 157 -> ... roughly log(13)/2


def test_canonical_height_agrees_with_plain_iteration_at_small_depth():
    # at depths where the orbit stays exact, value is literally h(f^n(a))/2^n
    f = QuadraticMap(3)
    v = f.iterate(4, 2)
    assert canonical_height(f, 2, 4).value == pytest.approx(math.log(v) / 16)


def test_canonical_height_validates_iterations():
    with pytest.raises(ValueError):
        canonical_height(QuadraticMap(1), 0, 0)


def test_doubling_identity_sampled():
    rng = random.Random(4)
    n = 30
    for _ in range(100):
        c = rng.randint(-50, 50)
        a = rng.randint(-50, 50)
        f = QuadraticMap(c)
        tol = 3 * height_defect_bound(f) / 2**n
        ha = canonical_height(f, a, n).value
        hfa = canonical_height(f, f(a), n).value
        assert abs(hfa - 2 * ha) <= tol, (c, a)


def test_preperiodic_points_have_tiny_value():
    for c in range(-40, 41):
        f = QuadraticMap(c)
        for a in preper_set(c):
            est = canonical_height(f, a, 25)
            assert est.value <= est.error, (c, a)


def test_integral_points_examples():
    assert integral_points_on_phi2(QuadraticMap(-12)) == {
        (4, 2), (4, -2), (-4, 2), (-4, -2)
    }
    assert integral_points_on_phi2(QuadraticMap(3)) == frozenset()
    assert integral_points_on_phi2(QuadraticMap(2)) == frozenset()


def test_integral_points_satisfy_curve_and_match_brute_force():
    for c in range(-60, 61):
        if c in (0, -1):
            continue
        pts = integral_points_on_phi2(QuadraticMap(c))
        for X, Y in pts:
            assert Y * Y == (X * X + c) ** 2 + c
        brute = set()
        for X in range(0, 2001):
            y = is_perfect_square((X * X + c) ** 2 + c)
            if y is not None:
                brute |= {(X, y), (X, -y), (-X, y), (-X, -y)}
        assert pts == frozenset(brute), c


def test_integral_points_degenerate_constants_rejected():
    for c in (0, -1):
        with pytest.raises(ValueError):
            integral_points_on_phi2(QuadraticMap(c))


def test_min_positive_height_examples():
    hmin, rigor = min_positive_height(QuadraticMap(2))
    assert hmin > 0 and rigor == RIGOR_BOX
    hmin, _ = min_positive_height(QuadraticMap(-12))
    assert hmin > 0


def test_min_positive_height_minimizer_for_c_one():
    # every integer wanders under x^2 + 1; the smallest height comes from a=0
    hmin, _ = min_positive_height(QuadraticMap(1))
    assert hmin == canonical_height(QuadraticMap(1), 0, 30).lower


def test_min_positive_height_rejects_degenerate_constants():
    with pytest.raises(ValueError):
        min_positive_height(QuadraticMap(0))


def test_iterate_bound_examples():
    assert compute_iterate_bound(QuadraticMap(3)).N == 2
    assert compute_iterate_bound(QuadraticMap(-12)).N == 2
    for c in (-30, -7, 2, 5, 17, 101):
        bound = compute_iterate_bound(QuadraticMap(c))
        assert bound.N >= 2
        assert bound.B >= bound.hmin > 0
        assert bound.rigor == RIGOR_BOX


def test_iterate_bound_formula_holds():
    for c in (-21, -12, 2, 3, 6):
        bound = compute_iterate_bound(QuadraticMap(c))
        expected = 2 if bound.B <= bound.hmin else math.ceil(
            math.log2(bound.B / bound.hmin)) + 2
        assert bound.N == expected
