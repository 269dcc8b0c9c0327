import pytest
from hypothesis import given, strategies as st

from quadsemi.arith import (
    divisor_pairs,
    floor_sqrt,
    is_perfect_square,
    positive_divisors,
    residue_search,
)


def test_perfect_square_examples():
    assert is_perfect_square(0) == 0
    assert is_perfect_square(144) == 12
    assert is_perfect_square(12) is None
    assert is_perfect_square(-4) is None


def test_floor_sqrt_examples():
    assert floor_sqrt(0) == 0
    assert floor_sqrt(15) == 3
    assert floor_sqrt(10**40) == 10**20


def test_floor_sqrt_rejects_negative():
    with pytest.raises(ValueError):
        floor_sqrt(-1)


@given(st.integers(min_value=0, max_value=10**30))
def test_floor_sqrt_sandwich(n):
    r = floor_sqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


@given(st.integers(min_value=-10**18, max_value=10**18))
def test_square_detection_matches_floor_sqrt(n):
    r = is_perfect_square(n)
    if n < 0:
        assert r is None
    elif r is not None:
        assert r >= 0 and r * r == n
    else:
        assert floor_sqrt(n) ** 2 != n


def test_divisor_pairs_examples():
    assert set(divisor_pairs(3)) == {(1, 3), (3, 1), (-1, -3), (-3, -1)}
    pairs12 = divisor_pairs(-12)
    assert len(pairs12) == 12
    assert (-2, 6) in pairs12 and (6, -2) in pairs12
    assert set(divisor_pairs(1)) == {(1, 1), (-1, -1)}


def test_divisor_pairs_rejects_zero():
    with pytest.raises(ValueError):
        divisor_pairs(0)


@given(st.integers(min_value=-5000, max_value=5000).filter(lambda n: n != 0))
def test_divisor_pairs_products_and_count(n):
    pairs = divisor_pairs(n)
    assert all(d * e == n for d, e in pairs)
    assert len(set(pairs)) == len(pairs)
    tau = sum(1 for d in range(1, abs(n) + 1) if abs(n) % d == 0)
    assert len(pairs) == 2 * tau


def test_positive_divisors_sorted():
    assert positive_divisors(-36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]


def test_residue_search_known_obstructions():
    # z^2 - s^2 - 2 and z^2 - s^2 + 2 both vanish nowhere mod 4
    assert residue_search([lambda z, s: z * z - s * s - 2], 2, 4) == []
    assert residue_search([lambda z, s: z * z - s * s + 2], 2, 4) == []


def test_residue_search_keeps_diagonal_solutions():
    hits = residue_search([lambda x, s: x * x - s * s], 2, 4)
    assert (0, 0) in hits and (1, 1) in hits


def test_residue_search_validates_arguments():
    with pytest.raises(ValueError):
        residue_search([lambda *v: 0], 5, 4)
    with pytest.raises(ValueError):
        residue_search([lambda x: x], 1, 1)


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
    st.integers(min_value=2, max_value=6),
)
def test_residue_search_agrees_with_nested_loops(coeffs, m):
    # independent evaluator: direct double loop over all residue vectors
    a, b, c = coeffs

    def expr(x, y):
        return a * x * x + b * y + c

    expected = [
        (x, y) for x in range(m) for y in range(m) if expr(x, y) % m == 0
    ]
    assert residue_search([expr], 2, m) == expected
