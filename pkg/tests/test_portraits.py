from hypothesis import given, strategies as st

from quadsemi.arith import is_perfect_square, residue_search
from quadsemi.dynamics import QuadraticMap
from quadsemi.portraits import (
    FIXED_SQUARE,
    TWO_CYCLE_SQUARE,
    brute_force_preper,
    portrait,
    preper_set,
    rational_periodic_points,
    recognize_square_periodic,
)


def test_periodic_points_examples():
    fixed, cycles = rational_periodic_points(-12)
    assert fixed == {4, -3} and cycles == frozenset()
    fixed, cycles = rational_periodic_points(-1)
    assert fixed == frozenset() and cycles == {(-1, 0)}
    assert rational_periodic_points(1) == (frozenset(), frozenset())


@given(st.integers(-300, 300))
def test_periodic_points_verified_by_evaluation(c):
    f = QuadraticMap(c)
    fixed, cycles = rational_periodic_points(c)
    for p in fixed:
        assert f(p) == p
    for a, b in cycles:
        assert a != b and f(a) == b and f(b) == a


def test_recognize_square_periodic_examples():
    form = recognize_square_periodic(-12)
    assert form.kind == FIXED_SQUARE and form.s == 2
    form = recognize_square_periodic(-21)
    assert form.kind == TWO_CYCLE_SQUARE and form.s == 2
    assert recognize_square_periodic(-4) is None
    assert recognize_square_periodic(0).kind == FIXED_SQUARE
    assert recognize_square_periodic(-1).kind == TWO_CYCLE_SQUARE
    assert recognize_square_periodic(-3) == recognize_square_periodic(-3)
    assert recognize_square_periodic(-3).s == 1


def test_the_two_square_forms_never_collide():
    # s^2 - s^4 = -1 - u^2 - u^4 is impossible: no solutions mod 4
    hits = residue_search([lambda s, u: s * s - s**4 + 1 + u * u + u**4], 2, 4)
    assert hits == []


def test_preper_set_examples():
    assert preper_set(-12) == {4, -4, 3, -3}
    assert preper_set(-3) == {1, -1, 2, -2}
    assert preper_set(0) == {0, 1, -1}


def test_brute_force_examples():
    assert brute_force_preper(-12) == {3, -3, 4, -4}
    assert brute_force_preper(0) == {0, 1, -1}
    assert brute_force_preper(2) == frozenset()


def test_preper_equivalence_medium_range():
    for c in range(-120, 121):
        assert preper_set(c) == brute_force_preper(c), c


def test_preper_forward_closed_and_contains_periodic():
    for c in range(-80, 81):
        f = QuadraticMap(c)
        pts = preper_set(c)
        fixed, cycles = rational_periodic_points(c)
        assert fixed <= pts
        for a, b in cycles:
            assert a in pts and b in pts
        assert all(f(p) in pts for p in pts)


def test_square_form_gives_square_periodic_point():
    for c in range(-150, 151):
        form = recognize_square_periodic(c)
        if form is None:
            continue
        s2 = form.s**2
        pts = preper_set(c)
        assert s2 in pts
        f = QuadraticMap(c)
        # s^2 is genuinely periodic: period 1 or 2
        assert f(s2) == s2 or f(f(s2)) == s2
        assert is_perfect_square(s2) is not None


def test_fixed_form_identities():
    for s in range(0, 12):
        c = s * s - s**4
        f = QuadraticMap(c)
        pts = preper_set(c)
        assert {s * s, -s * s, 1 - s * s, s * s - 1} <= pts
        assert f(-s * s) == f(s * s) == s * s
        assert f(1 - s * s) == f(-(1 - s * s)) == 1 - s * s


@given(st.integers(-200, 200), st.integers(0, 40))
def test_escape_bound(c, off):
    # |f(a)| > |a| whenever |a| >= |c| + 2
    a = abs(c) + 2 + off
    f = QuadraticMap(c)
    assert abs(f(a)) > a
    assert abs(f(-a)) > a


def test_portrait_assembly():
    p = portrait(-12)
    assert p.fixed_points == {4, -3}
    assert p.two_cycles == frozenset()
    assert p.preper == {4, -4, 3, -3}
    assert p.square_form.kind == FIXED_SQUARE and p.square_form.s == 2


def test_backward_closure_used_without_square_form():
    # c = -2: fixed points 2, -1; preimages pull in 0 and +-1, then +-2
    assert recognize_square_periodic(-2) is None
    assert preper_set(-2) == {0, 1, -1, 2, -2}
    assert preper_set(-2) == brute_force_preper(-2)
