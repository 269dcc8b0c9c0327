import itertools

import pytest

from quadsemi.arith import is_perfect_square
from quadsemi.dynamics import GeneratorSet, QuadraticMap, stability_certificate
from quadsemi.exceptional import (
    CERTIFIED,
    FAMILY,
    INAPPLICABLE,
    REFUTED,
    SPORADIC_PAIR,
    THREE_LETTER,
    TWO_LETTER,
    certify_no_square_images,
    check_exceptional_prefix,
    closed_form_of,
    construct_irreducible_prefix,
    critical_orbit_square_check,
    is_exceptional_pair,
    scan_exceptional_pairs,
)


def test_sporadic_pair():
    v = is_exceptional_pair(-1, -3)
    assert v.is_exceptional
    assert v.closed_form.kind == SPORADIC_PAIR


def test_family_pair_with_witnesses():
    v = is_exceptional_pair(-12, -21)
    assert v.is_exceptional
    assert v.closed_form.kind == FAMILY and v.closed_form.s == 2
    assert v.square_periodic == (4, 4)
    b1, p1 = v.image_witnesses[0]
    b2, p2 = v.image_witnesses[1]
    assert b1 * b1 - 12 == p1 and p1 in {4, -4, 5, -5}
    assert b2 * b2 - 21 == p2 and p2 in {4, -4, 3, -3}
    assert (b1, b2) == (4, 5)


def test_non_exceptional_pair():
    v = is_exceptional_pair(-4, -12)
    assert not v.is_exceptional
    assert v.square_periodic[0] is None  # x^2 - 4 has no square periodic point
    assert v.closed_form is None


def test_pair_requires_distinct_constants():
    with pytest.raises(ValueError):
        is_exceptional_pair(5, 5)


def test_closed_form_matching():
    assert closed_form_of(-3, -1).kind == SPORADIC_PAIR
    assert closed_form_of(-21, -12).s == 2
    assert closed_form_of(0, -1).s == 0
    assert closed_form_of(0, -3).s == 1
    assert closed_form_of(-72, -91).s == 3
    assert closed_form_of(-4, -12) is None


def test_scan_matches_classification_small_grid():
    pairs = set(scan_exceptional_pairs(-25, 5))
    expected = {(-1, -3), (0, -1), (0, -3), (-12, -21)}
    expected |= {(b, a) for a, b in expected}
    assert pairs == expected


def test_witness_route_equals_closed_form_route():
    # the dynamical witnesses and the syntactic shapes agree pair by pair
    for c1 in range(-30, 11):
        for c2 in range(-30, 11):
            if c1 == c2:
                continue
            assert (closed_form_of(c1, c2) is not None) == \
                is_exceptional_pair(c1, c2).is_exceptional, (c1, c2)


def test_certify_no_square_images_examples():
    cert = certify_no_square_images(1, 3)
    assert cert.status == CERTIFIED and cert.n_iterate >= 2

    cert = certify_no_square_images(-12, -21)
    assert cert.status == REFUTED
    assert cert.witness_b == 5 and cert.witness_value == 4

    cert = certify_no_square_images(-3, 5)
    assert cert.status == CERTIFIED

    assert certify_no_square_images(0, 5).status == INAPPLICABLE
    assert certify_no_square_images(5, -1).status == INAPPLICABLE
    assert certify_no_square_images(5, 5).status == INAPPLICABLE


def test_certified_direction_agrees_with_sweep():
    for c1, c2 in ((1, 3), (-3, 5), (2, 7)):
        cert = certify_no_square_images(c1, c2)
        assert cert.status == CERTIFIED
        outer, inner = QuadraticMap(c1), QuadraticMap(c2)
        for b in range(10001):
            v = outer.iterate(cert.n_iterate, inner(b))
            assert is_perfect_square(v) is None, (c1, c2, b)


def test_exceptional_prefix_reports():
    for s in (2, 3):
        rep = check_exceptional_prefix(s, b_range=1000)
        assert rep.passed, rep
        assert rep.n_iterate >= 2
        names = [name for name, _ in rep.subchecks]
        assert any("mod 4" in n for n in names)
    with pytest.raises(ValueError):
        check_exceptional_prefix(1)
    with pytest.raises(ValueError):
        check_exceptional_prefix(0)


def test_critical_orbit_square_check():
    assert critical_orbit_square_check(-2, 10) is None
    assert critical_orbit_square_check(3, 10) is None
    assert critical_orbit_square_check(-12, 10) is None
    with pytest.raises(ValueError):
        critical_orbit_square_check(0, 5)
    with pytest.raises(ValueError):
        critical_orbit_square_check(-1, 5)


def test_critical_orbit_square_check_range():
    for c in range(-200, 201):
        if c in (0, -1):
            continue
        assert critical_orbit_square_check(c, 12) is None, c


def test_construct_prefix_non_exceptional():
    rec = construct_irreducible_prefix(GeneratorSet.from_cs([1, 3]))
    assert rec.shape == TWO_LETTER
    assert rec.n_iterate == 2
    assert rec.prefix_word() == (0, 0, 1)


def test_construct_prefix_family_pair():
    S = GeneratorSet.from_cs([-21, -12])
    rec = construct_irreducible_prefix(S)
    assert rec.shape == THREE_LETTER
    # the square-fixed-point map x^2 - 12 must sit outermost
    assert S.maps[rec.outer].c == -12
    assert rec.prefix_word() == (1,) * rec.n_iterate + (0, 1)


def test_construct_prefix_filters_reducible_generators():
    S = GeneratorSet.from_cs([-12, -21, -4])
    rec = construct_irreducible_prefix(S)
    assert rec.shape == THREE_LETTER
    assert S.maps[rec.outer].c == -12 and S.maps[rec.inner].c == -21

    with pytest.raises(ValueError):
        construct_irreducible_prefix(GeneratorSet.from_cs([-4]))
    with pytest.raises(ValueError):
        construct_irreducible_prefix(GeneratorSet.from_cs([-4, 1]))


def test_recipe_expansions_are_certified_quick():
    S = GeneratorSet.from_cs([1, 3])
    rec = construct_irreducible_prefix(S)
    for n in range(1, 3):
        for F in itertools.product(range(len(S)), repeat=n):
            assert stability_certificate(S, rec.expand(F)).certified
