import pytest
from hypothesis import given, settings, strategies as st

from quadsemi.arith import is_perfect_square
from quadsemi.dynamics import (
    GeneratorSet,
    QuadraticMap,
    SequenceSampler,
    adjusted_critical_orbit,
    compose_word,
    monte_carlo_stability,
    scan_words,
    stability_certificate,
)
from quadsemi.oracle import poly_eval


def test_evaluate_examples():
    assert QuadraticMap(-12)(-4) == 4
    assert QuadraticMap(0)(0) == 0
    assert QuadraticMap(5)(10) == 105


def test_iterate_examples():
    assert QuadraticMap(-12).iterate(3, 0) == 17412  # 0 -> -12 -> 132 -> 17412
    assert QuadraticMap(-1).iterate(2, 0) == 0       # the 2-cycle 0 <-> -1
    assert QuadraticMap(7).iterate(0, 7) == 7


def test_iterate_rejects_negative_count():
    with pytest.raises(ValueError):
        QuadraticMap(1).iterate(-1, 0)


def test_generator_set_validation():
    with pytest.raises(ValueError):
        GeneratorSet.from_cs([])
    with pytest.raises(ValueError):
        GeneratorSet.from_cs([3, 3])


def test_compose_word_examples():
    # (x^2-1) o (x^2-12) = x^4 - 24x^2 + 143
    S = GeneratorSet.from_cs([-1, -12])
    assert compose_word(S, (0, 1)) == [143, 0, -24, 0, 1]
    assert compose_word(GeneratorSet.from_cs([5]), (0,)) == [5, 0, 1]
    assert compose_word(GeneratorSet.from_cs([0, 1]), (0, 0)) == [0, 0, 0, 0, 1]


def test_compose_word_degree_cap():
    S = GeneratorSet.from_cs([1])
    with pytest.raises(ValueError):
        compose_word(S, (0,) * 9)  # degree 512 > 256
    assert len(compose_word(S, (0,) * 8)) == 257


def test_adjusted_critical_orbit_examples():
    S = GeneratorSet.from_cs([-4, -12])
    assert adjusted_critical_orbit(S, (1, 0)) == [12, 4]
    assert adjusted_critical_orbit(S, (1, 1)) == [12, 132]
    assert adjusted_critical_orbit(S, (0,)) == [4]


def test_stability_certificate_examples():
    S = GeneratorSet.from_cs([-4, -12])
    v = stability_certificate(S, (1, 0))
    assert not v.certified and v.first_square_index == 2 and v.witness_root == 2
    assert stability_certificate(S, (1, 1)).certified
    v = stability_certificate(S, (0, 1, 0))
    assert not v.certified and v.first_square_index == 1 and v.witness_root == 2


def test_word_validation():
    S = GeneratorSet.from_cs([1, 2])
    with pytest.raises(ValueError):
        adjusted_critical_orbit(S, ())
    with pytest.raises(ValueError):
        stability_certificate(S, (0, 2))


def test_scan_words_constant_sequence_story():
    # over {x^2-4, x^2-12} only the constant x^2-12 words stay square-free
    S = GeneratorSet.from_cs([-4, -12])
    results = scan_words(S, 3)
    assert len(results) == 2 + 4 + 8
    certified = sorted(w for w, v in results if v.certified)
    assert certified == [(1,), (1, 1), (1, 1, 1)]


def test_scan_words_single_generator_and_edge_cases():
    res = scan_words(GeneratorSet.from_cs([1]), 2)
    assert [w for w, v in res if v.certified] == [(0,), (0, 0)]
    assert scan_words(GeneratorSet.from_cs([1, 2]), 0) == []
    with pytest.raises(ValueError):
        scan_words(GeneratorSet.from_cs([1, 2]), 25)  # budget


def test_scan_words_dictionary_order():
    res = scan_words(GeneratorSet.from_cs([1, 2]), 2)
    assert [w for w, _ in res] == [(0,), (0, 0), (0, 1), (1,), (1, 0), (1, 1)]


words = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(-6, 6), min_size=2, max_size=3, unique=True),
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
    )
)


@given(words)
@settings(max_examples=60)
def test_orbit_entries_match_composed_prefixes(case):
    cs, word = case
    S = GeneratorSet.from_cs(cs)
    word = tuple(i % len(cs) for i in word)
    orbit = adjusted_critical_orbit(S, word)
    assert orbit[0] == -S.maps[word[0]].c
    for k in range(2, len(word) + 1):
        prefix_poly = compose_word(S, word[:k])
        assert orbit[k - 1] == poly_eval(prefix_poly, 0)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_unknown_at_first_position_iff_negated_constant_square(c1, c2):
    if c1 == c2:
        return
    S = GeneratorSet.from_cs([c1, c2])
    v = stability_certificate(S, (0, 1))
    if is_perfect_square(-c1) is not None:
        assert not v.certified and v.first_square_index == 1
    else:
        assert v.certified or v.first_square_index > 1


def test_sampler_validation():
    with pytest.raises(ValueError):
        SequenceSampler((), 1)
    with pytest.raises(ValueError):
        SequenceSampler((1.0, 0.0), 1)


def test_monte_carlo_single_trial_is_bernoulli():
    S = GeneratorSet.from_cs([-4, -12])
    est = monte_carlo_stability(S, SequenceSampler.uniform(2, 123), 5, 1)
    assert est in (0.0, 1.0)


def test_monte_carlo_seed_reproducible_and_thread_independent():
    S = GeneratorSet.from_cs([-4, -12])
    sampler = SequenceSampler.uniform(2, 42)
    a = monte_carlo_stability(S, sampler, 8, 4000)
    b = monte_carlo_stability(S, sampler, 8, 4000)
    c = monte_carlo_stability(S, sampler, 8, 4000, threads=4)
    assert a == b == c


def test_monte_carlo_single_generator_all_square_free():
    S = GeneratorSet.from_cs([1])
    assert monte_carlo_stability(S, SequenceSampler.uniform(1, 9), 6, 100) == 1.0


def test_monte_carlo_weight_count_mismatch():
    S = GeneratorSet.from_cs([1, 2])
    with pytest.raises(ValueError):
        monte_carlo_stability(S, SequenceSampler.uniform(3, 1), 4, 10)
