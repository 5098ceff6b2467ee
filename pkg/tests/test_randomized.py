""" Tests for the randomized zeroness and equivalence procedures."""
from fractions import Fraction

import pytest

from qautomata.random_source import RandomSource
from qautomata.randomized import (ZeroVerdict, equivalent_randomized, isolation_cex, isolation_polynomial,
                                  isolation_weights, normalize_method, zero_isolation, zero_sz, zero_sz_cex,
                                  zero_sz_forward)
from qautomata.wfa import WFA, Alphabet, Verdict, evaluate, is_zero_det

from .conftest import perturbed, random_wfa


def cancelling():
    return WFA.from_lists(('a', 'b'), [1, -1], [1, 1],
                          {'a': [[Fraction(1, 2), 0], [0, Fraction(1, 2)]], 'b': [[0, 1], [1, 0]]})


@pytest.mark.parametrize('test', [zero_sz, zero_sz_forward, zero_sz_cex])
def test_zero_automaton_is_probably_zero(test):
    result = test(cancelling(), 10, RandomSource(1), trials=3)
    assert result.verdict == ZeroVerdict.PROBABLY_ZERO
    assert result.confidence == 1 - Fraction(1, 1000)


def test_zero_state_automaton_is_certainly_zero():
    empty = WFA.zero(Alphabet(('a',)))
    assert zero_sz(empty).confidence == 1
    assert zero_isolation(empty).confidence == 1


def test_empty_word_triggers_immediately():
    a = WFA.from_lists(('a',), [2], [3], {'a': [[0]]})
    for result in (zero_sz(a), zero_sz_cex(a), zero_isolation(a)):
        assert result.nonzero
        assert result.witness == () and result.value == 6


def test_sz_and_sz_cex_agree_on_the_same_seed(nonzero_wfa):
    for seed in range(30):
        plain = zero_sz(nonzero_wfa, 10, RandomSource(seed))
        with_word = zero_sz_cex(nonzero_wfa, 10, RandomSource(seed))
        assert plain.verdict == with_word.verdict
        assert plain.length == with_word.length
        if with_word.nonzero:
            assert evaluate(nonzero_wfa, with_word.witness) == with_word.value != 0
            assert len(with_word.witness) <= nonzero_wfa.n - 1


def test_sz_cex_witness_length_bounded():
    rng = RandomSource(77)
    for _ in range(20):
        a = random_wfa(rng, 3)
        result = zero_sz_cex(a, 10, rng)
        if result.nonzero:
            assert len(result.witness) <= a.n - 1
            assert evaluate(a, result.witness) == result.value != 0
        elif is_zero_det(a) is None:
            assert result.confidence == Fraction(9, 10)


def test_longest_shortest_witness_is_found():
    # the only non-zero word is aaa, of length n - 1
    chain = WFA.from_lists(('a', 'b'), [1, 0, 0, 0], [0, 0, 0, 1],
                           {'a': [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]})
    for seed in range(20):
        for test in (zero_sz, zero_sz_forward):
            assert test(chain, 10, RandomSource(seed)).length == 3
        result = zero_sz_cex(chain, 10, RandomSource(seed))
        assert result.witness == (0, 0, 0) and result.value == 1


def test_k_param_must_be_at_least_two(nonzero_wfa):
    with pytest.raises(ValueError):
        zero_sz(nonzero_wfa, 1)


def test_isolation_weights_range(nonzero_wfa):
    weights = isolation_weights(nonzero_wfa, RandomSource(5))
    assert set(weights) == {(i, s) for i in range(1, 4) for s in (0, 1)}
    assert all(1 <= w <= 12 for w in weights.values())


def test_isolation_polynomial_and_extraction(nonzero_wfa):
    # ab weighs 1 + 5, bb weighs 2 + 5: ab carries the lowest monomial
    weights = {(1, 0): 1, (1, 1): 2, (2, 0): 7, (2, 1): 5, (3, 0): 3, (3, 1): 4}
    p = isolation_polynomial(nonzero_wfa, weights)
    assert p.terms() == [(6, 1), (7, -1)]
    assert isolation_cex(nonzero_wfa, weights, p) == (0, 1)


def test_isolation_extraction_fails_on_a_tie(nonzero_wfa):
    # ab and bb weigh the same: their monomials cancel
    weights = {(1, 0): 2, (1, 1): 2, (2, 0): 7, (2, 1): 5, (3, 0): 3, (3, 1): 4}
    assert isolation_polynomial(nonzero_wfa, weights).is_zero()


def test_zero_isolation_finds_a_word(nonzero_wfa):
    result = zero_isolation(nonzero_wfa, trials=3, rng=RandomSource(9))
    assert result.nonzero
    assert evaluate(nonzero_wfa, result.witness) == result.value != 0


def test_zero_isolation_on_zero_automaton():
    result = zero_isolation(cancelling(), trials=4, rng=RandomSource(3))
    assert result.verdict == ZeroVerdict.PROBABLY_ZERO
    assert result.confidence == Fraction(15, 16)


def test_normalize_method():
    assert normalize_method('sz-cex') == 'sz_cex'
    with pytest.raises(ValueError):
        normalize_method('det')


@pytest.mark.parametrize('method', ['sz', 'sz_cex', 'isolation'])
def test_equivalent_randomized_witnesses(method):
    rng = RandomSource(123)
    for _ in range(10):
        a = random_wfa(rng, 3)
        b = perturbed(a, rng)
        result = equivalent_randomized(a, b, method, 10, 3, rng)
        if result.verdict == Verdict.INEQUIVALENT:
            w = result.witness
            assert evaluate(a, w.word) == w.value_left
            assert evaluate(b, w.word) == w.value_right
            assert w.value_left != w.value_right
        else:
            assert result.verdict == Verdict.PROBABLY_EQUIVALENT


def test_equivalent_randomized_on_equivalent_pair():
    a = random_wfa(RandomSource(8), 3)
    b = WFA(a.n, a.alphabet, {s: m.scale(1) for s, m in a.trans.items()}, a.init, a.final)
    result = equivalent_randomized(a, b, 'sz', 10, 2, RandomSource(8))
    assert result.verdict == Verdict.PROBABLY_EQUIVALENT
    assert result.confidence == Fraction(99, 100)


def test_sz_replay_gives_witness(nonzero_wfa):
    zero = WFA.zero(nonzero_wfa.alphabet, 1)
    result = equivalent_randomized(nonzero_wfa, zero, 'sz', 10, 2, RandomSource(4))
    assert result.verdict == Verdict.INEQUIVALENT
    assert result.witness.word in ((0, 1), (1, 1))
