""" Tests for weighted automata and the deterministic procedures."""
from fractions import Fraction

import pytest

from qautomata.errors import AlphabetMismatchError, BudgetExceededError, DimensionError, ForeignSymbolError
from qautomata.linalg import QMatrix, QVector, rank
from qautomata.minimize import gram_forward
from qautomata.random_source import RandomSource
from qautomata.wfa import (WFA, Alphabet, EquivResult, Verdict, Witness, backward_basis_det, difference,
                           enumerate_oracle, equivalent_det, evaluate, evaluate_labels, forward_basis_det,
                           is_zero_det, is_zero_det_backward, transpose)

from .conftest import random_pair, random_wfa


def test_alphabet():
    alphabet = Alphabet(('a', 'b'))
    assert alphabet.encode(['b', 'a']) == (1, 0)
    assert alphabet.decode((0, 0, 1)) == ['a', 'a', 'b']
    assert 'a' in alphabet and 'c' not in alphabet
    with pytest.raises(ForeignSymbolError):
        alphabet.index('c')
    with pytest.raises(ValueError):
        Alphabet(('a', 'a'))
    with pytest.raises(ValueError):
        Alphabet(('a b',))


def test_evaluate(nonzero_wfa):
    assert evaluate_labels(nonzero_wfa, ['a', 'b']) == 1
    assert evaluate_labels(nonzero_wfa, ['b', 'b']) == -1
    assert evaluate_labels(nonzero_wfa, ['a', 'a']) == 0
    assert evaluate(nonzero_wfa, ()) == 0
    assert nonzero_wfa((0, 1)) == 1
    with pytest.raises(ForeignSymbolError):
        evaluate(nonzero_wfa, (2,))


def test_constructor_checks():
    with pytest.raises(DimensionError):
        WFA(2, Alphabet(('a',)), {0: QMatrix.identity(3)}, QVector.zeros(2, 'row'), QVector.zeros(2, 'column'))
    with pytest.raises(DimensionError):
        WFA(2, Alphabet(('a',)), {}, QVector.zeros(2, 'column'), QVector.zeros(2, 'column'))
    with pytest.raises(ForeignSymbolError):
        WFA(1, Alphabet(('a',)), {3: QMatrix.identity(1)}, QVector.zeros(1, 'row'), QVector.zeros(1, 'column'))


def test_zero_state_automaton():
    empty = WFA.zero(Alphabet(('a',)))
    assert evaluate(empty, (0, 0)) == 0
    assert is_zero_det(empty) is None
    assert forward_basis_det(empty)[0].rows == 0


def test_transpose_reverses_words():
    a = random_wfa(RandomSource(3), 3)
    for word in [(0,), (0, 1), (1, 1, 0), (0, 1, 1, 0)]:
        assert evaluate(transpose(a), word) == evaluate(a, tuple(reversed(word)))


def test_difference():
    rng = RandomSource(5)
    b, c = random_wfa(rng, 2), random_wfa(rng, 3)
    d = difference(b, c)
    assert d.n == 5
    for word in [(), (0,), (1, 0), (0, 0, 1)]:
        assert evaluate(d, word) == evaluate(b, word) - evaluate(c, word)


def test_difference_needs_same_alphabet():
    with pytest.raises(AlphabetMismatchError):
        difference(random_wfa(RandomSource(1), 2, 1), random_wfa(RandomSource(1), 2, 2))


def test_forward_basis_words_generate_rows(nonzero_wfa):
    basis, words = forward_basis_det(nonzero_wfa)
    assert basis.rows == len(words) == 3
    assert words[0] == ()
    for i, word in enumerate(words):
        vector = nonzero_wfa.init
        for s in word:
            vector = vector @ nonzero_wfa.trans[s]
        assert basis.row(i) == vector


def test_backward_basis(nonzero_wfa):
    basis, words = backward_basis_det(nonzero_wfa)
    assert basis.cols == len(words)
    for j, word in enumerate(words):
        vector = nonzero_wfa.final
        for s in reversed(word):
            vector = nonzero_wfa.trans[s] @ vector
        assert basis.col(j) == vector


def test_is_zero_det_witness_is_shortest(nonzero_wfa):
    witness = is_zero_det(nonzero_wfa)
    assert witness == (0, 1)
    backward = is_zero_det_backward(nonzero_wfa)
    assert len(backward) == 2 and evaluate(nonzero_wfa, backward) != 0


def test_is_zero_det_on_a_cancelling_automaton():
    # the two runs on every word cancel
    a = WFA.from_lists(('a', 'b'), [1, -1], [1, 1],
                       {'a': [[Fraction(1, 2), 0], [0, Fraction(1, 2)]], 'b': [[0, 1], [1, 0]]})
    assert is_zero_det(a) is None
    assert is_zero_det_backward(a) is None


def test_equivalent_det_self_and_perturbed(nonzero_wfa):
    a = random_wfa(RandomSource(11), 3)
    assert equivalent_det(a, a).verdict == Verdict.EQUIVALENT
    trans = dict(nonzero_wfa.trans)
    trans[0] = trans[0].scale(2)
    b = WFA(3, nonzero_wfa.alphabet, trans, nonzero_wfa.init, nonzero_wfa.final)
    result = equivalent_det(nonzero_wfa, b)
    assert result.verdict == Verdict.INEQUIVALENT
    w = result.witness
    assert w.word == (0, 1)
    assert (w.value_left, w.value_right) == (1, 2)


def test_equiv_result_contract():
    with pytest.raises(ValueError):
        EquivResult(Verdict.EQUIVALENT, Witness((), 1, 2))
    with pytest.raises(ValueError):
        EquivResult(Verdict.INEQUIVALENT, Witness((), 1, 1))
    assert EquivResult(Verdict.PROBABLY_EQUIVALENT, confidence=Fraction(9, 10)).equivalent


@pytest.mark.parametrize('seed', range(40))
def test_equivalent_det_matches_enumeration(seed):
    b, c = random_pair(seed)
    result = equivalent_det(b, c)
    maxlen = b.n + c.n - 1
    values_b = enumerate_oracle(b, maxlen)
    values_c = enumerate_oracle(c, maxlen)
    first_difference = next((word for (word, x), (_, y) in zip(values_b, values_c) if x != y), None)
    if first_difference is None:
        assert result.verdict == Verdict.EQUIVALENT
    else:
        assert result.verdict == Verdict.INEQUIVALENT
        assert len(result.witness.word) == len(first_difference)
        assert len(result.witness.word) <= maxlen


@pytest.mark.parametrize('seed', range(20))
def test_gram_rank_matches_worklist(seed):
    rng = RandomSource(seed)
    a = random_wfa(rng, rng.randint(1, 4), rng.randint(1, 3))
    assert rank(gram_forward(a)) == forward_basis_det(a)[0].rows


def test_enumerate_oracle_budget(nonzero_wfa):
    words = enumerate_oracle(nonzero_wfa, 2)
    assert [word for word, _ in words][:4] == [(), (0,), (1,), (0, 0)]
    assert dict(words)[(0, 1)] == 1
    with pytest.raises(BudgetExceededError):
        enumerate_oracle(nonzero_wfa, 20, budget=1000)
