""" Tests for visibly pushdown automata and their equivalence."""
from fractions import Fraction

import numpy as np
import pytest

from qautomata.errors import AlphabetMismatchError, NotWellMatchedError
from qautomata.linalg import QMatrix, QVector
from qautomata.random_source import RandomSource
from qautomata.residues import random_prime, rational_mod
from qautomata.trials import TrialRunner
from qautomata.vpa import (WVPA, MatchedPair, VisiblyAlphabet, _mulmod, is_well_matched, level_sum_exact,
                           level_sum_mod, random_well_matched, span_stabilisation, vpa_difference, vpa_equivalent,
                           vpa_equivalent_exact, vpa_evaluate, vpa_product)
from qautomata.wfa import Verdict

from .conftest import VPA_ALPHABET, random_wvpa

CALL, RET, A, B = 0, 1, 2, 3


def counter():
    """One state; a pair weighs 2, each internal 1/2."""
    one = QMatrix.identity(1)
    return WVPA(1, VPA_ALPHABET, ('s',), {(CALL, 0): one.scale(2)}, {(RET, 0): one},
                {A: one.scale(Fraction(1, 2)), B: one.scale(Fraction(1, 2))},
                QVector.from_list([1], 'row'), QVector.from_list([1], 'column'))


def test_alphabet_classes():
    assert VPA_ALPHABET.kind(CALL) == 'call'
    assert VPA_ALPHABET.kind(RET) == 'return'
    assert VPA_ALPHABET.kind(B) == 'internal'
    assert VPA_ALPHABET.encode(['<', 'a', '>']) == (CALL, A, RET)
    with pytest.raises(ValueError, match='listed as both'):
        VisiblyAlphabet(('x',), ('x',), ())


def test_is_well_matched():
    assert is_well_matched(VPA_ALPHABET, ()) == ()
    assert is_well_matched(VPA_ALPHABET, (A, CALL, B, RET)) == (A, MatchedPair(CALL, (B,), RET))
    assert is_well_matched(VPA_ALPHABET, (CALL, A)) is None
    assert is_well_matched(VPA_ALPHABET, (RET, CALL)) is None


def test_evaluate_counter():
    a = counter()
    assert vpa_evaluate(a, ()) == 1
    assert vpa_evaluate(a, (CALL, CALL, RET, A, RET)) == 2
    with pytest.raises(NotWellMatchedError):
        vpa_evaluate(a, (CALL,))


def test_evaluate_uses_the_stack_symbol():
    # the call pushes s0 or s1, only s1 reaches the return matrix
    alphabet = VisiblyAlphabet(('<',), ('>',), ())
    e = QMatrix.identity(1)
    a = WVPA(1, alphabet, ('s0', 's1'), {(0, 0): e.scale(3), (0, 1): e.scale(5)}, {(1, 1): e},
             {}, QVector.from_list([1], 'row'), QVector.from_list([1], 'column'))
    assert vpa_evaluate(a, (0, 1)) == 5


@pytest.mark.parametrize('seed', range(20))
def test_product_law(seed):
    rng = RandomSource(seed)
    a = random_wvpa(rng, rng.randint(1, 2), rng.randint(1, 2))
    b = random_wvpa(rng, rng.randint(1, 2), rng.randint(1, 2))
    product = vpa_product(a, b)
    assert product.n == a.n * b.n
    for _ in range(25):
        word = random_well_matched(VPA_ALPHABET, 8, rng)
        assert is_well_matched(VPA_ALPHABET, word) is not None
        assert vpa_evaluate(product, word) == vpa_evaluate(a, word) * vpa_evaluate(b, word)


def test_random_well_matched_respects_length():
    rng = RandomSource(3)
    for _ in range(50):
        word = random_well_matched(VPA_ALPHABET, 6, rng)
        assert len(word) <= 6
        assert is_well_matched(VPA_ALPHABET, word) is not None


def test_level_sums_of_the_counter():
    # level 0: eps, a, b -> 1 + 1/2 + 1/2; S_1 = 2 S_0 + S_0 S_0
    assert level_sum_exact(counter(), 0) == 2
    assert level_sum_exact(counter(), 1) == 8


def test_level_sum_mod_matches_exact():
    rng = RandomSource(17)
    for _ in range(5):
        a = random_wvpa(rng, 2)
        p = random_prime(rng)
        for levels in range(4):
            exact = level_sum_exact(a, levels)
            assert level_sum_mod(a, levels, p) == rational_mod(exact, p)


def test_mulmod_has_no_overflow():
    p = 4294967291
    x = np.full((3, 3), p - 1, dtype=np.int64)
    expected = (3 * (p - 1) * (p - 1)) % p
    assert (_mulmod(x, x, p) == expected).all()


def test_self_pairs_are_equivalent():
    rng = RandomSource(5)
    for _ in range(5):
        a = random_wvpa(rng, 2)
        result = vpa_equivalent(a, a, trials=3, rng=rng)
        assert result.verdict == Verdict.PROBABLY_EQUIVALENT
        assert all(d == 0 for d, _ in result.residues)
        assert len(result.primes) == 3


def test_equivalent_files_with_moved_weights():
    a = counter()
    one = QMatrix.identity(1)
    b = WVPA(1, VPA_ALPHABET, ('s',), {(CALL, 0): one.scale(4)}, {(RET, 0): one.scale(Fraction(1, 2))},
             {A: one.scale(Fraction(1, 2)), B: one.scale(Fraction(1, 2))},
             QVector.from_list([1], 'row'), QVector.from_list([1], 'column'))
    assert vpa_equivalent(a, b, trials=4, rng=RandomSource(0)).verdict == Verdict.PROBABLY_EQUIVALENT
    assert vpa_equivalent_exact(a, b)


@pytest.mark.parametrize('seed', range(30))
def test_perturbations_are_detected(seed):
    rng = RandomSource(seed)
    a = random_wvpa(rng, rng.randint(1, 2), rng.randint(1, 2))
    b = WVPA(a.n, a.alphabet, a.stack, a.m_call, a.m_ret,
             {**a.m_int, A: a.m_int[A] + QMatrix.from_entries(a.n, a.n, {(0, 0): 1})}, a.init, a.final)
    exact = vpa_equivalent_exact(a, b)
    result = vpa_equivalent(a, b, trials=10, rng=rng)
    assert (result.verdict == Verdict.PROBABLY_EQUIVALENT) == exact
    if not exact:
        assert any(d != 0 for d, _ in result.residues)


def test_parallel_runner_gives_the_same_primes():
    a = random_wvpa(RandomSource(1), 2)
    b = random_wvpa(RandomSource(2), 2)
    sequential = vpa_equivalent(a, b, trials=4, rng=RandomSource(9))
    parallel = vpa_equivalent(a, b, trials=4, rng=RandomSource(9), runner=TrialRunner(parallel=True, n_jobs=2))
    assert sequential == parallel


def test_span_stabilisation():
    stable = span_stabilisation(counter())
    assert stable.dimension == 1
    assert stable.level == 0
    rng = RandomSource(8)
    a = random_wvpa(rng, 2)
    result = span_stabilisation(a)
    assert result.dimension <= a.n * a.n
    assert result.level <= a.n * a.n


def test_difference_automaton():
    rng = RandomSource(4)
    a, b = random_wvpa(rng, 2), random_wvpa(rng, 1, 2)
    d = vpa_difference(a, b)
    for _ in range(20):
        word = random_well_matched(VPA_ALPHABET, 6, rng)
        assert vpa_evaluate(d, word) == vpa_evaluate(a, word) - vpa_evaluate(b, word)


def test_alphabets_must_match():
    other = VisiblyAlphabet(('(',), (')',), ('a', 'b'))
    a = counter()
    b = random_wvpa(RandomSource(1), 1, 1, other)
    with pytest.raises(AlphabetMismatchError):
        vpa_equivalent(a, b)
    with pytest.raises(ValueError):
        vpa_equivalent(a, a, prime_bits=40)
