""" Tests for probabilistic reward automata."""
import io
from fractions import Fraction

import pytest

from qautomata.errors import EpsilonError, RewardRangeError, SingularMatrixError, StochasticityError
from qautomata.linalg import QMatrix, QVector
from qautomata.logger import Logger
from qautomata.pra import (PRA, distribution_equivalent, epsilon_check, expectation_equivalent, expectation_reduce,
                           expected_reward_oracle, first_moment_automaton, laurent_automaton,
                           reward_distribution_oracle, substitute)
from qautomata.random_source import RandomSource
from qautomata.wfa import Alphabet, Verdict, all_words, evaluate

from .conftest import random_pra


def two_state_pra(rewards=None):
    return PRA(2, 1, Alphabet(('a',)),
               {0: QMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)], [0, 1]])},
               {0: rewards if rewards is not None else {(0, 1): (1,)}},
               QVector.from_list([1, 0], 'row'), QVector.from_list([1, 1], 'column'))


def test_constructor_rejects_non_substochastic_rows():
    with pytest.raises(StochasticityError, match='row 0'):
        PRA(1, 0, Alphabet(('a',)), {0: QMatrix.from_rows([[Fraction(7, 6)]])}, {},
            QVector.from_list([1], 'row'), QVector.from_list([0], 'column'))
    with pytest.raises(StochasticityError):
        PRA(1, 0, Alphabet(('a',)), {}, {}, QVector.from_list([Fraction(1, 2)], 'row'),
            QVector.from_list([0], 'column'))
    with pytest.raises(StochasticityError):
        PRA(1, 0, Alphabet(('a',)), {}, {}, QVector.from_list([1], 'row'), QVector.from_list([2], 'column'))


def test_constructor_rejects_bad_rewards():
    with pytest.raises(RewardRangeError):
        two_state_pra({(0, 1): (2,)})
    with pytest.raises(RewardRangeError):
        two_state_pra({(0, 1): (1, 0)})


def test_rewards_on_missing_transitions_are_dropped():
    a = two_state_pra({(0, 1): (1,), (1, 0): (-1,)})
    assert a.reward(0, 1, 0) == (0,)
    assert a.reward(0, 0, 1) == (1,)
    assert a.reward_matrix(0, 0).to_rows() == [[0, 1], [0, 0]]


def test_oracles():
    a = two_state_pra()
    # aa: 0 -> 0 -> 0 (1/4, reward 0), 0 -> 0 -> 1 (1/4, 1), 0 -> 1 -> 1 (1/2, 1)
    assert expected_reward_oracle(a, (0, 0)) == [Fraction(3, 4)]
    law = reward_distribution_oracle(a, (0, 0))
    assert law.masses == {(0,): Fraction(1, 4), (1,): Fraction(3, 4)}
    assert law.total_mass == 1
    assert law.mean(0) == Fraction(3, 4)


def test_laurent_automaton():
    m = laurent_automaton(two_state_pra())[0]
    assert m.entries[(0, 1)] == (Fraction(1, 2), (1,))
    assert m.substitute((3,)).to_rows() == [[Fraction(1, 2), Fraction(3, 2)], [0, 1]]


@pytest.mark.parametrize('seed', range(25))
def test_expectation_reduce_matches_path_oracle(seed):
    rng = RandomSource(seed)
    a = random_pra(rng, rng.randint(1, 3), rng.randint(1, 2))
    for component in range(a.s):
        reduced = expectation_reduce(a, component)
        assert reduced.n == 2 * a.n
        for word in all_words(a.alphabet, 4):
            assert evaluate(reduced, word) == expected_reward_oracle(a, word)[component]


@pytest.mark.parametrize('seed', range(10))
def test_first_moment_coincides_without_epsilon(seed):
    rng = RandomSource(seed)
    a = random_pra(rng, rng.randint(1, 3), 2)
    assert first_moment_automaton(a, 1) == expectation_reduce(a, 1)


@pytest.mark.parametrize('seed', range(10))
def test_substitution_matches_distribution_oracle(seed):
    rng = RandomSource(seed)
    a = random_pra(rng, rng.randint(1, 3), 2)
    point = (3, Fraction(1, 2))
    folded = substitute(a, point)
    for word in all_words(a.alphabet, 3):
        law = reward_distribution_oracle(a, word)
        expected = sum((mass * Fraction(3) ** k1 * Fraction(1, 2) ** k2 for (k1, k2), mass in law.masses.items()),
                       Fraction(0))
        assert evaluate(folded, word) == expected


def test_expectation_reduce_refuses_epsilon(geometric):
    with pytest.raises(EpsilonError):
        expectation_reduce(geometric[0], 0)


def test_epsilon_check():
    recurrent = PRA(2, 0, Alphabet(('a', 'eps')),
                    {1: QMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]])}, {},
                    QVector.from_list([1, 0], 'row'), QVector.from_list([1, 1], 'column'))
    check = epsilon_check(recurrent)
    assert not check.ok and check.states == frozenset({1})
    with pytest.raises(EpsilonError):
        first_moment_automaton(PRA(2, 1, recurrent.alphabet, recurrent.trans, {}, recurrent.init,
                                   recurrent.final), 0)
    leaking = PRA(2, 0, Alphabet(('eps',)),
                  {0: QMatrix.from_rows([[0, 1], [1, 0]])}, {},
                  QVector.from_list([1, 0], 'row'), QVector.from_list([0, 0], 'column'))
    assert not epsilon_check(leaking).ok


def test_epsilon_check_accepts_draining_cycles(geometric):
    for automaton in geometric:
        assert epsilon_check(automaton).ok
    chain = PRA(2, 0, Alphabet(('eps',)),
                {0: QMatrix.from_rows([[0, 1], [Fraction(1, 2), 0]])}, {},
                QVector.from_list([1, 0], 'row'), QVector.from_list([0, 1], 'column'))
    assert epsilon_check(chain).ok


def test_geometric_expected_rewards(geometric, geometric_perturbed):
    left, right = geometric
    for automaton in (left, right):
        moment = first_moment_automaton(automaton, 0)
        assert len(moment.alphabet) == 0
        assert evaluate(moment, ()) == -1
    assert evaluate(first_moment_automaton(geometric_perturbed[1], 0), ()) == 1


def test_geometric_expectation_equivalence(geometric, geometric_perturbed):
    assert expectation_equivalent(*geometric).verdict == Verdict.EQUIVALENT
    result = expectation_equivalent(*geometric_perturbed)
    assert result.verdict == Verdict.INEQUIVALENT
    assert result.witness.word == ()
    assert (result.witness.value_left, result.witness.value_right) == (-1, 1)


@pytest.mark.parametrize('seed', range(20))
def test_geometric_distribution_equivalence(seed, geometric, geometric_perturbed):
    result = distribution_equivalent(*geometric, rng=RandomSource(seed))
    assert result.verdict == Verdict.PROBABLY_EQUIVALENT
    assert result.confidence == Fraction(3, 4)
    # t = 1 is the only point where the perturbed laws agree
    flipped = distribution_equivalent(*geometric_perturbed, trials=3, rng=RandomSource(seed))
    assert flipped.verdict == Verdict.INEQUIVALENT
    assert flipped.details['point'] != [1]


def test_pole_is_redrawn(geometric):
    # t = 2 makes I - M(eps) singular for both automata
    with pytest.raises(SingularMatrixError):
        substitute(geometric[0], (2,))

    class PoleFirst(RandomSource):
        def __init__(self):
            super(PoleFirst, self).__init__(5)
            self.first = True

        def randint(self, lo, hi):
            if self.first:
                self.first = False
                return 2
            return super(PoleFirst, self).randint(lo, hi)

    stream = io.StringIO()
    result = distribution_equivalent(*geometric, trials=1, rng=PoleFirst(), logger=Logger(verbose=True, stream=stream))
    assert result.verdict == Verdict.PROBABLY_EQUIVALENT
    assert 'is a pole' in stream.getvalue()


@pytest.mark.parametrize('method', ['det', 'sz', 'sz_cex', 'isolation'])
def test_expectation_equivalent_methods(method):
    rng = RandomSource(31)
    a = random_pra(rng, 2, 2)
    assert expectation_equivalent(a, a, method, rng=rng).equivalent
    rewards = {sym: {key: tuple(-k for k in vector) for key, vector in table.items()}
               for sym, table in a.rewards.items()}
    negated = PRA(a.n, a.s, a.alphabet, a.trans, rewards, a.init, a.final)
    result = expectation_equivalent(a, negated, method, trials=3, rng=rng)
    if result.verdict == Verdict.INEQUIVALENT:
        w = result.witness
        assert expected_reward_oracle(a, w.word)[result.details['component']] == w.value_left
        assert expected_reward_oracle(negated, w.word)[result.details['component']] == w.value_right


@pytest.mark.parametrize('seed', range(10))
def test_distribution_equivalence_of_random_pairs(seed):
    rng = RandomSource(seed)
    a = random_pra(rng, 2, 1, epsilon=True)
    assert distribution_equivalent(a, a, rng=rng).equivalent
    b = random_pra(rng, 2, 1, epsilon=True)
    result = distribution_equivalent(a, b, rng=rng)
    if result.verdict == Verdict.INEQUIVALENT:
        assert result.witness.value_left != result.witness.value_right
