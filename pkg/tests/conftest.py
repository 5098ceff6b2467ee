# -*- coding: utf-8 -*-
"""Shared generators and fixtures."""
import os
from fractions import Fraction

import pytest

from qautomata.circuits import CircuitBuilder
from qautomata.linalg import QMatrix, QVector
from qautomata.pra import PRA, EPSILON
from qautomata.random_source import RandomSource
from qautomata.vpa import WVPA, VisiblyAlphabet
from qautomata.wfa import WFA, Alphabet

DATA = os.path.join(os.path.dirname(__file__), 'data')
LABELS = ('a', 'b', 'c')


def data_path(name):
    return os.path.join(DATA, name)


def random_rational(rng, sparse=True):
    """p/q with |p| <= 2, q <= 2, zero half of the time when sparse."""
    if sparse and rng.randint(0, 1) == 0:
        return Fraction(0)
    return Fraction(rng.randint(-2, 2), rng.randint(1, 2))


def random_matrix(rng, n):
    return QMatrix.from_rows([[random_rational(rng) for _ in range(n)] for _ in range(n)], n)


def random_vector(rng, n, orientation):
    return QVector.from_list([random_rational(rng, sparse=False) for _ in range(n)], orientation)


def random_wfa(rng, n, size=2):
    alphabet = Alphabet(LABELS[:size])
    return WFA(n, alphabet, {s: random_matrix(rng, n) for s in alphabet},
               random_vector(rng, n, 'row'), random_vector(rng, n, 'column'))


def random_pair(seed, max_states=4, max_size=3):
    rng = RandomSource(seed)
    size = rng.randint(1, max_size)
    return (random_wfa(rng, rng.randint(1, max_states), size),
            random_wfa(rng, rng.randint(1, max_states), size))


def perturbed(a, rng):
    """Copy of a with one transition weight raised by one."""
    symbol = rng.randint(0, len(a.alphabet) - 1)
    i, j = rng.randint(0, a.n - 1), rng.randint(0, a.n - 1)
    trans = dict(a.trans)
    trans[symbol] = trans[symbol] + QMatrix.from_entries(a.n, a.n, {(i, j): 1})
    return WFA(a.n, a.alphabet, trans, a.init, a.final)


def _substochastic_rows(rng, n, count):
    """count matrices whose stacked rows, per state, sum to at most 1."""
    matrices = [dict() for _ in range(count)]
    for i in range(n):
        weights = [[rng.randint(0, 2) for _ in range(n)] for _ in range(count)]
        total = sum(sum(row) for row in weights) + rng.randint(1, 3)
        for k in range(count):
            for j in range(n):
                if weights[k][j]:
                    matrices[k][(i, j)] = Fraction(weights[k][j], total)
    return [QMatrix.from_entries(n, n, entries) for entries in matrices]


def random_pra(rng, n, s, size=2, epsilon=False):
    """Random PRA; with epsilon, the epsilon row mass shares the budget of
    the letters, so every row of M(eps) sums to less than 1."""
    labels = LABELS[:size] + ((EPSILON,) if epsilon else ())
    alphabet = Alphabet(labels)
    matrices = _substochastic_rows(rng, n, len(labels))
    rewards = {}
    for sym, m in enumerate(matrices):
        rewards[sym] = {key: tuple(rng.randint(-1, 1) for _ in range(s)) for key, _ in m.entries()}
    weights = [rng.randint(1, 3) for _ in range(n)]
    init = QVector.from_list([Fraction(w, sum(weights)) for w in weights], 'row')
    final = QVector.from_list([Fraction(rng.randint(0, 2), 2) for _ in range(n)], 'column')
    return PRA(n, s, alphabet, dict(enumerate(matrices)), rewards, init, final)


VPA_ALPHABET = VisiblyAlphabet(('<',), ('>',), ('a', 'b'))


def random_wvpa(rng, n, stack_size=1, alphabet=VPA_ALPHABET):
    stack = tuple('s{}'.format(k) for k in range(stack_size))
    m_call = {(c, g): random_matrix(rng, n) for c in alphabet.call_ids() for g in range(stack_size)}
    m_ret = {(r, g): random_matrix(rng, n) for r in alphabet.return_ids() for g in range(stack_size)}
    m_int = {i: random_matrix(rng, n) for i in alphabet.internal_ids()}
    return WVPA(n, alphabet, stack, m_call, m_ret, m_int, random_vector(rng, n, 'row'),
                random_vector(rng, n, 'column'))


def random_circuit(rng, size):
    """Variable-free circuit over 0, 1, add and mul with `size` internal gates."""
    builder = CircuitBuilder()
    available = [builder.one(), builder.add(builder.one(), builder.one())]
    for _ in range(size):
        op = builder.add if rng.randint(0, 1) else builder.mul
        available.append(op(rng.choice(available), rng.choice(available)))
    return builder.build(available[-1])


def geometric_pair(perturb=False):
    """Two reward automata, over epsilon moves only, whose total rewards
    have the same law: a difference of two geometric variables. With
    perturb=True the last loop of the second automaton gains +1 instead."""
    alphabet = Alphabet((EPSILON,))
    left = PRA(2, 1, alphabet,
               {0: QMatrix.from_entries(2, 2, {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 3),
                                               (1, 1): Fraction(2, 3)})},
               {0: {(0, 0): (1,), (0, 1): (-1,), (1, 1): (-1,)}},
               QVector.from_list([1, 0], 'row'), QVector.from_list([Fraction(1, 6), Fraction(1, 3)], 'column'))
    loop = 1 if perturb else -1
    right = PRA(3, 1, alphabet,
                {0: QMatrix.from_entries(3, 3, {(0, 1): Fraction(1, 4), (1, 1): Fraction(1, 2),
                                                (0, 2): Fraction(1, 2), (2, 2): Fraction(2, 3)})},
                {0: {(0, 1): (1,), (1, 1): (1,), (0, 2): (-1,), (2, 2): (loop,)}},
                QVector.from_list([1, 0, 0], 'row'),
                QVector.from_list([Fraction(1, 4), Fraction(1, 2), Fraction(1, 3)], 'column'))
    return left, right


@pytest.fixture
def rng():
    return RandomSource(2024)


@pytest.fixture
def nonzero_wfa():
    """3-state automaton over {a, b}: ab -> 1, bb -> -1, every other word -> 0.
    Its generating polynomial (x1a - x1b) x2b vanishes on random points
    with x1a = x1b."""
    return WFA.from_lists(
        ('a', 'b'), [1, 0, 0], [0, 0, 1],
        {'a': [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
         'b': [[0, -1, 0], [0, 0, 1], [0, 0, 0]]})


@pytest.fixture
def geometric():
    return geometric_pair()


@pytest.fixture
def geometric_perturbed():
    return geometric_pair(perturb=True)
