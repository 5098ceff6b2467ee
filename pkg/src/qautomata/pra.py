# -*- coding: utf-8 -*-
"""
Probabilistic reward automata.
===================================================
A PRA instanciation requires:
    - n: number of states,
    - s: number of reward types,
    - alphabet: an Alphabet, possibly containing the reserved label 'eps',
    - trans: dict symbol id -> sub-stochastic n x n QMatrix,
    - rewards: dict symbol id -> {(i, j): reward tuple of length s with
    entries in {-1, 0, 1}} (missing entries are the zero reward),
    - init: stochastic row QVector,
    - final: column QVector with entries in [0, 1].

Two semantics are compared:
    - expectation: the expected total reward of each type over the runs
    on a word, reduced to a 2n-state weighted automaton per reward type;
    - distribution: the law of the total reward, encoded by monomials
    t_1^{k_1} ... t_s^{k_s}. Substituting random integers for the t_j and
    folding epsilon moves with (I - M(eps))^-1 gives ordinary weighted
    automata that are compared exactly.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import networkx as nx

from .errors import (AlphabetMismatchError, BudgetExceededError, DimensionError, EpsilonError,
                     RewardRangeError, SingularMatrixError, StochasticityError)
from .linalg import QMatrix, QVector, hadamard, kron, star
from .logger import SILENT
from .random_source import RandomSource
from .randomized import equivalent_randomized
from .wfa import WFA, Alphabet, EquivResult, Verdict, Witness, equivalent_det, evaluate

EPSILON = 'eps'

# Blocks of the first-moment construction.
MOMENT_INIT = QVector.from_list([1, 0], 'row')
MOMENT_FINAL = QVector.from_list([0, 1], 'column')
MOMENT_SHIFT = QMatrix.from_rows([[0, 1], [0, 0]])
IDENTITY_2 = QMatrix.identity(2)


class PRA(object):
    """ Probabilistic reward automaton (n, s, alphabet, M, R, init, final).
    """

    def __init__(self, n, s, alphabet, trans, rewards, init, final):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        self.n = n
        self.s = s
        self.alphabet = alphabet
        if init.orientation != 'row' or init.length != n or final.orientation != 'column' or final.length != n:
            raise DimensionError('initial/final vectors must have length {}'.format(n))
        self.trans = {}
        for sym in alphabet:
            m = trans.get(sym, QMatrix.zeros(n))
            if m.shape != (n, n):
                raise DimensionError('matrix of {!r} has shape {}'.format(alphabet.labels[sym], m.shape))
            self._check_substochastic(sym, alphabet.labels[sym], m)
            self.trans[sym] = m
        self.rewards = {}
        for sym, table in rewards.items():
            if sym not in self.trans:
                raise DimensionError('rewards for unknown symbol id {}'.format(sym))
            kept = {}
            for (i, j), vector in table.items():
                vector = tuple(int(k) for k in vector)
                if len(vector) != s:
                    raise RewardRangeError('reward {} on {!r} ({}, {}) does not have {} components'.format(
                        vector, alphabet.labels[sym], i, j, s), (sym, i, j))
                if any(k not in (-1, 0, 1) for k in vector):
                    raise RewardRangeError('reward {} on {!r} ({}, {}) leaves {{-1, 0, 1}}'.format(
                        vector, alphabet.labels[sym], i, j), (sym, i, j))
                if self.trans[sym][i, j] != 0 and any(vector):
                    kept[(i, j)] = vector
            if kept:
                self.rewards[sym] = kept
        if any(v < 0 for v in init.to_list()) or sum(init.to_list()) != 1:
            raise StochasticityError('initial vector must be non-negative and sum to 1', 'init')
        if any(not 0 <= v <= 1 for v in final.to_list()):
            raise StochasticityError('final weights must lie in [0, 1]', 'final')
        self.init = init
        self.final = final

    @staticmethod
    def _check_substochastic(sym, label, m):
        for i, row in enumerate(m.to_rows()):
            if any(v < 0 for v in row):
                raise StochasticityError('row {} of {!r} has a negative probability'.format(i, label), (sym, i))
            if sum(row) > 1:
                raise StochasticityError('row {} of {!r} sums to {} > 1'.format(i, label, sum(row)), (sym, i))

    @property
    def has_epsilon(self):
        return EPSILON in self.alphabet

    @property
    def epsilon(self):
        return self.alphabet.index(EPSILON) if self.has_epsilon else None

    def reward(self, sym, i, j):
        return self.rewards.get(sym, {}).get((i, j), (0,) * self.s)

    def reward_matrix(self, sym, component):
        """Component `component` of the rewards of `sym` as a matrix."""
        entries = {key: vector[component] for key, vector in self.rewards.get(sym, {}).items()}
        return QMatrix.from_entries(self.n, self.n, entries)

    def __eq__(self, other):
        return (isinstance(other, PRA) and (self.n, self.s, self.alphabet) == (other.n, other.s, other.alphabet)
                and self.trans == other.trans and self.rewards == other.rewards
                and self.init == other.init and self.final == other.final)

    def __repr__(self):
        return 'PRA(n={}, s={}, alphabet={})'.format(self.n, self.s, list(self.alphabet.labels))


@dataclass(frozen=True)
class MonomialMatrix:
    """n x n matrix of monomials coefficient · t^exponents, stored sparsely
    as {(i, j): (coefficient, exponents)}."""
    n: int
    entries: dict

    def substitute(self, point):
        """Rational matrix obtained for t = point."""
        values = {}
        for key, (coefficient, exponents) in self.entries.items():
            value = coefficient
            for t, k in zip(point, exponents):
                value *= Fraction(t) ** k
            values[key] = value
        return QMatrix.from_entries(self.n, self.n, values)

    def dual(self, component):
        """(coefficients, coefficients · exponent[component]): the value at
        t_component = 1 + δ with δ² = 0 and every other t = 1."""
        value = {key: c for key, (c, _) in self.entries.items()}
        slope = {key: c * e[component] for key, (c, e) in self.entries.items()}
        return QMatrix.from_entries(self.n, self.n, value), QMatrix.from_entries(self.n, self.n, slope)


@dataclass(frozen=True)
class RewardDistribution:
    """Exact law of the total reward: {reward vector: probability mass}."""
    masses: dict = field(default_factory=dict)

    @property
    def total_mass(self):
        return sum(self.masses.values(), Fraction(0))

    def mean(self, component):
        return sum((mass * vector[component] for vector, mass in self.masses.items()), Fraction(0))


@dataclass(frozen=True)
class EpsilonCheck:
    ok: bool
    states: frozenset = frozenset()


def _paths(a, w, budget):
    if a.has_epsilon:
        raise EpsilonError('path oracles do not handle epsilon transitions')
    a.alphabet.check_word(w)
    count = a.n ** (len(w) + 1)
    if count > budget:
        raise BudgetExceededError('{} paths exceed the path budget {}'.format(count, budget))
    for states in product(range(a.n), repeat=len(w) + 1):
        probability = a.init[states[0]] * a.final[states[-1]]
        total = [0] * a.s
        for sym, i, j in zip(w, states, states[1:]):
            if not probability:
                break
            probability *= a.trans[sym][i, j]
            for k, r in enumerate(a.reward(sym, i, j)):
                total[k] += r
        if probability:
            yield probability, tuple(total)


def expected_reward_oracle(a, w, budget=1000000):
    """Expected total reward on w by enumerating the n^(|w|+1) paths.
    Returns:
        - list of Fraction (length s)
    """
    expected = [Fraction(0)] * a.s
    for probability, total in _paths(a, w, budget):
        for k in range(a.s):
            expected[k] += probability * total[k]
    return expected


def reward_distribution_oracle(a, w, budget=1000000):
    """Distribution of the total reward on w by path enumeration."""
    masses = {}
    for probability, total in _paths(a, w, budget):
        masses[total] = masses.get(total, 0) + probability
    return RewardDistribution(masses)


def _check_component(a, component):
    if not 0 <= component < a.s:
        raise DimensionError('reward index {} outside 0..{}'.format(component, a.s - 1))


def _moment_block(value, slope):
    return kron(value, IDENTITY_2) + kron(slope, MOMENT_SHIFT)


def expectation_reduce(a, component):
    """2n-state weighted automaton of the expected reward of one type.
    Arguments:
        - a: PRA without epsilon
        - component: int, reward index
    Returns:
        - WFA over a.alphabet
    """
    if a.has_epsilon:
        raise EpsilonError('the expectation reduction needs an epsilon-free automaton')
    _check_component(a, component)
    trans = {sym: _moment_block(m, hadamard(m, a.reward_matrix(sym, component))) for sym, m in a.trans.items()}
    return WFA(2 * a.n, a.alphabet, trans, kron(a.init, MOMENT_INIT), kron(a.final, MOMENT_FINAL))


def laurent_automaton(a):
    """Symbol id -> MonomialMatrix with entries M(σ)_ij · t^R(σ)_ij."""
    result = {}
    for sym, m in a.trans.items():
        entries = {key: (value, a.reward(sym, *key)) for key, value in m.entries()}
        result[sym] = MonomialMatrix(a.n, entries)
    return result


def epsilon_check(a):
    """Whether M(eps) has spectral radius < 1, decided on the support graph:
    every strongly connected component carrying a cycle must reach a state
    whose epsilon row sums to less than 1.
    Returns:
        - EpsilonCheck (ok, offending component)
    """
    if not a.has_epsilon:
        return EpsilonCheck(True)
    m = a.trans[a.epsilon]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(a.n))
    graph.add_edges_from(key for key, _ in m.entries())
    deficit = {i for i, row in enumerate(m.to_rows()) if sum(row) < 1}
    leaking = set(deficit)
    for state in deficit:
        leaking |= nx.ancestors(graph, state)
    for component in sorted(nx.strongly_connected_components(graph), key=min):
        state = min(component)
        cyclic = len(component) > 1 or graph.has_edge(state, state)
        if cyclic and not component & leaking:
            return EpsilonCheck(False, frozenset(component))
    return EpsilonCheck(True)


def _require_transient(a):
    check = epsilon_check(a)
    if not check.ok:
        raise EpsilonError('epsilon transitions are recurrent on states {}'.format(sorted(check.states)))


def _fold_epsilon(alphabet, blocks, init, final):
    """Weighted automaton over the non-epsilon symbols with init · E and
    M(σ) · E, E = (I - M(eps))^-1."""
    size = init.length
    if EPSILON not in alphabet:
        return WFA(size, alphabet, blocks, init, final)
    eps = alphabet.index(EPSILON)
    closure = star(blocks[eps])
    reduced = Alphabet(tuple(label for label in alphabet.labels if label != EPSILON))
    trans = {reduced.index(alphabet.labels[sym]): m @ closure for sym, m in blocks.items() if sym != eps}
    return WFA(size, reduced, trans, init @ closure, final)


def first_moment_automaton(a, component):
    """Expected reward of one type as a weighted automaton over the
    non-epsilon symbols, for PRAs with or without epsilon."""
    _check_component(a, component)
    _require_transient(a)
    blocks = {sym: _moment_block(*matrix.dual(component)) for sym, matrix in laurent_automaton(a).items()}
    return _fold_epsilon(a.alphabet, blocks, kron(a.init, MOMENT_INIT), kron(a.final, MOMENT_FINAL))


def substitute(a, point):
    """Weighted automaton over the non-epsilon symbols obtained for t = point.
    Raises SingularMatrixError when point is a pole (I - M'(eps) singular).
    """
    if len(point) != a.s:
        raise DimensionError('substitution point has {} coordinates, expected {}'.format(len(point), a.s))
    blocks = {sym: matrix.substitute(point) for sym, matrix in laurent_automaton(a).items()}
    return _fold_epsilon(a.alphabet, blocks, a.init, a.final)


def _check_pair(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError('alphabets {} and {} differ'.format(list(a.alphabet.labels), list(b.alphabet.labels)))
    if a.s != b.s:
        raise DimensionError('reward dimensions {} and {} differ'.format(a.s, b.s))


def _lift_word(pra, folded, word):
    """Word over the folded alphabet -> word over the PRA alphabet."""
    return pra.alphabet.encode(folded.alphabet.decode(word))


def expectation_equivalent(a, b, method='det', k_param=10, trials=1, rng=None, retries=8, logger=SILENT):
    """Equivalence of expected rewards, one reward type at a time.
    Epsilon-free pairs use the expectation reduction; pairs with epsilon go
    through the first-moment automaton.
    Arguments:
        - a, b: PRA
        - method: 'det', 'sz', 'sz_cex' or 'isolation'
    Returns:
        - EquivResult; the witness values are expected rewards
    """
    _check_pair(a, b)
    rng = rng if rng is not None else RandomSource()
    missed = Fraction(0)
    for component in range(a.s):
        if a.has_epsilon:
            left, right = first_moment_automaton(a, component), first_moment_automaton(b, component)
        else:
            left, right = expectation_reduce(a, component), expectation_reduce(b, component)
        if method == 'det':
            result = equivalent_det(left, right)
        else:
            result = equivalent_randomized(left, right, method, k_param, trials, rng, retries, logger)
        if result.verdict == Verdict.INEQUIVALENT:
            witness = result.witness
            word = _lift_word(a, left, witness.word)
            return EquivResult(Verdict.INEQUIVALENT, Witness(word, witness.value_left, witness.value_right),
                               details=dict(result.details, component=component, mode='expectation'))
        if result.verdict == Verdict.PROBABLY_EQUIVALENT:
            missed += 1 - result.confidence
    details = {'mode': 'expectation', 'method': method}
    if missed:
        return EquivResult(Verdict.PROBABLY_EQUIVALENT, confidence=max(Fraction(0), 1 - missed), details=details)
    if method != 'det':
        return EquivResult(Verdict.PROBABLY_EQUIVALENT, confidence=Fraction(1), details=details)
    return EquivResult(Verdict.EQUIVALENT, details=details)


def distribution_equivalent(a, b, trials=2, rng=None, redraws=16, logger=SILENT):
    """Equivalence of reward distributions by random substitution.
    Each trial draws t uniformly in {1..2d}^s with n = n_a + n_b and
    d = (s n + 1) n, and compares the two substituted automata exactly.
    A draw at a pole is redrawn up to `redraws` times.
    Returns:
        - EquivResult
    """
    _check_pair(a, b)
    for automaton in (a, b):
        _require_transient(automaton)
    rng = rng if rng is not None else RandomSource()
    n = a.n + b.n
    bound = 2 * (a.s * n + 1) * n
    for trial in range(trials):
        for attempt in range(redraws + 1):
            point = tuple(rng.randint(1, bound) for _ in range(a.s))
            try:
                left, right = substitute(a, point), substitute(b, point)
                break
            except SingularMatrixError:
                logger.warning('Substitution point {} is a pole, redrawing (attempt {})'.format(point, attempt + 1))
        else:
            raise SingularMatrixError('no regular substitution point after {} draws'.format(redraws + 1))
        result = equivalent_det(left, right)
        if result.verdict == Verdict.INEQUIVALENT:
            witness = result.witness
            word = _lift_word(a, left, witness.word)
            return EquivResult(Verdict.INEQUIVALENT, Witness(word, witness.value_left, witness.value_right),
                               details={'mode': 'distribution', 'trial': trial, 'point': list(point)})
    return EquivResult(Verdict.PROBABLY_EQUIVALENT, confidence=1 - Fraction(1, 2 ** trials),
                       details={'mode': 'distribution', 'trials': trials})
