# -*- coding: utf-8 -*-
"""
Randomized zeroness and equivalence of weighted automata.
===================================================
Three procedures decide whether an automaton is zero with one-sided error:
    - zero_sz: Schwartz-Zippel. The generating polynomial of the automaton
    is evaluated at random points of {1..K n}^Σ, one letter position at a
    time, starting from the final vector. A non-zero automaton with n
    states has a non-zero word of length at most n - 1, so lengths 1..n-1
    are drawn and a trigger at length i means a word of length i.
    - zero_sz_cex: the same draws, keeping the intermediate vectors so that
    a non-zero evaluation can be walked back into a word.
    - zero_isolation: random integer weights w_{i,σ} turn the automaton
    into a univariate polynomial whose lowest monomial belongs, with
    probability >= 1/2, to a single word; that word is recovered by
    perturbing one weight at a time.
A "nonzero" answer is always certain. "probably_zero" carries a lower bound
on the probability that the answer is right.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce

from .errors import IsolationError
from .linalg import QVector, UPolyMatrix, upoly_matrix_product_sum, min_degree_term
from .logger import SILENT
from .random_source import RandomSource
from .wfa import (EquivResult, Verdict, Witness, check_same_alphabet, difference, evaluate,
                  is_zero_det)


class ZeroVerdict(str, Enum):
    NONZERO = 'nonzero'
    PROBABLY_ZERO = 'probably_zero'


@dataclass(frozen=True)
class ZeroResult:
    """Outcome of a randomized zeroness test.
    For NONZERO, `length` is the length at which the test triggered and
    `witness`/`value` are set whenever the procedure produces a word.
    For PROBABLY_ZERO, `confidence` bounds the probability of being right.
    """
    verdict: ZeroVerdict
    witness: tuple = None
    value: Fraction = None
    length: int = None
    confidence: Fraction = None
    details: dict = field(default_factory=dict)

    @property
    def nonzero(self):
        return self.verdict == ZeroVerdict.NONZERO


def _certainly_zero():
    return ZeroResult(ZeroVerdict.PROBABLY_ZERO, confidence=Fraction(1))


def _check_k(k_param):
    if k_param < 2:
        raise ValueError('k_param must be at least 2, got {}'.format(k_param))


def _draw_point(a, k_param, rng):
    """One coordinate per symbol, uniform in {1..k_param * n}."""
    return [rng.randint(1, k_param * a.n) for _ in a.alphabet]


def _combine_left(a, point, v):
    """sum_σ r(σ) M(σ) v for a column vector v."""
    total = QVector.zeros(a.n, 'column')
    for s, r in zip(a.alphabet, point):
        total = total + (a.trans[s] @ v).scale(r)
    return total


def _combine_right(a, point, v):
    """sum_σ r(σ) v M(σ) for a row vector v."""
    total = QVector.zeros(a.n, 'row')
    for s, r in zip(a.alphabet, point):
        total = total + (v @ a.trans[s]).scale(r)
    return total


def _empty_word_check(a):
    value = a.init @ a.final
    if value:
        return ZeroResult(ZeroVerdict.NONZERO, witness=(), value=value, length=0)
    return None


def zero_sz(a, k_param=10, rng=None, trials=1):
    """Schwartz-Zippel zeroness test, evaluated from the final vector.
    Arguments:
        - a: WFA
        - k_param: int >= 2, draws are uniform in {1..k_param * n}
        - rng: RandomSource
        - trials: int, independent repetitions
    Returns:
        - ZeroResult (no word on NONZERO unless the empty word triggers)
    """
    _check_k(k_param)
    rng = rng if rng is not None else RandomSource()
    if a.n == 0:
        return _certainly_zero()
    trivial = _empty_word_check(a)
    if trivial:
        return trivial
    for trial in range(trials):
        v = a.final
        for i in range(1, a.n):
            v = _combine_left(a, _draw_point(a, k_param, rng), v)
            if a.init @ v != 0:
                return ZeroResult(ZeroVerdict.NONZERO, length=i, details={'trial': trial})
    return ZeroResult(ZeroVerdict.PROBABLY_ZERO, confidence=1 - Fraction(1, k_param ** trials))


def zero_sz_forward(a, k_param=10, rng=None, trials=1):
    """zero_sz evaluated from the initial vector instead."""
    _check_k(k_param)
    rng = rng if rng is not None else RandomSource()
    if a.n == 0:
        return _certainly_zero()
    trivial = _empty_word_check(a)
    if trivial:
        return trivial
    for trial in range(trials):
        v = a.init
        for i in range(1, a.n):
            v = _combine_right(a, _draw_point(a, k_param, rng), v)
            if v @ a.final != 0:
                return ZeroResult(ZeroVerdict.NONZERO, length=i, details={'trial': trial})
    return ZeroResult(ZeroVerdict.PROBABLY_ZERO, confidence=1 - Fraction(1, k_param ** trials))


def zero_sz_cex(a, k_param=10, rng=None, trials=1):
    """Schwartz-Zippel test returning a word on NONZERO.
    Draws exactly what zero_sz draws, so the same seed triggers at the same
    length. The walk keeps u · v_j != 0 at every step, hence ends on a word
    with a non-zero value.
    """
    _check_k(k_param)
    rng = rng if rng is not None else RandomSource()
    if a.n == 0:
        return _certainly_zero()
    trivial = _empty_word_check(a)
    if trivial:
        return trivial
    for trial in range(trials):
        vectors = [a.final]
        for i in range(1, a.n):
            vectors.append(_combine_left(a, _draw_point(a, k_param, rng), vectors[-1]))
            if a.init @ vectors[-1] != 0:
                word = _walk(a, vectors, i)
                return ZeroResult(ZeroVerdict.NONZERO, witness=word, value=evaluate(a, word), length=i,
                                  details={'trial': trial})
    return ZeroResult(ZeroVerdict.PROBABLY_ZERO, confidence=1 - Fraction(1, k_param ** trials))


def _walk(a, vectors, i):
    u = a.init
    word = []
    for j in range(i, 0, -1):
        for s in a.alphabet:
            candidate = u @ a.trans[s]
            if candidate @ vectors[j - 1] != 0:
                u = candidate
                word.append(s)
                break
        else:
            raise AssertionError('no letter keeps the partial evaluation non-zero at position {}'.format(i - j + 1))
    word = tuple(word)
    if evaluate(a, word) == 0:
        raise AssertionError('walked word {} has value 0'.format(word))
    return word


def isolation_weights(a, rng):
    """w_{i,σ} uniform in {1..2|Σ|n} for positions i = 1..n."""
    bound = 2 * len(a.alphabet) * a.n
    return {(i, s): rng.randint(1, bound) for i in range(1, a.n + 1) for s in a.alphabet}


def isolation_polynomial(a, weights):
    """P(x) = init (sum_{i=0..n} prod_{j<=i} sum_σ M(σ) x^{w_{j,σ}}) final."""
    steps = []
    for j in range(1, a.n + 1):
        parts = [UPolyMatrix.from_qmatrix(a.trans[s], weights[(j, s)]) for s in a.alphabet]
        steps.append(reduce(lambda x, y: x + y, parts, UPolyMatrix(a.n, a.n)))
    left = UPolyMatrix.from_qmatrix(a.init.as_matrix())
    right = UPolyMatrix.from_qmatrix(a.final.as_matrix())
    return upoly_matrix_product_sum(steps, left, right)[0, 0]


def isolation_cex(a, weights, p):
    """Recover the word carrying the lowest monomial of p.
    The letter at position i is σ exactly when raising w_{i,σ} by one moves
    the lowest monomial. Raises IsolationError when the letters found do not
    form a word whose weight and value match that monomial.
    Arguments:
        - a: WFA
        - weights: dict (position, symbol) -> int
        - p: UPoly, isolation_polynomial(a, weights)
    Returns:
        - tuple (word)
    """
    base = min_degree_term(p)
    letters = {}
    for key in sorted(weights):
        perturbed = dict(weights)
        perturbed[key] += 1
        q = isolation_polynomial(a, perturbed)
        if q.is_zero() or min_degree_term(q) != base:
            letters.setdefault(key[0], []).append(key[1])
    length = len(letters)
    if sorted(letters) != list(range(1, length + 1)) or any(len(found) != 1 for found in letters.values()):
        raise IsolationError('perturbed positions {} do not spell a word'.format(sorted(letters.items())))
    word = tuple(letters[i][0] for i in range(1, length + 1))
    weight = sum(weights[(i + 1, s)] for i, s in enumerate(word))
    value = evaluate(a, word)
    if value == 0 or (weight, value) != base:
        raise IsolationError('word {} does not carry the lowest monomial {}'.format(word, base))
    return word


def zero_isolation(a, trials=1, rng=None, retries=8, logger=SILENT):
    """Isolation-weight zeroness test with counterexample.
    Arguments:
        - a: WFA
        - trials: int >= 1
        - rng: RandomSource
        - retries: int, fresh weight draws allowed after a failed extraction
        - logger: Logger
    Returns:
        - ZeroResult
    """
    if trials < 1:
        raise ValueError('trials must be at least 1')
    rng = rng if rng is not None else RandomSource()
    if a.n == 0:
        return _certainly_zero()
    if len(a.alphabet) == 0:
        return _empty_word_check(a) or _certainly_zero()
    for trial in range(trials):
        weights = isolation_weights(a, rng)
        p = isolation_polynomial(a, weights)
        if p.is_zero():
            continue
        attempt = 0
        while True:
            if not p.is_zero():
                try:
                    word = isolation_cex(a, weights, p)
                    exponent, coefficient = min_degree_term(p)
                    return ZeroResult(ZeroVerdict.NONZERO, witness=word, value=coefficient, length=len(word),
                                      details={'trial': trial, 'attempt': attempt, 'min_degree': exponent})
                except IsolationError as error:
                    logger.warning('Isolation failed (trial {}, attempt {}): {}'.format(trial, attempt, error))
            attempt += 1
            if attempt > retries:
                break
            weights = isolation_weights(a, rng)
            p = isolation_polynomial(a, weights)
        word = is_zero_det(a)
        logger.warning('No isolated word after {} redraws, using the deterministic witness {}'.format(retries, word))
        return ZeroResult(ZeroVerdict.NONZERO, witness=word, value=evaluate(a, word), length=len(word),
                          details={'trial': trial, 'fallback': 'det'})
    return ZeroResult(ZeroVerdict.PROBABLY_ZERO, confidence=1 - Fraction(1, 2 ** trials))


METHODS = ('sz', 'sz_cex', 'isolation')


def normalize_method(method):
    name = method.replace('-', '_')
    if name not in METHODS:
        raise ValueError('unknown randomized method {!r}, expected one of {}'.format(method, ', '.join(METHODS)))
    return name


def equivalent_randomized(b, c, method='sz_cex', k_param=10, trials=1, rng=None, retries=8, logger=SILENT):
    """Randomized equivalence through zeroness of the difference automaton.
    With method 'sz' a triggering run is replayed with the same draws
    through zero_sz_cex to obtain a witness word.
    Returns:
        - EquivResult
    """
    check_same_alphabet(b, c)
    method = normalize_method(method)
    rng = rng if rng is not None else RandomSource()
    diff = difference(b, c)
    if method == 'sz':
        replay = rng.copy()
        result = zero_sz(diff, k_param, rng, trials)
        if result.nonzero and result.witness is None:
            result = zero_sz_cex(diff, k_param, replay, trials)
    elif method == 'sz_cex':
        result = zero_sz_cex(diff, k_param, rng, trials)
    else:
        result = zero_isolation(diff, trials, rng, retries, logger)
    details = dict(result.details, method=method)
    if result.nonzero:
        word = result.witness
        details['length'] = result.length
        return EquivResult(Verdict.INEQUIVALENT, Witness(word, evaluate(b, word), evaluate(c, word)), details=details)
    return EquivResult(Verdict.PROBABLY_EQUIVALENT, confidence=result.confidence, details=details)
