# -*- coding: utf-8 -*-
"""
Minimality test and minimisation of weighted automata.
===================================================
An automaton with n states is minimal iff its forward space
span{init · M(w)} and its backward space span{M(w) · final} both have
dimension n. Both dimensions are read off Gram matrices (exact
determinants), and minimisation projects the automaton on a basis of the
forward space, then on a basis of the backward space of the result.

Bases come either from the deterministic worklist closure or from random
linear combinations of the vectors init · M(w) (one random point per
position), anchored on the initial vector so that the reduced automaton
starts in its first state.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, InvalidBasisError
from .linalg import QMatrix, QVector, RowSpace, block_diag, concat, det, kron, rank
from .logger import SILENT
from .random_source import RandomSource
from .wfa import WFA, backward_basis_det, evaluate, forward_basis_det, transpose, all_words, count_words


@dataclass(frozen=True)
class Basis:
    """Rows (forward) or columns (backward) spanning a space.
    When anchored, row or column 0 is the initial (resp. final) vector.
    """
    matrix: QMatrix
    anchored: bool = True
    direction: str = 'forward'

    @property
    def dimension(self):
        return self.matrix.rows if self.direction == 'forward' else self.matrix.cols

    def rows(self):
        """Spanning vectors as rows, whatever the direction."""
        return self.matrix if self.direction == 'forward' else self.matrix.T


def gram_forward(a):
    """sum over |w| < n of (init M(w))^T (init M(w)), computed with
    T = sum_σ M(σ) ⊗ M(σ) as the reshaped row (init ⊗ init) sum_k T^k.
    """
    n = a.n
    if n == 0:
        return QMatrix.zeros(0)
    t = QMatrix.zeros(n * n)
    for s in a.alphabet:
        t = t + kron(a.trans[s], a.trans[s])
    power = kron(a.init, a.init)
    total = power
    for _ in range(1, n):
        power = power @ t
        total = total + power
    return QMatrix.from_entries(n, n, {divmod(k, n): v for k, v in total.items()})


def gram_backward(a):
    """Gram matrix of the vectors M(w) final, |w| < n."""
    return gram_forward(transpose(a))


def is_minimal(a):
    """True iff both Gram matrices are non-singular."""
    if a.n == 0:
        return True
    return det(gram_forward(a)) != 0 and det(gram_backward(a)) != 0


def _random_forward_rows(a, k_param, rng):
    """init, then n vectors rho(r^(i)) = sum_{k<=n} init (prod_{j<=k} sum_σ r_{σ,j} M(σ)),
    kept while linearly independent."""
    space = RowSpace(a.n)
    if a.init.is_zero():
        return space
    space.add(a.init)
    bound = k_param * a.n
    for _ in range(a.n):
        acc = a.init
        s = a.init
        for _ in range(a.n):
            step = QVector.zeros(a.n, 'row')
            for symbol in a.alphabet:
                step = step + (s @ a.trans[symbol]).scale(rng.randint(1, bound))
            s = step
            acc = acc + s
        if not space.add(acc):
            break
    return space


def forward_basis_rand(a, k_param=None, rng=None):
    """Randomized anchored basis of the forward space. It may fall short
    of the full dimension with probability at most n / k_param.
    Arguments:
        - a: WFA
        - k_param: int >= 2 (default 3n)
        - rng: RandomSource
    Returns:
        - Basis
    """
    k_param = k_param if k_param is not None else max(2, 3 * a.n)
    if k_param < 2:
        raise ValueError('k_param must be at least 2')
    rng = rng if rng is not None else RandomSource()
    return Basis(_random_forward_rows(a, k_param, rng).matrix(), True, 'forward')


def backward_basis_rand(a, k_param=None, rng=None):
    """Randomized anchored basis of the backward space (columns)."""
    rows = forward_basis_rand(transpose(a), k_param, rng)
    return Basis(rows.matrix.T, True, 'backward')


def _as_forward_matrix(f):
    return f.rows() if isinstance(f, Basis) else f


def forward_reduce(a, f):
    """Forward reduction of a on the base f: the automaton
    (e_1, M'(σ), F final) where F M(σ) = M'(σ) F.
    Raises InvalidBasisError when f is not an anchored, independent,
    forward-closed set of rows.
    """
    rows = _as_forward_matrix(f)
    k = rows.rows
    if k == 0:
        return WFA.zero(a.alphabet)
    if rows.row(0) != a.init:
        raise InvalidBasisError('first basis row is not the initial vector')
    space = RowSpace(a.n)
    for i in range(k):
        if not space.add(rows.row(i)):
            raise InvalidBasisError('basis row {} is linearly dependent'.format(i))
    trans = {}
    for s in a.alphabet:
        solved = {}
        for i in range(k):
            coefficients = space.solve(rows.row(i) @ a.trans[s])
            if coefficients is None:
                raise InvalidBasisError('row {} times M({!r}) leaves the span'.format(i, a.alphabet.labels[s]))
            solved[i] = dict(coefficients.items())
        trans[s] = QMatrix(k, k, solved)
    return WFA(k, a.alphabet, trans, QVector.unit(k, 0, 'row'), rows @ a.final)


def backward_reduce(a, b):
    """Backward reduction on the columns of b: (init B, M'(σ), e_1^T) with
    M(σ) B = B M'(σ)."""
    columns = b.matrix if isinstance(b, Basis) else b
    return transpose(forward_reduce(transpose(a), columns.T))


def _basis_with_retries(a, k_param, rng, retries, logger, direction):
    if direction == 'forward':
        expected = forward_basis_det(a)[0].rows
        draw = forward_basis_rand
    else:
        expected = backward_basis_det(a)[0].cols
        draw = backward_basis_rand
    for attempt in range(retries):
        basis = draw(a, k_param, rng)
        if basis.dimension == expected:
            return basis
        logger.warning('Randomized {} basis has {} vectors, expected {} (attempt {})'.format(
            direction, basis.dimension, expected, attempt + 1))
    logger.warning('Falling back to the deterministic {} basis'.format(direction))
    if direction == 'forward':
        return Basis(forward_basis_det(a)[0], True, 'forward')
    return Basis(backward_basis_det(a)[0], True, 'backward')


def minimize(a, mode='deterministic', k_param=None, rng=None, retries=5, logger=SILENT):
    """Minimal automaton equivalent to a: forward reduction, then backward
    reduction of the result.
    Arguments:
        - a: WFA
        - mode: 'deterministic' or 'randomized'
        - k_param: int, randomized draws in {1..k_param n} (default 3n)
        - rng: RandomSource
        - retries: int, randomized bases tried before the deterministic fallback
        - logger: Logger
    Returns:
        - WFA
    """
    if mode not in ('deterministic', 'randomized'):
        raise ValueError('unknown minimisation mode {!r}'.format(mode))
    if mode == 'deterministic':
        forward = forward_reduce(a, Basis(forward_basis_det(a)[0]))
        result = backward_reduce(forward, Basis(backward_basis_det(forward)[0], True, 'backward'))
    else:
        rng = rng if rng is not None else RandomSource()
        forward = forward_reduce(a, _basis_with_retries(a, k_param, rng, retries, logger, 'forward'))
        result = backward_reduce(forward, _basis_with_retries(forward, k_param, rng, retries, logger, 'backward'))
    if not is_minimal(result):
        raise AssertionError('reduced automaton with {} states is not minimal'.format(result.n))
    return result


def hankel_rank(a, maxlen, budget=1000000):
    """Rank of the Hankel block H[x, y] = a(xy) for |x|, |y| <= maxlen."""
    size = count_words(len(a.alphabet), maxlen)
    if size * size > budget:
        raise BudgetExceededError('Hankel block of {}x{} entries exceeds the budget {}'.format(size, size, budget))
    words = list(all_words(a.alphabet, maxlen))
    return rank(QMatrix.from_rows([[evaluate(a, x + y) for y in words] for x in words]))


def duplicate_states(a):
    """Equivalent automaton with every state doubled:
    init (init/2, init/2), transitions diag(M, M), final (final, final)."""
    half = a.init.scale(Fraction(1, 2))
    return WFA(2 * a.n, a.alphabet, {s: block_diag(m, m) for s, m in a.trans.items()},
               concat(half, half), concat(a.final, a.final))
