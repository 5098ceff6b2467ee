# -*- coding: utf-8 -*-
"""
Rational-weighted finite automata.
===================================================
A WFA instanciation requires:
    - n: number of states (0 is the zero automaton),
    - alphabet: an Alphabet (ordered, distinct labels),
    - trans: a dict symbol id -> n x n QMatrix, total over the alphabet
    (missing symbols get the zero matrix),
    - init: row QVector of length n,
    - final: column QVector of length n.
Words are tuples of symbol ids. The value of a word w is
init · M(w_1) ... M(w_k) · final.

The deterministic procedures below explore the forward space
span{init · M(w)} breadth-first over (basis row, symbol) pairs, symbols in
alphabet order, which makes every witness a shortest one and reproducible.
"""
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product

from .errors import AlphabetMismatchError, BudgetExceededError, DimensionError, ForeignSymbolError
from .linalg import QMatrix, QVector, RowSpace, block_diag, concat


@dataclass(frozen=True)
class Alphabet:
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, 'labels', labels)
        for label in labels:
            if not isinstance(label, str) or not label or not label.isprintable() or any(c.isspace() for c in label):
                raise ValueError('invalid symbol label {!r}'.format(label))
        if len(set(labels)) != len(labels):
            raise ValueError('duplicate symbol labels in {}'.format(labels))
        object.__setattr__(self, '_index', {label: i for i, label in enumerate(labels)})

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __contains__(self, label):
        return label in self._index

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ForeignSymbolError('symbol {!r} is not in the alphabet'.format(label))

    def encode(self, labels):
        """Labels -> word (tuple of ids)."""
        return tuple(self.index(label) for label in labels)

    def decode(self, word):
        """Word -> list of labels."""
        self.check_word(word)
        return [self.labels[s] for s in word]

    def check_word(self, word):
        size = len(self.labels)
        for s in word:
            if not isinstance(s, int) or not 0 <= s < size:
                raise ForeignSymbolError('symbol id {!r} outside an alphabet of size {}'.format(s, size))


class Verdict(str, Enum):
    EQUIVALENT = 'equivalent'
    INEQUIVALENT = 'inequivalent'
    PROBABLY_EQUIVALENT = 'probably_equivalent'


@dataclass(frozen=True)
class Witness:
    word: tuple
    value_left: Fraction
    value_right: Fraction


@dataclass(frozen=True)
class EquivResult:
    """Outcome of an equivalence check.
    `witness` is set exactly when the verdict is INEQUIVALENT, `confidence`
    only for PROBABLY_EQUIVALENT. `details` holds method specific metadata.
    """
    verdict: Verdict
    witness: Witness = None
    confidence: Fraction = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.witness is not None) != (self.verdict == Verdict.INEQUIVALENT):
            raise ValueError('a witness goes with an inequivalent verdict, and only there')
        if self.witness is not None and self.witness.value_left == self.witness.value_right:
            raise ValueError('witness values do not differ')

    @property
    def equivalent(self):
        return self.verdict != Verdict.INEQUIVALENT


class WFA(object):
    """ Rational-weighted finite automaton (n, alphabet, M, init, final).
    """

    def __init__(self, n, alphabet, trans, init, final):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        self.n = n
        self.alphabet = alphabet
        if init.orientation != 'row' or init.length != n:
            raise DimensionError('initial vector must be a row of length {}'.format(n))
        if final.orientation != 'column' or final.length != n:
            raise DimensionError('final vector must be a column of length {}'.format(n))
        unknown = set(trans) - set(alphabet)
        if unknown:
            raise ForeignSymbolError('transitions for unknown symbols {}'.format(sorted(unknown)))
        self.trans = {}
        for s in alphabet:
            m = trans.get(s, QMatrix.zeros(n))
            if m.shape != (n, n):
                raise DimensionError('matrix of {!r} has shape {}, expected {}'.format(alphabet.labels[s], m.shape, (n, n)))
            self.trans[s] = m
        self.init = init
        self.final = final

    @classmethod
    def from_lists(cls, labels, init, final, trans):
        """Dense constructor: trans maps label -> list of rows."""
        alphabet = Alphabet(tuple(labels))
        n = len(init)
        return cls(n, alphabet,
                   {alphabet.index(label): QMatrix.from_rows(rows, n) for label, rows in trans.items()},
                   QVector.from_list(init, 'row'), QVector.from_list(final, 'column'))

    @classmethod
    def zero(cls, alphabet, n=0):
        return cls(n, alphabet, {}, QVector.zeros(n, 'row'), QVector.zeros(n, 'column'))

    def __eq__(self, other):
        return (isinstance(other, WFA) and self.n == other.n and self.alphabet == other.alphabet
                and self.trans == other.trans and self.init == other.init and self.final == other.final)

    def __repr__(self):
        return 'WFA(n={}, alphabet={})'.format(self.n, list(self.alphabet.labels))

    def __call__(self, word):
        return evaluate(self, word)


def evaluate(a, w):
    """Exact value of word w (tuple of symbol ids).
    Arguments:
        - a: WFA
        - w: tuple of int
    Returns:
        - Fraction
    """
    a.alphabet.check_word(w)
    vector = a.init
    for s in w:
        if vector.is_zero():
            return Fraction(0)
        vector = vector @ a.trans[s]
    return vector @ a.final


def evaluate_labels(a, labels):
    return evaluate(a, a.alphabet.encode(labels))


def transpose(a):
    """Reversed automaton: transpose(a)(w) = a(reverse(w))."""
    return WFA(a.n, a.alphabet, {s: m.T for s, m in a.trans.items()}, a.final.T, a.init.T)


def check_same_alphabet(b, c):
    if b.alphabet != c.alphabet:
        raise AlphabetMismatchError('alphabets {} and {} differ'.format(list(b.alphabet.labels), list(c.alphabet.labels)))


def difference(b, c):
    """Automaton of b(w) - c(w): block diagonal transitions, init (b, -c)."""
    check_same_alphabet(b, c)
    return WFA(b.n + c.n, b.alphabet,
               {s: block_diag(b.trans[s], c.trans[s]) for s in b.alphabet},
               concat(b.init, -c.init), concat(b.final, c.final))


def _forward_closure(a, stop_on_witness=False):
    """Breadth-first closure of init under right multiplication.
    Returns (space, words, witness) where witness is the first generating
    word whose vector has a non-zero product with the final vector.
    """
    space = RowSpace(a.n)
    words = []
    witness = None
    queue = deque()

    def consider(vector, word):
        nonlocal witness
        if space.add(vector):
            words.append(word)
            queue.append((vector, word))
            if witness is None and vector @ a.final != 0:
                witness = word
        return stop_on_witness and witness is not None

    if not a.init.is_zero() and consider(a.init, ()):
        return space, words, witness
    while queue:
        vector, word = queue.popleft()
        for s in a.alphabet:
            if consider(vector @ a.trans[s], word + (s,)):
                return space, words, witness
    return space, words, witness


def forward_basis_det(a):
    """Basis of the forward space span{init · M(w)}.
    Returns:
        - basis: QMatrix, row 0 is init when init != 0
        - words: list of words, words[i] generates row i
    """
    space, words, _ = _forward_closure(a)
    return space.matrix(), words


def backward_basis_det(a):
    """Basis of the backward space span{M(w) · final}, as the columns of
    the returned matrix; words[i] generates column i.
    """
    basis, words = forward_basis_det(transpose(a))
    return basis.T, [tuple(reversed(word)) for word in words]


def is_zero_det(a):
    """None when a is zero, otherwise a shortest word with a(w) != 0."""
    return _forward_closure(a, stop_on_witness=True)[2]


def is_zero_det_backward(a):
    """Same contract as is_zero_det, scanning the backward space."""
    witness = _forward_closure(transpose(a), stop_on_witness=True)[2]
    return None if witness is None else tuple(reversed(witness))


def equivalent_det(b, c):
    """Deterministic equivalence through zeroness of the difference.
    Arguments:
        - b: WFA
        - c: WFA
    Returns:
        - EquivResult
    """
    witness = is_zero_det(difference(b, c))
    if witness is None:
        return EquivResult(Verdict.EQUIVALENT, details={'method': 'det'})
    return EquivResult(Verdict.INEQUIVALENT, Witness(witness, evaluate(b, witness), evaluate(c, witness)),
                       details={'method': 'det'})


def count_words(size, maxlen):
    return sum(size ** k for k in range(maxlen + 1))


def enumerate_oracle(a, maxlen, budget=1000000):
    """Every word of length <= maxlen with its value, shortest first and
    lexicographic within a length.
    Raises BudgetExceededError when there are more than `budget` words.
    """
    total = count_words(len(a.alphabet), maxlen)
    if total > budget:
        raise BudgetExceededError('{} words exceed the enumeration budget {}'.format(total, budget))
    results = []
    level = [((), a.init)]
    for length in range(maxlen + 1):
        results.extend((word, vector @ a.final) for word, vector in level)
        if length < maxlen:
            level = [(word + (s,), vector @ a.trans[s]) for word, vector in level for s in a.alphabet]
    return results


def all_words(alphabet, maxlen):
    """All words up to maxlen, in the order used by enumerate_oracle."""
    for length in range(maxlen + 1):
        for word in product(range(len(alphabet)), repeat=length):
            yield word
