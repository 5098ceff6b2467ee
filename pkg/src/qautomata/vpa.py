# -*- coding: utf-8 -*-
"""
Rational-weighted visibly pushdown automata.
===================================================
A WVPA instanciation requires:
    - n: number of states,
    - alphabet: a VisiblyAlphabet (calls, returns, internals); symbol ids
    index calls, then returns, then internals,
    - stack: tuple of stack symbol labels,
    - m_call: dict (call id, stack index) -> n x n QMatrix,
    - m_ret: dict (return id, stack index) -> n x n QMatrix,
    - m_int: dict internal id -> n x n QMatrix,
    - init / final: row / column QVector.
Missing matrices are zero. On a well-matched word the matrix semantics is
    M(ι) = m_int(ι),  M(uv) = M(u) M(v),
    M(a u b) = sum_γ m_call(a, γ) M(u) m_ret(b, γ),
and the value is init M(w) final.

Equivalence goes through the sum over the well-matched words of level n²
of (A(w) - B(w))², expanded with product automata and evaluated modulo
random primes with numpy.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .circuits import CircuitBuilder, levelize
from .errors import AlphabetMismatchError, CircuitError, DimensionError, NotWellMatchedError
from .linalg import QMatrix, QVector, RowSpace, block_diag, concat, kron
from .logger import SILENT
from .random_source import RandomSource
from .residues import ModularResult, random_prime, rational_mod
from .trials import SEQUENTIAL
from .wfa import Alphabet, Verdict


@dataclass(frozen=True)
class VisiblyAlphabet:
    calls: tuple
    returns: tuple
    internals: tuple

    def __post_init__(self):
        for name in ('calls', 'returns', 'internals'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        kinds = {}
        for kind, labels in (('call', self.calls), ('return', self.returns), ('internal', self.internals)):
            for label in labels:
                if label in kinds:
                    raise ValueError('symbol {!r} is listed as both {} and {}'.format(label, kinds[label], kind))
                kinds[label] = kind
        if not kinds:
            raise ValueError('a visibly pushdown alphabet needs at least one symbol')
        object.__setattr__(self, 'alphabet', Alphabet(self.calls + self.returns + self.internals))

    def kind(self, symbol):
        if symbol < len(self.calls):
            return 'call'
        if symbol < len(self.calls) + len(self.returns):
            return 'return'
        return 'internal'

    def call_ids(self):
        return range(len(self.calls))

    def return_ids(self):
        return range(len(self.calls), len(self.calls) + len(self.returns))

    def internal_ids(self):
        return range(len(self.calls) + len(self.returns), len(self.alphabet))

    def encode(self, labels):
        return self.alphabet.encode(labels)

    def decode(self, word):
        return self.alphabet.decode(word)


@dataclass(frozen=True)
class MatchedPair:
    call: int
    inner: tuple
    ret: int


def is_well_matched(alphabet, w):
    """Nesting structure of w (tuple of internal ids and MatchedPair), or
    None when w is not well-matched."""
    alphabet.alphabet.check_word(w)
    frames = [(None, [])]
    for symbol in w:
        kind = alphabet.kind(symbol)
        if kind == 'internal':
            frames[-1][1].append(symbol)
        elif kind == 'call':
            frames.append((symbol, []))
        else:
            if len(frames) == 1:
                return None
            call, items = frames.pop()
            frames[-1][1].append(MatchedPair(call, tuple(items), symbol))
    if len(frames) != 1:
        return None
    return tuple(frames[0][1])


class WVPA(object):
    """ Rational-weighted visibly pushdown automaton.
    """

    def __init__(self, n, alphabet, stack, m_call, m_ret, m_int, init, final):
        self.n = n
        self.alphabet = alphabet
        self.stack = tuple(stack)
        if len(set(self.stack)) != len(self.stack):
            raise ValueError('duplicate stack symbols')
        if init.orientation != 'row' or init.length != n or final.orientation != 'column' or final.length != n:
            raise DimensionError('initial/final vectors must have length {}'.format(n))
        gammas = range(len(self.stack))
        self.m_call = self._total(m_call, [(a, g) for a in alphabet.call_ids() for g in gammas], 'call')
        self.m_ret = self._total(m_ret, [(b, g) for b in alphabet.return_ids() for g in gammas], 'return')
        self.m_int = self._total(m_int, list(alphabet.internal_ids()), 'internal')
        self.init = init
        self.final = final

    def _total(self, mapping, keys, kind):
        unknown = set(mapping) - set(keys)
        if unknown:
            raise DimensionError('{} matrices for unknown keys {}'.format(kind, sorted(unknown)))
        result = {}
        for key in keys:
            m = mapping.get(key, QMatrix.zeros(self.n))
            if m.shape != (self.n, self.n):
                raise DimensionError('{} matrix {} has shape {}'.format(kind, key, m.shape))
            result[key] = m
        return result

    def __eq__(self, other):
        return (isinstance(other, WVPA) and (self.n, self.alphabet, self.stack) == (other.n, other.alphabet, other.stack)
                and self.m_call == other.m_call and self.m_ret == other.m_ret and self.m_int == other.m_int
                and self.init == other.init and self.final == other.final)

    def __repr__(self):
        return 'WVPA(n={}, stack={})'.format(self.n, list(self.stack))

    def matrices(self):
        for m in self.m_call.values():
            yield m
        for m in self.m_ret.values():
            yield m
        for m in self.m_int.values():
            yield m

    def call_sum(self, gamma):
        return _sum_matrices(self.n, (self.m_call[(a, gamma)] for a in self.alphabet.call_ids()))

    def return_sum(self, gamma):
        return _sum_matrices(self.n, (self.m_ret[(b, gamma)] for b in self.alphabet.return_ids()))

    def level_base(self):
        """I + sum of the internal matrices."""
        return _sum_matrices(self.n, self.m_int.values()) + QMatrix.identity(self.n)


def _sum_matrices(n, matrices):
    total = QMatrix.zeros(n)
    for m in matrices:
        total = total + m
    return total


def vpa_matrix(a, nesting):
    result = QMatrix.identity(a.n)
    for item in nesting:
        if isinstance(item, MatchedPair):
            inner = vpa_matrix(a, item.inner)
            block = _sum_matrices(a.n, (a.m_call[(item.call, g)] @ inner @ a.m_ret[(item.ret, g)]
                                        for g in range(len(a.stack))))
        else:
            block = a.m_int[item]
        result = result @ block
    return result


def vpa_evaluate(a, w):
    """Value of a well-matched word (tuple of symbol ids)."""
    nesting = is_well_matched(a.alphabet, w)
    if nesting is None:
        raise NotWellMatchedError('word {} is not well-matched'.format(a.alphabet.decode(w)))
    return a.init @ (vpa_matrix(a, nesting) @ a.final)


def vpa_product(a, b):
    """Automaton of a(w) · b(w) on stack alphabet stack_a x stack_b."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError('visibly pushdown alphabets differ')
    stack = tuple((g, h) for g in a.stack for h in b.stack)
    width = len(b.stack)
    m_call, m_ret = {}, {}
    for i in range(len(a.stack)):
        for j in range(width):
            for c in a.alphabet.call_ids():
                m_call[(c, i * width + j)] = kron(a.m_call[(c, i)], b.m_call[(c, j)])
            for r in a.alphabet.return_ids():
                m_ret[(r, i * width + j)] = kron(a.m_ret[(r, i)], b.m_ret[(r, j)])
    m_int = {s: kron(a.m_int[s], b.m_int[s]) for s in a.alphabet.internal_ids()}
    return WVPA(a.n * b.n, a.alphabet, stack, m_call, m_ret, m_int, kron(a.init, b.init), kron(a.final, b.final))


def level_sum_exact(a, levels):
    """init S_levels final with S_0 = I + sum m_int and
    S_{i+1} = sum_γ (sum_a m_call(a,γ)) S_i (sum_b m_ret(b,γ)) + S_i S_i,
    the derivation-weighted sum of the values of the words of that level."""
    pairs = [(a.call_sum(g), a.return_sum(g)) for g in range(len(a.stack))]
    s = a.level_base()
    for _ in range(levels):
        s = _sum_matrices(a.n, (c @ s @ r for c, r in pairs)) + s @ s
    return a.init @ (s @ a.final)


def _denominators(a):
    values = list(a.init.to_list()) + list(a.final.to_list())
    for m in a.matrices():
        values.extend(v for _, v in m.entries())
    return reduce_lcm(Fraction(v).denominator for v in values)


def reduce_lcm(numbers):
    result = 1
    for number in numbers:
        result = lcm(result, number)
    return result


def _residue_array(m, p):
    array = np.zeros(m.shape, dtype=np.int64)
    for (i, j), v in m.entries():
        array[i, j] = rational_mod(v, p)
    return array


def _mulmod(x, y, p):
    """x @ y mod p for residues below 2^32 without int64 overflow: y is
    split into 16-bit limbs so every partial dot product stays below 2^63."""
    low = (x @ (y & 0xFFFF)) % p
    high = (x @ (y >> 16)) % p
    return (low + (high << 16) % p) % p


def level_sum_mod(a, levels, p):
    """level_sum_exact modulo p (p must not divide any denominator)."""
    if a.n == 0:
        return 0
    pairs = [(_residue_array(a.call_sum(g), p), _residue_array(a.return_sum(g), p)) for g in range(len(a.stack))]
    s = _residue_array(a.level_base(), p)
    for _ in range(levels):
        following = _mulmod(s, s, p)
        for c, r in pairs:
            following = (following + _mulmod(_mulmod(c, s, p), r, p)) % p
        s = following
    init = _residue_array(a.init.as_matrix(), p)
    final = _residue_array(a.final.as_matrix(), p)
    return int(_mulmod(_mulmod(init, s, p), final, p)[0, 0])


def vpa_equivalent(a, b, trials=10, rng=None, levels=None, runner=SEQUENTIAL, prime_bits=32, logger=SILENT):
    """Randomized equivalence of two WVPA.
    For each of `trials` random primes p, checks
    sum(A⊗A) + sum(B⊗B) - 2 sum(A⊗B) = 0 mod p, the sums running over the
    level `levels` (default (n_a + n_b)²). A non-zero residue is a proof of
    inequivalence.
    Returns:
        - ModularResult with residues (difference, 0) per prime
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError('visibly pushdown alphabets differ')
    if prime_bits > 32:
        raise ValueError('modular level sums need primes of at most 32 bits')
    rng = rng if rng is not None else RandomSource()
    levels = (a.n + b.n) ** 2 if levels is None else levels
    products = (vpa_product(a, a), vpa_product(b, b), vpa_product(a, b))
    denominator = lcm(_denominators(a), _denominators(b))

    def trial(index, stream):
        p = random_prime(stream, prime_bits)
        while denominator % p == 0:
            logger.warning('Prime {} divides a weight denominator, redrawing'.format(p))
            p = random_prime(stream, prime_bits)
        aa, bb, ab = (level_sum_mod(x, levels, p) for x in products)
        return p, (aa + bb - 2 * ab) % p

    outcomes = runner.map(trial, rng, trials)
    residues = tuple((difference, 0) for _, difference in outcomes)
    verdict = Verdict.PROBABLY_EQUIVALENT if all(d == 0 for d, _ in residues) else Verdict.INEQUIVALENT
    return ModularResult(verdict, tuple(p for p, _ in outcomes), residues, {'levels': levels})


@dataclass(frozen=True)
class SpanStabilisation:
    level: int
    dimension: int
    basis: tuple


def _flatten(m):
    return {i * m.cols + j: v for (i, j), v in m.entries()}


def span_stabilisation(a):
    """Level at which span{M(w) : w of level i} stops growing, with its
    dimension and a basis (as matrices)."""
    n = a.n
    space = RowSpace(n * n)
    basis = []
    for m in [QMatrix.identity(n)] + list(a.m_int.values()):
        if space.add(_flatten(m)):
            basis.append(m)
    pairs = [(c, r) for c in a.alphabet.call_ids() for r in a.alphabet.return_ids()]
    level = 0
    while True:
        candidates = [_sum_matrices(n, (a.m_call[(c, g)] @ x @ a.m_ret[(r, g)] for g in range(len(a.stack))))
                      for x in basis for c, r in pairs]
        candidates += [x @ y for x in basis for y in basis]
        grown = [m for m in candidates if space.add(_flatten(m))]
        if not grown:
            return SpanStabilisation(level, len(basis), tuple(basis))
        basis.extend(grown)
        level += 1


def vpa_difference(a, b):
    """Block-diagonal automaton of a(w) - b(w) on stack_a + stack_b, where
    every stack symbol of one automaton acts as zero on the other block."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError('visibly pushdown alphabets differ')
    stack = tuple(('left', g) for g in a.stack) + tuple(('right', h) for h in b.stack)
    zero_a, zero_b = QMatrix.zeros(a.n), QMatrix.zeros(b.n)
    m_call, m_ret = {}, {}
    for g in range(len(a.stack)):
        for c in a.alphabet.call_ids():
            m_call[(c, g)] = block_diag(a.m_call[(c, g)], zero_b)
        for r in a.alphabet.return_ids():
            m_ret[(r, g)] = block_diag(a.m_ret[(r, g)], zero_b)
    for h in range(len(b.stack)):
        for c in a.alphabet.call_ids():
            m_call[(c, len(a.stack) + h)] = block_diag(zero_a, b.m_call[(c, h)])
        for r in a.alphabet.return_ids():
            m_ret[(r, len(a.stack) + h)] = block_diag(zero_a, b.m_ret[(r, h)])
    m_int = {s: block_diag(a.m_int[s], b.m_int[s]) for s in a.alphabet.internal_ids()}
    return WVPA(a.n + b.n, a.alphabet, stack, m_call, m_ret, m_int, concat(a.init, -b.init), concat(a.final, b.final))


def vpa_equivalent_exact(a, b):
    """Deterministic check: init X final = 0 on a basis of the stabilised
    span of the difference automaton."""
    difference = vpa_difference(a, b)
    stable = span_stabilisation(difference)
    return all(difference.init @ (x @ difference.final) == 0 for x in stable.basis)


def random_well_matched(alphabet, max_length, rng):
    """Random well-matched word of length at most max_length."""
    calls, returns, internals = (list(alphabet.call_ids()), list(alphabet.return_ids()),
                                 list(alphabet.internal_ids()))
    remaining = rng.randint(0, max_length)
    word, depth = [], 0
    while remaining > depth:
        options = []
        if internals:
            options.append('internal')
        if calls and returns and remaining - 1 >= depth + 1:
            options.append('call')
        if depth:
            options.append('return')
        if not options:
            break
        choice = rng.choice(options)
        if choice == 'internal':
            word.append(rng.choice(internals))
        elif choice == 'call':
            word.append(rng.choice(calls))
            depth += 1
        else:
            word.append(rng.choice(returns))
            depth -= 1
        remaining -= 1
    word.extend(rng.choice(returns) for _ in range(depth))
    return tuple(word)


def _gate_matrix_mul(builder, x, y):
    """Product of two sparse matrices of gate indices {(i, j): gate}."""
    by_row = {}
    for (k, j), gate in y.items():
        by_row.setdefault(k, []).append((j, gate))
    terms = {}
    for (i, k), left in x.items():
        for j, right in by_row.get(k, []):
            terms.setdefault((i, j), []).append(builder.mul(left, right))
    return {key: builder.total(parts) for key, parts in terms.items()}


def _gate_matrix_add(builder, x, y):
    result = dict(x)
    for key, gate in y.items():
        result[key] = builder.add(result[key], gate) if key in result else gate
    return result


def _gate_matrix_scale(builder, x, factor):
    if factor is None:
        return x
    return {key: builder.mul(factor, gate) for key, gate in x.items()}


def _constant_matrix(builder, m, scale):
    return {key: builder.constant(int(v * scale)) for key, v in m.entries()}


def level_sum_circuit(a, levels):
    """Circuit computing level_sum_exact(a, levels) · denominator.
    Weights are cleared by the lcm D of all denominators: the circuit keeps
    T_i = D^(e_i) S_i with integer entries, e_0 = 1 and
    e_{i+1} = max(e_i + 2, 2 e_i), and outputs (D init) T_levels (D final).
    Returns:
        - Circuit with denominator D^(e_levels + 2)
    """
    builder = CircuitBuilder()
    d = _denominators(a)
    scale_gate = builder.constant(d)

    def power_of_d(exponent):
        return None if exponent == 0 or d == 1 else builder.power(scale_gate, exponent)

    pairs = [(_constant_matrix(builder, a.call_sum(g), d), _constant_matrix(builder, a.return_sum(g), d))
             for g in range(len(a.stack))]
    t = _constant_matrix(builder, a.level_base(), d)
    exponent = 1
    for _ in range(levels):
        following = max(exponent + 2, 2 * exponent)
        nested = {}
        for c, r in pairs:
            nested = _gate_matrix_add(builder, nested, _gate_matrix_mul(builder, _gate_matrix_mul(builder, c, t), r))
        nested = _gate_matrix_scale(builder, nested, power_of_d(following - exponent - 2))
        squared = _gate_matrix_scale(builder, _gate_matrix_mul(builder, t, t), power_of_d(following - 2 * exponent))
        t = _gate_matrix_add(builder, nested, squared)
        exponent = following
    init = {(0, j): gate for (_, j), gate in _constant_matrix(builder, a.init.as_matrix(), d).items()}
    final = {(i, 0): gate for (i, _), gate in _constant_matrix(builder, a.final.as_matrix(), d).items()}
    value = _gate_matrix_mul(builder, _gate_matrix_mul(builder, init, t), final).get((0, 0))
    output = builder.zero() if value is None else value
    return builder.build(output, d ** (exponent + 2))


CALL, RETURN, INTERNAL = 'c', 'r', 'i'
ACIT_ALPHABET = VisiblyAlphabet((CALL,), (RETURN,), (INTERNAL,))


def acit_word(depth):
    """w_0 = ι; w_h = ι w_{h-1} for odd h, c w_{h-1} r w_{h-1} for even h."""
    call, ret, internal = 0, 1, 2
    word = (internal,)
    for height in range(1, depth + 1):
        word = (internal,) + word if height % 2 == 1 else (call,) + word + (ret,) + word
    return word


def acit_normalizer(depth):
    """M_0 = 1, M_h = 2 M_{h-1} for odd h, M_{h-1}² for even h."""
    value = 1
    for height in range(1, depth + 1):
        value = 2 * value if height % 2 == 1 else value * value
    return value


def acit_to_vpa(c, depth=None):
    """WVPA over calls {c}, returns {r}, internals {i} giving the word
    acit_word(d) the weight value(c) / acit_normalizer(d), d the depth of
    the levelized circuit (or `depth` when given, to align two circuits).
    States are the levelized gates plus a final leaf state; the stack holds
    the right operand of each multiplication.
    """
    if c.ops() - {'const0', 'const1', 'add', 'mul'}:
        raise CircuitError('only circuits over 0, 1, add and mul can be turned into automata')
    levelled, depth = levelize(c, depth)
    gates = levelled.gates
    leaf = len(gates)
    n = leaf + 1
    right_operands = sorted({gate.inputs[1] for gate in gates if gate.op == 'mul'})
    slot = {gate: index for index, gate in enumerate(right_operands)}
    internal, calls, returns = {}, {}, {}
    half = Fraction(1, 2)
    for index, gate in enumerate(gates):
        if gate.op == 'add':
            for child in gate.inputs:
                internal[(index, child)] = internal.get((index, child), 0) + half
        elif gate.op == 'mul':
            left, right = gate.inputs
            calls.setdefault(slot[right], {})[(index, left)] = 1
        elif gate.op == 'const1':
            internal[(index, leaf)] = 1
    call_id, ret_id, internal_id = 0, 1, 2
    m_call = {(call_id, g): QMatrix.from_entries(n, n, entries) for g, entries in calls.items()}
    m_ret = {(ret_id, g): QMatrix.from_entries(n, n, {(leaf, operand): 1}) for operand, g in slot.items()}
    m_int = {internal_id: QMatrix.from_entries(n, n, internal)}
    stack = tuple('g{}'.format(operand) for operand in right_operands)
    return WVPA(n, ACIT_ALPHABET, stack, m_call, m_ret, m_int,
                QVector.unit(n, levelled.output, 'row'), QVector.unit(n, leaf, 'column'))
