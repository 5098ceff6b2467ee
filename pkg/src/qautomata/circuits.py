# -*- coding: utf-8 -*-
"""
Arithmetic circuits.
===================================================
A Circuit instanciation requires:
    - gates: list of Gate records in topological order; a gate only reads
    gates with a smaller index,
    - output: index of the output gate,
    - denominator: positive integer; the circuit stands for the number
    value(output) / denominator (1 for circuits read from text).
Gate operations are 'const0', 'const1', 'var' (with a variable index),
'add', 'mul' and 'sub'. Internal gates have exactly two inputs, possibly the
same gate twice.

Text format, one gate per line, `#` starts a comment:
    g<i> = 0 | 1 | x<k> | add g<j> g<k> | mul g<j> g<k> | sub g<j> g<k>
    output g<i>
"""
import re
from dataclasses import dataclass

from .errors import BudgetExceededError, CircuitError, ParseError
from .random_source import RandomSource
from .residues import ModularResult, random_prime
from .trials import SEQUENTIAL
from .wfa import Verdict

INPUT_OPS = ('const0', 'const1', 'var')
BINARY_OPS = ('add', 'mul', 'sub')
SYMBOLS = {'add': '+', 'mul': '*', 'sub': '-'}


@dataclass(frozen=True)
class Gate:
    op: str
    inputs: tuple = ()
    var: int = None


class Circuit(object):
    """ Arithmetic circuit with a single output gate.
    """

    def __init__(self, gates, output, denominator=1):
        gates = tuple(gates)
        for index, gate in enumerate(gates):
            if gate.op in INPUT_OPS:
                if gate.inputs:
                    raise CircuitError('input gate {} has inputs'.format(index))
                if gate.op == 'var' and (not isinstance(gate.var, int) or gate.var < 0):
                    raise CircuitError('variable gate {} has no variable index'.format(index))
            elif gate.op in BINARY_OPS:
                if len(gate.inputs) != 2:
                    raise CircuitError('gate {} needs exactly two inputs'.format(index))
                if any(not 0 <= child < index for child in gate.inputs):
                    raise CircuitError('gate {} reads a gate that is not defined before it'.format(index))
            else:
                raise CircuitError('unknown gate operation {!r}'.format(gate.op))
        if not 0 <= output < len(gates):
            raise CircuitError('output gate {} does not exist'.format(output))
        if denominator < 1:
            raise CircuitError('denominator must be a positive integer')
        self.gates = gates
        self.output = output
        self.denominator = denominator

    def __len__(self):
        return len(self.gates)

    def __eq__(self, other):
        return (isinstance(other, Circuit) and self.gates == other.gates and self.output == other.output
                and self.denominator == other.denominator)

    def __repr__(self):
        return 'Circuit({} gates, output g{})'.format(len(self.gates), self.output)

    def variables(self):
        return sorted({gate.var for gate in self.gates if gate.op == 'var'})

    def ops(self):
        return {gate.op for gate in self.gates}

    def heights(self):
        """Longest distance from an input gate, per gate."""
        heights = []
        for gate in self.gates:
            heights.append(0 if gate.op in INPUT_OPS else 1 + max(heights[child] for child in gate.inputs))
        return heights

    @property
    def depth(self):
        return self.heights()[self.output]


class CircuitBuilder(object):
    """ Incremental construction of a circuit, sharing identical gates.
    """

    def __init__(self):
        self.gates = []
        self._index = {}

    def _gate(self, gate):
        if gate not in self._index:
            self._index[gate] = len(self.gates)
            self.gates.append(gate)
        return self._index[gate]

    def zero(self):
        return self._gate(Gate('const0'))

    def one(self):
        return self._gate(Gate('const1'))

    def var(self, index):
        return self._gate(Gate('var', (), index))

    def add(self, left, right):
        return self._gate(Gate('add', (left, right)))

    def mul(self, left, right):
        return self._gate(Gate('mul', (left, right)))

    def sub(self, left, right):
        return self._gate(Gate('sub', (left, right)))

    def constant(self, value):
        """Integer constant from 0/1 gates by binary expansion."""
        if value < 0:
            return self.sub(self.zero(), self.constant(-value))
        if value == 0:
            return self.zero()
        one = self.one()
        acc = one
        for bit in bin(value)[3:]:
            acc = self.add(acc, acc)
            if bit == '1':
                acc = self.add(acc, one)
        return acc

    def power(self, base, exponent):
        """base^exponent by repeated squaring (exponent >= 0)."""
        result = None
        square = base
        while exponent:
            if exponent & 1:
                result = square if result is None else self.mul(result, square)
            exponent >>= 1
            if exponent:
                square = self.mul(square, square)
        return self.one() if result is None else result

    def total(self, terms):
        """Sum of gate indices (None when empty)."""
        result = None
        for term in terms:
            result = term if result is None else self.add(result, term)
        return result

    def build(self, output, denominator=1):
        return Circuit(self.gates, output, denominator)


_NAME = re.compile(r'^g(\d+)$')
_VARIABLE = re.compile(r'^x(\d+)$')


def parse_circuit(text):
    """Read the circuit text format.
    Raises ParseError with the offending line number.
    """
    builder_gates = []
    names = {}
    output = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if output is not None:
            raise ParseError('content after the output line', number)
        tokens = line.split()
        if tokens[0] == 'output':
            if len(tokens) != 2 or tokens[1] not in names:
                raise ParseError('output must name a defined gate', number)
            output = names[tokens[1]]
            continue
        if len(tokens) < 3 or tokens[1] != '=' or not _NAME.match(tokens[0]):
            raise ParseError('expected `g<i> = <definition>`', number)
        if tokens[0] in names:
            raise ParseError('gate {} defined twice'.format(tokens[0]), number)
        definition = tokens[2:]
        if definition in (['0'], ['1']):
            gate = Gate('const0' if definition == ['0'] else 'const1')
        elif len(definition) == 1 and _VARIABLE.match(definition[0]):
            gate = Gate('var', (), int(_VARIABLE.match(definition[0]).group(1)))
        elif len(definition) == 3 and definition[0] in BINARY_OPS:
            missing = [name for name in definition[1:] if name not in names]
            if missing:
                raise ParseError('gate {} is used before its definition'.format(missing[0]), number)
            gate = Gate(definition[0], tuple(names[name] for name in definition[1:]))
        else:
            raise ParseError('cannot read gate definition {!r}'.format(' '.join(definition)), number)
        names[tokens[0]] = len(builder_gates)
        builder_gates.append(gate)
    if output is None:
        raise ParseError('missing `output g<i>` line')
    return Circuit(builder_gates, output)


def render_circuit(c):
    lines = []
    for index, gate in enumerate(c.gates):
        if gate.op == 'const0':
            definition = '0'
        elif gate.op == 'const1':
            definition = '1'
        elif gate.op == 'var':
            definition = 'x{}'.format(gate.var)
        else:
            definition = '{} g{} g{}'.format(gate.op, *gate.inputs)
        lines.append('g{} = {}'.format(index, definition))
    lines.append('output g{}'.format(c.output))
    return '\n'.join(lines) + '\n'


def _input_value(gate, assignment):
    if gate.op == 'const0':
        return 0
    if gate.op == 'const1':
        return 1
    if assignment is None or gate.var not in assignment:
        raise CircuitError('no value assigned to variable x{}'.format(gate.var))
    return assignment[gate.var]


def estimate_bits(c, assignment=None):
    """Upper bound on the bit size of the output value."""
    bits = []
    for gate in c.gates:
        if gate.op in INPUT_OPS:
            bits.append(max(1, abs(_input_value(gate, assignment)).bit_length()))
        elif gate.op == 'mul':
            bits.append(bits[gate.inputs[0]] + bits[gate.inputs[1]])
        else:
            bits.append(max(bits[child] for child in gate.inputs) + 1)
    return bits[c.output]


def circuit_eval_exact(c, assignment=None, bit_budget=1000000):
    """Exact integer value of the output gate.
    Raises BudgetExceededError when the value may need more than
    `bit_budget` bits.
    """
    bound = estimate_bits(c, assignment)
    if bound > bit_budget:
        raise BudgetExceededError('output may need {} bits, budget is {}'.format(bound, bit_budget))
    values = []
    for gate in c.gates:
        if gate.op in INPUT_OPS:
            values.append(_input_value(gate, assignment))
        else:
            left, right = (values[child] for child in gate.inputs)
            values.append(left + right if gate.op == 'add' else left * right if gate.op == 'mul' else left - right)
    return values[c.output]


def circuit_eval_mod(c, p, assignment=None):
    """Value of the output gate modulo p."""
    values = []
    for gate in c.gates:
        if gate.op in INPUT_OPS:
            values.append(_input_value(gate, assignment) % p)
        else:
            left, right = (values[child] for child in gate.inputs)
            if gate.op == 'add':
                values.append((left + right) % p)
            elif gate.op == 'mul':
                values.append(left * right % p)
            else:
                values.append((left - right) % p)
    return values[c.output]


def minimal_heights(c):
    """Lowest height each gate can take in the alternating normal form:
    inputs at 0, additions at odd heights, multiplications at even heights."""
    heights = []
    for gate in c.gates:
        if gate.op in ('const0', 'const1'):
            heights.append(0)
        elif gate.op in ('add', 'mul'):
            lowest = 1 + max(heights[child] for child in gate.inputs)
            parity = 1 if gate.op == 'add' else 0
            heights.append(lowest if lowest % 2 == parity else lowest + 1)
        else:
            raise CircuitError('levelization accepts only 0/1 inputs, add and mul gates')
    return heights


def levelize(c, depth=None):
    """Equivalent circuit in alternating normal form: inputs at height 0,
    add gates at odd heights, mul gates at even heights, and every gate
    reading two gates of the height just below. Gates are lifted with
    x + 0 (odd heights) and x * 1 (even heights).
    Arguments:
        - c: Circuit over 0/1, add, mul
        - depth: target height of the output (default: lowest possible)
    Returns:
        - (Circuit, depth)
    """
    heights = minimal_heights(c)
    depth = heights[c.output] if depth is None else depth
    if depth < heights[c.output]:
        raise CircuitError('output cannot be placed below height {}'.format(heights[c.output]))
    builder = CircuitBuilder()
    memo = {}

    def constant_at(op, height):
        return lift(None, height, op)

    def lift(index, height, op=None):
        key = (index, op, height)
        if key in memo:
            return memo[key]
        gate = c.gates[index] if index is not None else Gate(op)
        if height == 0:
            if gate.op not in ('const0', 'const1'):
                raise CircuitError('gate {} cannot sit at height 0'.format(index))
            result = builder.zero() if gate.op == 'const0' else builder.one()
        elif gate.op == 'add' and height % 2 == 1:
            result = builder.add(*(lift(child, height - 1) for child in gate.inputs))
        elif gate.op == 'mul' and height % 2 == 0:
            result = builder.mul(*(lift(child, height - 1) for child in gate.inputs))
        elif height % 2 == 1:
            result = builder.add(lift(index, height - 1, op), constant_at('const0', height - 1))
        else:
            result = builder.mul(lift(index, height - 1, op), constant_at('const1', height - 1))
        memo[key] = result
        return result

    return builder.build(lift(c.output, depth)), depth


def acit_equal(c1, c2, trials=10, rng=None, runner=SEQUENTIAL, prime_bits=32):
    """Compare two circuits modulo `trials` random primes.
    Variables get random 32-bit values, the same for both circuits within a
    trial. A differing residue proves the circuits differ.
    Returns:
        - ModularResult (details['substitution'] is the first trial's
        assignment when there are variables)
    """
    rng = rng if rng is not None else RandomSource()
    variables = sorted(set(c1.variables()) | set(c2.variables()))

    def trial(index, stream):
        p = random_prime(stream, prime_bits)
        assignment = {k: stream.randint(0, (1 << 32) - 1) for k in variables}
        return p, circuit_eval_mod(c1, p, assignment), circuit_eval_mod(c2, p, assignment), assignment

    outcomes = runner.map(trial, rng, trials)
    residues = tuple((left, right) for _, left, right, _ in outcomes)
    details = {'substitution': outcomes[0][3]} if variables and outcomes else {}
    verdict = Verdict.PROBABLY_EQUIVALENT if all(l == r for l, r in residues) else Verdict.INEQUIVALENT
    return ModularResult(verdict, tuple(p for p, _, _, _ in outcomes), residues, details)
