# -*- coding: utf-8 -*-
"""
Text formats of automata.
===================================================
One declaration per line, `#` starts a comment, states are numbered from 0,
weights are integers or `p/q`.

    kind wfa | pra | vpa
    states <n>
    init <n weights>
    final <n weights>

wfa:
    alphabet <labels>
    trans <symbol> <src> <dst> <weight>
pra (the reserved label `eps` is the silent move):
    alphabet <labels>
    rewards <s>
    trans <symbol> <src> <dst> <probability> <s rewards in -1 0 1>
vpa:
    calls <labels>
    returns <labels>
    internals <labels>
    stack <labels>
    call <symbol> <stack symbol> <src> <dst> <weight>
    return <symbol> <stack symbol> <src> <dst> <weight>
    internal <symbol> <src> <dst> <weight>
"""
from .errors import ParseError, QAutomataError, RewardRangeError, StochasticityError
from .linalg import QMatrix, QVector
from .pra import PRA
from .utils import format_rational, parse_rational
from .vpa import WVPA, VisiblyAlphabet
from .wfa import WFA, Alphabet

HEADERS = {
    'wfa': ('states', 'init', 'final', 'alphabet'),
    'pra': ('states', 'init', 'final', 'alphabet', 'rewards'),
    'vpa': ('states', 'init', 'final', 'calls', 'returns', 'internals', 'stack'),
}
TRANSITIONS = {
    'wfa': ('trans',),
    'pra': ('trans',),
    'vpa': ('call', 'return', 'internal'),
}


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split('#', 1)[0].split()
        if tokens:
            yield number, tokens


def _natural(token, line, what):
    if not token.isdigit():
        raise ParseError('{} must be a non-negative integer, got {!r}'.format(what, token), line)
    return int(token)


class _Document(object):
    """Headers and transition lines of one automaton file."""

    def __init__(self, text):
        self.kind = None
        self.headers = {}
        self.lines = {}
        self.transitions = []
        for number, tokens in _lines(text):
            keyword, values = tokens[0], tokens[1:]
            if self.kind is None:
                if keyword != 'kind' or len(values) != 1 or values[0] not in HEADERS:
                    raise ParseError('the first declaration must be `kind wfa|pra|vpa`', number)
                self.kind = values[0]
            elif keyword in HEADERS[self.kind]:
                if keyword in self.headers:
                    raise ParseError('`{}` declared twice'.format(keyword), number)
                self.headers[keyword] = values
                self.lines[keyword] = number
            elif keyword in TRANSITIONS[self.kind]:
                self.transitions.append((number, keyword, values))
            else:
                raise ParseError('unknown declaration `{}` in a {} file'.format(keyword, self.kind), number)
        if self.kind is None:
            raise ParseError('empty document')
        missing = [key for key in HEADERS[self.kind] if key not in self.headers and key not in ('stack', 'rewards')]
        if missing:
            raise ParseError('missing declaration `{}`'.format(missing[0]))

    def states(self):
        values = self.headers['states']
        if len(values) != 1:
            raise ParseError('`states` takes one number', self.lines['states'])
        return _natural(values[0], self.lines['states'], 'state count')

    def vector(self, key, n, orientation):
        values = self.headers[key]
        line = self.lines[key]
        if len(values) != n:
            raise ParseError('`{}` has {} weights for {} states'.format(key, len(values), n), line)
        return QVector.from_list([parse_rational(v, line) for v in values], orientation)

    def state(self, token, n, line):
        index = _natural(token, line, 'state')
        if index >= n:
            raise ParseError('state {} outside 0..{}'.format(index, n - 1), line)
        return index


def _store(entries, key, value, line):
    if key in entries:
        raise ParseError('transition declared twice', line)
    entries[key] = value


def _build_wfa(document):
    n = document.states()
    try:
        alphabet = Alphabet(tuple(document.headers['alphabet']))
    except ValueError as error:
        raise ParseError(str(error), document.lines['alphabet'])
    entries = {}
    for line, _, values in document.transitions:
        if len(values) != 4:
            raise ParseError('expected `trans <symbol> <src> <dst> <weight>`', line)
        symbol = _symbol(alphabet, values[0], line)
        key = (symbol, document.state(values[1], n, line), document.state(values[2], n, line))
        _store(entries, key, parse_rational(values[3], line), line)
    trans = _matrices(entries, n)
    return WFA(n, alphabet, trans, document.vector('init', n, 'row'), document.vector('final', n, 'column'))


def _symbol(alphabet, label, line):
    if label not in alphabet:
        raise ParseError('symbol {!r} is not declared'.format(label), line)
    return alphabet.index(label)


def _matrices(entries, n):
    grouped = {}
    for (key, i, j), value in entries.items():
        grouped.setdefault(key, {})[(i, j)] = value
    return {key: QMatrix.from_entries(n, n, values) for key, values in grouped.items()}


def _build_pra(document):
    n = document.states()
    s = 0
    if 'rewards' in document.headers:
        values = document.headers['rewards']
        if len(values) != 1:
            raise ParseError('`rewards` takes one number', document.lines['rewards'])
        s = _natural(values[0], document.lines['rewards'], 'reward count')
    try:
        alphabet = Alphabet(tuple(document.headers['alphabet']))
    except ValueError as error:
        raise ParseError(str(error), document.lines['alphabet'])
    entries, rewards = {}, {}
    # first line of each (symbol, row) and line of each transition
    lines = {'init': document.lines['init'], 'final': document.lines['final']}
    for line, _, values in document.transitions:
        if len(values) != 4 + s:
            raise ParseError('expected `trans <symbol> <src> <dst> <probability>` and {} rewards'.format(s), line)
        symbol = _symbol(alphabet, values[0], line)
        i, j = document.state(values[1], n, line), document.state(values[2], n, line)
        _store(entries, (symbol, i, j), parse_rational(values[3], line), line)
        try:
            vector = tuple(int(v) for v in values[4:])
        except ValueError:
            raise ParseError('rewards must be integers', line)
        rewards.setdefault(symbol, {})[(i, j)] = vector
        lines.setdefault((symbol, i), line)
        lines[(symbol, i, j)] = line
    try:
        return PRA(n, s, alphabet, _matrices(entries, n), rewards,
                   document.vector('init', n, 'row'), document.vector('final', n, 'column'))
    except ParseError:
        raise
    except (StochasticityError, RewardRangeError) as error:
        raise ParseError(str(error), lines.get(error.where))
    except (QAutomataError, ValueError) as error:
        raise ParseError(str(error))


def _build_vpa(document):
    n = document.states()
    try:
        alphabet = VisiblyAlphabet(tuple(document.headers['calls']), tuple(document.headers['returns']),
                                   tuple(document.headers['internals']))
    except ValueError as error:
        raise ParseError(str(error), max(document.lines[key] for key in ('calls', 'returns', 'internals')))
    stack = tuple(document.headers.get('stack', ()))
    if len(set(stack)) != len(stack):
        raise ParseError('duplicate stack symbols', document.lines['stack'])
    expected = {'call': (alphabet.calls, 6), 'return': (alphabet.returns, 6), 'internal': (alphabet.internals, 4)}
    calls, returns, internals = {}, {}, {}
    for line, keyword, values in document.transitions:
        labels, arity = expected[keyword]
        if len(values) != arity:
            raise ParseError('wrong number of fields in a `{}` transition'.format(keyword), line)
        if values[0] not in labels:
            raise ParseError('{!r} is not a declared {} symbol'.format(values[0], keyword), line)
        symbol = alphabet.alphabet.index(values[0])
        if keyword == 'internal':
            key, rest, target = symbol, values[1:], internals
        else:
            if values[1] not in stack:
                raise ParseError('{!r} is not a declared stack symbol'.format(values[1]), line)
            key, rest = (symbol, stack.index(values[1])), values[2:]
            target = calls if keyword == 'call' else returns
        _store(target, (key, document.state(rest[0], n, line), document.state(rest[1], n, line)),
               parse_rational(rest[2], line), line)
    return WVPA(n, alphabet, stack, _matrices(calls, n), _matrices(returns, n), _matrices(internals, n),
                document.vector('init', n, 'row'), document.vector('final', n, 'column'))


def parse_text(text):
    """Automaton (WFA, PRA or WVPA) described by `text`.
    Raises ParseError, with a line number when one applies.
    """
    document = _Document(text)
    builders = {'wfa': _build_wfa, 'pra': _build_pra, 'vpa': _build_vpa}
    return builders[document.kind](document)


def parse(path):
    with open(path, 'r') as stream:
        return parse_text(stream.read())


def _vector_line(key, vector):
    return ' '.join([key] + [format_rational(v) for v in vector.to_list()])


def render(automaton):
    """Canonical text of an automaton, read back identically by parse_text."""
    if isinstance(automaton, WVPA):
        return _render_vpa(automaton)
    kind = 'pra' if isinstance(automaton, PRA) else 'wfa'
    lines = ['kind {}'.format(kind), 'alphabet {}'.format(' '.join(automaton.alphabet.labels)).rstrip()]
    if kind == 'pra':
        lines.append('rewards {}'.format(automaton.s))
    lines += ['states {}'.format(automaton.n), _vector_line('init', automaton.init),
              _vector_line('final', automaton.final)]
    for symbol in automaton.alphabet:
        label = automaton.alphabet.labels[symbol]
        for (i, j), value in automaton.trans[symbol].entries():
            fields = ['trans', label, str(i), str(j), format_rational(value)]
            if kind == 'pra':
                fields += [str(k) for k in automaton.reward(symbol, i, j)]
            lines.append(' '.join(fields))
    return '\n'.join(lines) + '\n'


def _render_vpa(a):
    alphabet = a.alphabet
    lines = ['kind vpa',
             ' '.join(('calls',) + alphabet.calls), ' '.join(('returns',) + alphabet.returns),
             ' '.join(('internals',) + alphabet.internals), ' '.join(('stack',) + tuple(str(g) for g in a.stack)),
             'states {}'.format(a.n), _vector_line('init', a.init), _vector_line('final', a.final)]
    for keyword, table in (('call', a.m_call), ('return', a.m_ret)):
        for (symbol, gamma), m in sorted(table.items()):
            for (i, j), value in m.entries():
                lines.append('{} {} {} {} {} {}'.format(keyword, alphabet.alphabet.labels[symbol], a.stack[gamma],
                                                        i, j, format_rational(value)))
    for symbol, m in sorted(a.m_int.items()):
        for (i, j), value in m.entries():
            lines.append('internal {} {} {} {}'.format(alphabet.alphabet.labels[symbol], i, j, format_rational(value)))
    return '\n'.join(lines) + '\n'
