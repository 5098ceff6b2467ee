# -*- coding: utf-8 -*-
"""
Reports printed by the command line front-end.
===================================================
A Report holds the facts of one decision: verdict, exit code, witness word
(as labels) with the two exact values, confidence bound, seed and method.
`to_json` and `to_text` render the same facts; elapsed time only appears
when it was measured (the `--timing` flag), so that reports of the same
inputs and seed are byte-identical.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .utils import format_rational


def _plain(value):
    """JSON-compatible copy: rationals become `p/q` strings."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(item) for item in items]
    if hasattr(value, 'value') and isinstance(getattr(value, 'value'), str):
        return value.value
    return value


@dataclass
class Report:
    command: str
    verdict: str
    exit_code: int
    seed: int = None
    method: str = None
    witness: list = None
    values: list = None
    confidence: Fraction = None
    details: dict = field(default_factory=dict)
    elapsed: float = None

    def to_dict(self):
        data = {
            'command': self.command,
            'verdict': self.verdict,
            'exit_code': self.exit_code,
            'seed': self.seed,
            'method': self.method,
            'witness': self.witness,
            'values': self.values,
            'confidence': self.confidence,
            'details': self.details or None,
            'elapsed': self.elapsed,
        }
        return {key: _plain(value) for key, value in data.items() if value is not None}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self):
        data = self.to_dict()
        lines = ['{}: {}'.format(self.command, self.verdict)]
        if self.witness is not None:
            lines.append('witness: {}'.format(' '.join(self.witness) if self.witness else '(empty word)'))
        if self.values is not None:
            lines.append('values: {}'.format(' '.join(data['values'])))
        for key in ('confidence', 'method', 'seed'):
            if key in data:
                lines.append('{}: {}'.format(key, data[key]))
        for key, value in sorted(data.get('details', {}).items()):
            if key == 'automaton':
                lines.append(value.rstrip('\n'))
            else:
                lines.append('{}: {}'.format(key, value))
        if 'elapsed' in data:
            lines.append('elapsed: {:.3f}s'.format(self.elapsed))
        return '\n'.join(lines)
