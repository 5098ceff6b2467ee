# -*- coding: utf-8 -*-
"""
Exceptions raised by the qautomata package.
===================================================
Every error signalled on purpose derives from QAutomataError so that callers
(and the command line front-end) can separate input problems from bugs.
"""


class QAutomataError(Exception):
    """Base class of all qautomata errors."""


class DimensionError(QAutomataError, ValueError):
    """Operands have incompatible shapes."""


class AlphabetMismatchError(QAutomataError):
    """Two automata were combined over different alphabets."""


class ForeignSymbolError(QAutomataError, ValueError):
    """A word contains a symbol outside the alphabet."""


class NotWellMatchedError(QAutomataError, ValueError):
    """A word given to a visibly pushdown automaton is not well-matched."""


class SingularMatrixError(QAutomataError, ArithmeticError):
    """A matrix that has to be inverted is singular."""


class EmptyPolynomialError(QAutomataError):
    """The zero polynomial has no lowest-degree term."""


class BudgetExceededError(QAutomataError):
    """A brute-force oracle was asked for more work than its budget allows."""


class InvalidBasisError(QAutomataError):
    """A basis handed to a reduction does not span a closed space."""


class IsolationError(QAutomataError):
    """Counterexample extraction found no isolated minimum-weight word."""


class EpsilonError(QAutomataError):
    """The epsilon transitions of a reward automaton are not transient."""


class StochasticityError(QAutomataError, ValueError):
    """A reward automaton violates its (sub-)stochastic constraints.
    Arguments:
        - message: str
        - where: (symbol id, row), 'init', 'final' or None
    """

    def __init__(self, message, where=None):
        self.where = where
        super(StochasticityError, self).__init__(message)


class RewardRangeError(QAutomataError, ValueError):
    """A reward vector leaves {-1, 0, 1}^s.
    `where` is the (symbol id, src, dst) transition carrying it.
    """

    def __init__(self, message, where=None):
        self.where = where
        super(RewardRangeError, self).__init__(message)


class CircuitError(QAutomataError, ValueError):
    """A circuit is malformed or outside the class an operation accepts."""


class ConfigError(QAutomataError):
    """A parameter file contains unknown or invalid entries."""


class ParseError(QAutomataError):
    """A text document could not be parsed.
    Arguments:
        - message: str
        - line: int (1-based) or None
    """

    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        text = message if line is None else 'line {}: {}'.format(line, message)
        super(ParseError, self).__init__(text)
