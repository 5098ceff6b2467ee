# -*- coding: utf-8 -*-
import sys

from .errors import QAutomataError
from .utils import write, get_timestamp


class Logger(object):
    """ Framework to log the progression of decision procedures: retries,
    redrawn primes, fallbacks and final verdicts.
    A Logger with no path and verbose=False is silent.
    """

    def __init__(self, path=None, verbose=False, stream=None):
        self.log_path = path
        self.verbose = verbose
        self.stream = stream if stream is not None else sys.stderr

    def _emit(self, text, end):
        if self.log_path:
            write(self.log_path, text, end=end)
        if self.verbose:
            self.stream.write(text + end)

    def report_logs(self, logs, level, end):
        """General reporting function.
        Arguments:
            - logs: str
            - level: str
            - end: str
        """
        self._emit('{} {}: {}'.format(get_timestamp(), level, logs), end)

    def error(self, message, error_class=QAutomataError):
        """Reports ERROR messages and raises.
        Arguments:
            - message: str
            - error_class: subclass of QAutomataError
        """
        self.report_logs(message, level='ERROR', end='\n')
        raise error_class(message)

    def warning(self, message):
        """Reports WARNING messages.
        Arguments:
            - message: str
        """
        self.report_logs(message, level='WARNING', end='\n')

    def info(self, message, end=' '):
        """Reports INFO messages.
        Arguments:
            - message: str
        """
        self.report_logs(message, level='INFO', end=end)

    def validate(self):
        """Validate previous message."""
        self._emit('--> Done', '\n')

    def report_state(self, parameters):
        """Report the parameters a computation runs with.
        Arguments:
            - parameters: dict
        """
        state = ', '.join('{}={}'.format(key, parameters[key]) for key in sorted(parameters))
        self.report_logs(state, level='STATE', end='\n')


SILENT = Logger()
