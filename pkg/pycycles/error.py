# errors from pycycles

import logging

logger = logging.getLogger(__name__)


class Error(Exception):
    """An error from pycycles.

    Each subclass carries the process exit code the command-line front end
    returns when the error escapes a run.

    Attributes:
        message (str): a high-level description of the error
        detail (str): a string with some detailed diagnostics
        exit_code (int): the CLI exit status for this class of error

    """

    exit_code = 1

    def __init__(self, message, detail=None):
        self.message = message
        if detail is None:
            detail = ''
        self.detail = detail

        logger.debug('Error %s %s', self.message, self.detail)

    def __str__(self):
        if not self.detail:
            return self.message

        return '{0}\n  {1}'.format(self.message, self.detail)


class ParameterError(Error):
    """A parameter, config file or path is invalid."""

    exit_code = 2


class DataError(Error):
    """Input data is malformed, has gaps or holds non-finite values."""

    exit_code = 3


class InsufficientDataError(DataError):
    """A series is too short for the requested operation."""


class NumericError(Error):
    """A computation failed numerically."""

    exit_code = 4


class DegenerateError(NumericError):
    """The input is constant, has zero variance or gives a singular design."""


class PipelineError(Error):
    """A pipeline stage failed.

    Wraps the original error and keeps its exit code.

    Attributes:
        stage (str): the name of the failing stage
        cause (Error): the error raised inside the stage

    """

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
        super(PipelineError, self).__init__(
            'stage "{0}" failed: {1}'.format(stage, cause.message),
            cause.detail)


__all__ = [
    'Error',
    'ParameterError',
    'DataError',
    'InsufficientDataError',
    'NumericError',
    'DegenerateError',
    'PipelineError',
]
