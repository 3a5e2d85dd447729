# shared value coercion and argument checks

import logging
import numbers

import numpy as np

from pycycles import ParameterError, DataError, InsufficientDataError

logger = logging.getLogger(__name__)


def _as_values(signal, name='signal', min_length=None):
    """Convert a value list to a 1-D float64 array.

    Anything with a ``values`` attribute (an :class:`.AnnualSeries`, a
    :class:`pandas.Series`) is unwrapped first. The result is always a fresh
    array, so callers may modify it.

    Args:
        signal: the values
        name (str): what to call the values in error messages
        min_length (int): the shortest length accepted

    Returns:
        numpy.ndarray

    Raises:
        :class:`.DataError`, :class:`.InsufficientDataError`

    """

    if hasattr(signal, 'values'):
        signal = signal.values
    try:
        values = np.array(signal, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise DataError('unable to read {0} as numbers'.format(name), str(e))

    if values.ndim != 1:
        raise DataError('{0} must be one-dimensional'.format(name),
                        'shape is {0}'.format(values.shape))
    if not np.all(np.isfinite(values)):
        raise DataError('{0} holds non-finite values'.format(name))
    if min_length is not None and values.size < min_length:
        raise InsufficientDataError(
            '{0} too short'.format(name),
            'need at least {0} values, got {1}'.format(min_length,
                                                        values.size))

    return values


def _is_constant(values):
    return values.size == 0 or np.ptp(values) == 0


def _check_probability(p, name='p'):
    if not isinstance(p, numbers.Real) or not 0 < p < 1:
        raise ParameterError('{0} must lie in (0, 1)'.format(name),
                             'got {0!r}'.format(p))

    return float(p)


def _check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) \
            or value < 1:
        raise ParameterError('{0} must be a positive integer'.format(name),
                             'got {0!r}'.format(value))

    return int(value)


def _check_range(value, low, high, name, low_open=False, high_open=False):
    """Check a real parameter lies in an interval."""

    if isinstance(value, bool) or not isinstance(value, numbers.Real) or \
            not np.isfinite(value):
        raise ParameterError('{0} must be a real number'.format(name),
                             'got {0!r}'.format(value))
    too_low = value <= low if low_open else value < low
    too_high = value >= high if high_open else value > high
    if too_low or too_high:
        raise ParameterError('{0} out of range'.format(name),
                             '{0} must be in {1}{2}, {3}{4}'.format(
                                 value,
                                 '(' if low_open else '[', low,
                                 high, ')' if high_open else ']'))

    return float(value)


def _enum_values(enum_class):
    return [value for key, value in vars(enum_class).items()
            if key.isupper()]


def _check_enum(value, enum_class, name):
    allowed = _enum_values(enum_class)
    if value not in allowed:
        raise ParameterError('unknown {0} "{1}"'.format(name, value),
                             'expected one of {0}'.format(
                                 ', '.join(sorted(allowed))))

    return value


def next_pow2(n):
    """The smallest power of two not less than n.

    Args:
        n (int): a positive size

    Returns:
        int

    """

    n = int(n)
    if n <= 1:
        return 1

    return 1 << (n - 1).bit_length()


__all__ = [
    '_as_values',
    '_is_constant',
    '_check_probability',
    '_check_positive_int',
    '_check_range',
    '_enum_values',
    '_check_enum',
    'next_pow2',
]
