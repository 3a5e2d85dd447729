# additive decomposition, standardization and autocorrelation

import logging

import numpy as np
from scipy import stats
from statsmodels.tsa import stattools

from pycycles import ParameterError, NumericError, DegenerateError, \
    Component, _as_values, _is_constant, _check_positive_int, _check_enum

logger = logging.getLogger(__name__)

# largest absolute error trend + cycle + noise may show at any index
CLOSURE_TOLERANCE = 1e-9


class Decomposition(object):
    """An additive split ``source = trend + cycle + noise``.

    Attributes:
        source: the :class:`.AnnualSeries` (or plain values) decomposed
        trend (numpy.ndarray): the slowly varying component
        cycle (numpy.ndarray): the cyclical component
        noise (numpy.ndarray): the noise component
        method_tags (tuple): how each part was made, oldest first

    Raises:
        :class:`.NumericError` if the parts do not add up to the source

    """

    __slots__ = ('source', 'trend', 'cycle', 'noise', 'method_tags')

    def __init__(self, source, trend, cycle, noise, method_tags=()):
        values = _as_values(source, name='source')
        parts = [_as_values(part, name=name)
                 for part, name in ((trend, 'trend'), (cycle, 'cycle'),
                                    (noise, 'noise'))]
        if any(part.size != values.size for part in parts):
            raise NumericError('decomposition parts differ in length')

        error = np.max(np.abs(parts[0] + parts[1] + parts[2] - values))
        if error > CLOSURE_TOLERANCE:
            raise NumericError('decomposition does not close',
                               'max error {0:g}'.format(error))

        for part in parts:
            part.flags.writeable = False
        self.source = source
        self.trend, self.cycle, self.noise = parts
        self.method_tags = tuple(method_tags)

    def __repr__(self):
        return 'Decomposition({0})'.format(', '.join(self.method_tags))

    @property
    def values(self):
        """The source values."""

        return _as_values(self.source)

    def __len__(self):
        return self.trend.size

    def part(self, name):
        return {
            Component.TREND: self.trend,
            Component.CYCLE: self.cycle,
            Component.NOISE: self.noise,
        }[_check_enum(name, Component, 'component')]


class AcfProfile(object):
    """Sample autocorrelations at lags 0 .. max_lag.

    Attributes:
        lags (numpy.ndarray): 0 .. max_lag
        rho (numpy.ndarray): the autocorrelation at each lag
        n (int): the length of the series

    """

    __slots__ = ('lags', 'rho', 'n')

    def __init__(self, lags, rho, n):
        self.lags = lags
        self.rho = rho
        self.n = n

    def band(self, level=0.95):
        return acf_band(self.n, level)


def acf(series, max_lag):
    """The biased sample autocorrelation function.

    ``rho[k] = sum_t (x[t] - m)(x[t + k] - m) / sum_t (x[t] - m)^2``, with
    the full-series sum of squares as denominator, so ``|rho[k]| <= 1``.

    Args:
        series: the values
        max_lag (int): the largest lag, less than the series length

    Returns:
        :class:`.AcfProfile`

    Raises:
        :class:`.ParameterError`, :class:`.DegenerateError`

    """

    x = _as_values(series, min_length=2)
    max_lag = _check_positive_int(max_lag, 'max_lag')
    if max_lag >= x.size:
        raise ParameterError('max_lag must be less than the series length',
                             '{0} >= {1}'.format(max_lag, x.size))
    if _is_constant(x):
        raise DegenerateError('autocorrelation of a constant series')

    rho = stattools.acf(x, nlags=max_lag, fft=False)

    return AcfProfile(np.arange(max_lag + 1), rho, x.size)


def acf_band(n, level=0.95):
    """The white-noise confidence half-width for sample autocorrelations.

    Args:
        n (int): the series length
        level (float): the two-sided confidence level

    Returns:
        float

    """

    return stats.norm.ppf(0.5 + level / 2) / np.sqrt(n)


def standardize(series):
    """Shift to zero mean and scale to unit sample standard deviation.

    Args:
        series: the values

    Returns:
        numpy.ndarray

    Raises:
        :class:`.DegenerateError`

    """

    x = _as_values(series, min_length=2)
    if _is_constant(x):
        raise DegenerateError('unable to standardize a constant series')

    d = x - x.mean()

    return d / d.std(ddof=1)


def recombine(d, parts):
    """Add up some parts of a decomposition.

    Args:
        d (Decomposition): the decomposition
        parts (iterable): component names, see :class:`.Component`

    Returns:
        numpy.ndarray

    Raises:
        :class:`.ParameterError`

    """

    parts = list(parts)
    if not parts:
        raise ParameterError('nothing to recombine')

    total = np.zeros(len(d))
    for name in sorted(set(parts)):
        total = total + d.part(name)

    return total


class RegressionFit(object):
    """A least-squares line ``b = slope * a + intercept``."""

    __slots__ = ('slope', 'intercept', 'r2')

    def __init__(self, slope, intercept, r2):
        self.slope = slope
        self.intercept = intercept
        self.r2 = r2

    def __repr__(self):
        return 'RegressionFit(slope={0:.6g}, intercept={1:.6g}, ' \
            'r2={2:.4f})'.format(self.slope, self.intercept, self.r2)


def trend_regression(a, b):
    """Regress one series on another.

    Used to compare the trends of two series over the same years.

    Args:
        a: the regressor values
        b: the response values, same length as a

    Returns:
        :class:`.RegressionFit`

    Raises:
        :class:`.ParameterError`, :class:`.DegenerateError`

    """

    x = _as_values(a, name='a', min_length=3)
    y = _as_values(b, name='b', min_length=3)
    if x.size != y.size:
        raise ParameterError('series differ in length',
                             '{0} != {1}'.format(x.size, y.size))
    if _is_constant(x) or _is_constant(y):
        raise DegenerateError('regression on a constant series')

    fit = stats.linregress(x, y)

    return RegressionFit(fit.slope, fit.intercept, fit.rvalue ** 2)


__all__ = [
    'Decomposition',
    'AcfProfile',
    'acf',
    'acf_band',
    'standardize',
    'recombine',
    'RegressionFit',
    'trend_regression',
]
