# trend estimation: stiffness-controlled smoothing spline and supersmoother

import logging

import numpy as np
from scipy import interpolate

from pycycles import InsufficientDataError, DetrendMethod, _as_values, \
    _check_range, _check_enum
from pycycles.ingest import AnnualSeries
from pycycles.series import Decomposition

logger = logging.getLogger(__name__)

DEFAULT_STIFFNESS = 0.67
DEFAULT_BASS = 0.0

# supersmoother spans as fractions of the series length
PRIMARY_SPANS = (0.05, 0.2, 0.5)
MIDDLE_SPAN = 0.2
TWEETER_SPAN = 0.05


class DetrendConfig(object):
    """How to estimate a trend.

    Attributes:
        method (str): a :class:`.DetrendMethod`
        spline_stiffness (float): in (0, 1], the wavelength, as a fraction of
            the series length, at which the spline passes half the amplitude
        friedman_bass (float): in [0, 10], larger values favour longer spans

    """

    __slots__ = ('method', 'spline_stiffness', 'friedman_bass')

    def __init__(self, method=DetrendMethod.SPLINE,
                 spline_stiffness=DEFAULT_STIFFNESS,
                 friedman_bass=DEFAULT_BASS):
        self.method = _check_enum(method, DetrendMethod, 'detrend method')
        self.spline_stiffness = _check_range(spline_stiffness, 0, 1,
                                             'spline_stiffness',
                                             low_open=True)
        self.friedman_bass = _check_range(friedman_bass, 0, 10,
                                          'friedman_bass')


def _as_series(series):
    if isinstance(series, AnnualSeries):
        return series

    return AnnualSeries(0, _as_values(series))


def spline_lambda(n, stiffness):
    """The roughness penalty for a stiffness.

    For a cubic smoothing spline on unit-spaced data the response at angular
    frequency w is ``1 / (1 + lam * k(w))`` with
    ``k(w) = 12 (1 - cos w)^2 / (2 + cos w)``. We pick ``lam`` so the
    response is 0.5 at wavelength ``stiffness * n``.

    Args:
        n (int): the series length
        stiffness (float): in (0, 1]

    Returns:
        float

    """

    w = 2 * np.pi / (stiffness * n)

    return (2 + np.cos(w)) / (12 * (1 - np.cos(w)) ** 2)


def detrend_spline(series, stiffness=DEFAULT_STIFFNESS):
    """Detrend with a cubic smoothing spline.

    The trend minimizes ``sum (x - mu)^2 + lam * integral(mu'')^2`` with
    natural end conditions, ``lam`` from :func:`spline_lambda`.

    Args:
        series (AnnualSeries): at least 8 values
        stiffness (float): in (0, 1]

    Returns:
        :class:`.Decomposition` with zero noise

    Raises:
        :class:`.InsufficientDataError`, :class:`.ParameterError`

    """

    series = _as_series(series)
    stiffness = _check_range(stiffness, 0, 1, 'stiffness', low_open=True)
    x = series.values
    t = np.arange(x.size, dtype=np.float64)
    lam = spline_lambda(x.size, stiffness)
    logger.debug('detrend_spline: n = %d, stiffness = %g, lambda = %g',
                 x.size, stiffness, lam)

    trend = interpolate.make_smoothing_spline(t, x, lam=lam)(t)

    return Decomposition(series, trend, x - trend, np.zeros(x.size),
                         ['spline({0:g})'.format(stiffness)])


def _local_linear(y, half, cv=False):
    """Windowed local linear fits at every point.

    Windows are ``[i - half, i + half]`` cut at the series ends. With cv,
    return leave-one-out fitted values instead.

    """

    n = y.size
    t = np.arange(n, dtype=np.float64) - (n - 1) / 2.0
    i = np.arange(n)
    lo = np.maximum(i - half, 0)
    hi = np.minimum(i + half + 1, n)

    def window_sum(v):
        c = np.concatenate(([0.0], np.cumsum(v)))
        return c[hi] - c[lo]

    s0 = (hi - lo).astype(np.float64)
    st = window_sum(t)
    stt = window_sum(t * t)
    sy = window_sum(y)
    sty = window_sum(t * y)

    if cv:
        s0 = s0 - 1
        st = st - t
        stt = stt - t * t
        sy = sy - y
        sty = sty - t * y

    mt = st / s0
    my = sy / s0
    sxx = stt - s0 * mt * mt
    sxy = sty - s0 * mt * my
    slope = np.divide(sxy, sxx, out=np.zeros(n), where=sxx > 1e-12)

    return my + slope * (t - mt)


def _half_width(n, span):
    return max(2, int(round(span * n / 2.0)))


def detrend_friedman(series, bass=DEFAULT_BASS):
    """Detrend with Friedman's variable-span supersmoother.

    Local linear smooths are made at spans of 5 %, 20 % and 50 % of the
    series. Each point takes the span with the smallest leave-one-out
    residual, after the residuals are smoothed at the middle span. The chosen
    spans are smoothed, the smooths interpolated between, and the result
    smoothed once more at the smallest span.

    Args:
        series (AnnualSeries): at least 10 values
        bass (float): in [0, 10], 0 disables bass enhancement

    Returns:
        :class:`.Decomposition` with zero noise

    Raises:
        :class:`.InsufficientDataError`, :class:`.ParameterError`

    """

    series = _as_series(series)
    bass = _check_range(bass, 0, 10, 'bass')
    x = series.values
    n = x.size
    if n < 10:
        raise InsufficientDataError('supersmoother needs at least 10 values')

    middle = _half_width(n, MIDDLE_SPAN)
    smooths = []
    residuals = []
    for span in PRIMARY_SPANS:
        half = _half_width(n, span)
        smooths.append(_local_linear(x, half))
        loo = np.abs(x - _local_linear(x, half, cv=True))
        residuals.append(_local_linear(loo, middle))
    smooths = np.array(smooths)
    residuals = np.array(residuals)

    spans = np.array(PRIMARY_SPANS)
    best = spans[np.argmin(residuals, axis=0)]
    if bass > 0:
        smallest = residuals.min(axis=0)
        ratio = np.divide(smallest, residuals[-1],
                          out=np.ones(n), where=residuals[-1] > 0)
        best = best + (spans[-1] - best) * ratio ** (10 - bass)

    best = np.clip(_local_linear(best, middle), spans[0], spans[-1])

    # interpolate between the two primary smooths bracketing each span
    upper = np.clip(np.searchsorted(spans, best), 1, spans.size - 1)
    lower = upper - 1
    weight = (best - spans[lower]) / (spans[upper] - spans[lower])
    columns = np.arange(n)
    blended = (1 - weight) * smooths[lower, columns] + \
        weight * smooths[upper, columns]

    trend = _local_linear(blended, _half_width(n, TWEETER_SPAN))
    logger.debug('detrend_friedman: n = %d, bass = %g, mean span = %.3f',
                 n, bass, best.mean())

    return Decomposition(series, trend, x - trend, np.zeros(n),
                         ['friedman({0:g})'.format(bass)])


def detrend(series, config=None):
    """Detrend by the method a :class:`.DetrendConfig` names."""

    if config is None:
        config = DetrendConfig()
    if config.method == DetrendMethod.FRIEDMAN:
        return detrend_friedman(series, config.friedman_bass)

    return detrend_spline(series, config.spline_stiffness)


__all__ = [
    'DEFAULT_STIFFNESS',
    'DEFAULT_BASS',
    'DetrendConfig',
    'spline_lambda',
    'detrend_spline',
    'detrend_friedman',
    'detrend',
]
