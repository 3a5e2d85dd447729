# stationarity (KPSS, ADF) and nonlinearity (Keenan, Tsay, McLeod-Li) tests

import logging
from collections import OrderedDict

import numpy as np
import pandas as pd
from scipy import stats
import statsmodels.api as sm
from statsmodels.stats.diagnostic import acorr_ljungbox
from statsmodels.tsa.tsatools import lagmat

from pycycles import ParameterError, InsufficientDataError, \
    DegenerateError, ModelVariant, PKind, _as_values, _is_constant, \
    _check_positive_int, _check_enum
from pycycles import tables

logger = logging.getLogger(__name__)

DEFAULT_VARIANT = ModelVariant.NODRIFT_NOTREND
DEFAULT_AR_ORDER = 2
DEFAULT_MAX_LAG = 10


class PBound(object):
    """A p-value, or a bound on one at the edge of a critical-value table.

    Attributes:
        kind (str): a :class:`.PKind`
        value (float): in [0, 1]

    """

    __slots__ = ('kind', 'value')

    def __init__(self, kind, value):
        self.kind = _check_enum(kind, PKind, 'p-value kind')
        self.value = float(min(max(value, 0.0), 1.0))

    def __repr__(self):
        return 'PBound({0!r}, {1!r})'.format(self.kind, self.value)

    def __str__(self):
        if self.kind == PKind.LESS_THAN:
            return '<{0:g}'.format(self.value)
        elif self.kind == PKind.GREATER_THAN:
            return '>{0:g}'.format(self.value)

        return '{0:.3f}'.format(self.value)

    def __eq__(self, other):
        return isinstance(other, PBound) and \
            (self.kind, self.value) == (other.kind, other.value)

    def rejects(self, level):
        """True if the null is rejected at this significance level."""

        if self.kind == PKind.GREATER_THAN:
            return False
        elif self.kind == PKind.LESS_THAN:
            return self.value <= level

        return self.value < level


class TestReport(object):
    """The outcome of one hypothesis test.

    Attributes:
        test_name (str): ``kpss``, ``adf``, ``keenan``, ``tsay`` or
            ``mcleod_li``
        statistic (float): the test statistic
        p_value (PBound): the p-value or its bound
        null_hypothesis (str): what the test assumes
        model_variant (str): a :class:`.ModelVariant`
        parameters (dict): lag orders and sample size used

    """

    # not a pytest test class
    __test__ = False

    __slots__ = ('test_name', 'statistic', 'p_value', 'null_hypothesis',
                 'model_variant', 'parameters')

    def __init__(self, test_name, statistic, p_value, null_hypothesis,
                 model_variant, parameters=None):
        self.test_name = test_name
        self.statistic = float(statistic)
        self.p_value = p_value
        self.null_hypothesis = null_hypothesis
        self.model_variant = model_variant
        self.parameters = parameters or {}

    def __repr__(self):
        return 'TestReport({0}, statistic={1:.4f}, p={2})'.format(
            self.test_name, self.statistic, self.p_value)

    def to_dict(self):
        return OrderedDict([
            ('test', self.test_name),
            ('statistic', self.statistic),
            ('p_kind', self.p_value.kind),
            ('p_value', self.p_value.value),
            ('variant', self.model_variant),
        ])


def _critical_row(table, n):
    ns = np.array(table['n'], dtype=np.float64)
    critical = np.array(table['critical'], dtype=np.float64)

    return np.array([np.interp(n, ns, critical[:, j])
                     for j in range(critical.shape[1])])


def _p_left(statistic, table, n):
    # small statistics reject: crit rises with p
    crit = _critical_row(table, n)
    p = tables.PROBABILITIES
    if statistic < crit[0]:
        return PBound(PKind.LESS_THAN, p[0])
    if statistic > crit[-1]:
        return PBound(PKind.GREATER_THAN, p[-1])

    return PBound(PKind.EXACT, np.interp(statistic, crit, p))


def _p_right(statistic, table, n):
    # large statistics reject: crit falls with p
    crit = _critical_row(table, n)
    p = tables.PROBABILITIES
    if statistic > crit[0]:
        return PBound(PKind.LESS_THAN, p[0])
    if statistic < crit[-1]:
        return PBound(PKind.GREATER_THAN, p[-1])

    return PBound(PKind.EXACT, np.interp(statistic, crit[::-1], p[::-1]))


def _ols(X, y):
    """Least squares with a rank check.

    Returns:
        statsmodels regression results

    """

    rank = np.linalg.matrix_rank(X)
    if rank < X.shape[1]:
        raise DegenerateError('singular regression',
                              'rank {0} for {1} columns'.format(
                                  rank, X.shape[1]))

    return sm.OLS(y, X).fit()


def _prepare(series, min_length):
    x = _as_values(series, min_length=min_length)
    if _is_constant(x):
        raise DegenerateError('test applied to a constant series')

    return x


def kpss_test(series, variant=DEFAULT_VARIANT):
    """The KPSS test, null hypothesis of stationarity.

    Level stationarity for ``nodrift_notrend`` and ``drift``, trend
    stationarity for ``drift_trend``. The long-run variance uses a Bartlett
    kernel with lag ``floor(4 (n / 100)^(1/4))``.

    Args:
        series: at least 20 values
        variant (str): a :class:`.ModelVariant`

    Returns:
        :class:`.TestReport`

    Raises:
        :class:`.InsufficientDataError`, :class:`.DegenerateError`

    """

    variant = _check_enum(variant, ModelVariant, 'model variant')
    x = _prepare(series, 20)
    n = x.size

    if variant == ModelVariant.DRIFT_TREND:
        X = sm.add_constant(np.arange(n, dtype=np.float64))
        e = _ols(X, x).resid
        table = tables.KPSS['trend']
        null = 'stationary around a deterministic trend'
    else:
        e = x - x.mean()
        table = tables.KPSS['level']
        null = 'level stationary'
    if np.max(np.abs(e)) <= 1e-12 * np.max(np.abs(x)):
        raise DegenerateError('series is exactly its deterministic part')

    lags = int(np.floor(4 * (n / 100.0) ** 0.25))
    lrv = np.dot(e, e) / n
    for k in range(1, lags + 1):
        lrv += 2 * (1 - k / (lags + 1.0)) * np.dot(e[k:], e[:-k]) / n

    s = np.cumsum(e)
    statistic = np.dot(s, s) / (n ** 2 * lrv)
    logger.debug('kpss_test: n = %d, lags = %d, eta = %.4f',
                 n, lags, statistic)

    return TestReport('kpss', statistic, _p_right(statistic, table, n),
                      null, variant, {'n': n, 'lags': lags})


def _adf_statistic(x, variant):
    n = x.size
    if variant == ModelVariant.NODRIFT_NOTREND:
        # demeaned, so the statistic ignores shifts of the series
        x = x - x.mean()
    lags = int(np.floor((n - 1) ** (1 / 3.0)))
    differences = lagmat(np.diff(x), lags, trim='both', original='in')
    y = differences[:, 0]
    X = np.column_stack((x[lags:n - 1], differences[:, 1:]))
    if variant != ModelVariant.NODRIFT_NOTREND:
        X = sm.add_constant(X, prepend=False, has_constant='add')
    if variant == ModelVariant.DRIFT_TREND:
        X = np.column_stack((X, np.arange(y.size, dtype=np.float64)))
    if X.shape[0] <= X.shape[1]:
        raise InsufficientDataError('too few values for the ADF regression')

    results = _ols(X, y)
    if results.scale <= 0:
        raise DegenerateError('ADF regression fits exactly')

    return results.tvalues[0], lags


def adf_test(series, variant=DEFAULT_VARIANT):
    """The augmented Dickey-Fuller test, null hypothesis of a unit root.

    ``dx[t]`` is regressed on ``x[t - 1]``, ``floor((n - 1)^(1/3))`` lagged
    differences and the deterministic terms of the variant. The statistic is
    the t-ratio of the ``x[t - 1]`` coefficient. Without deterministic terms
    the series is demeaned first.

    Args:
        series: at least 20 values
        variant (str): a :class:`.ModelVariant`

    Returns:
        :class:`.TestReport`

    Raises:
        :class:`.InsufficientDataError`, :class:`.DegenerateError`

    """

    variant = _check_enum(variant, ModelVariant, 'model variant')
    x = _prepare(series, 20)
    statistic, lags = _adf_statistic(x, variant)
    logger.debug('adf_test: n = %d, lags = %d, tau = %.4f',
                 x.size, lags, statistic)

    return TestReport('adf', statistic,
                      _p_left(statistic, tables.ADF[variant], x.size),
                      'unit root', variant, {'n': x.size, 'lags': lags})


def _ar_design(x, order):
    lagged, original = lagmat(x, order, trim='both', original='sep')

    return sm.add_constant(lagged, has_constant='add'), original[:, 0]


def _check_ar(series, ar_order):
    ar_order = _check_positive_int(ar_order, 'ar_order')
    x = _as_values(series)
    if x.size < 3 * ar_order + 10:
        raise InsufficientDataError(
            'series too short for AR({0})'.format(ar_order),
            'need at least {0} values, got {1}'.format(3 * ar_order + 10,
                                                        x.size))

    return _prepare(x, 1), ar_order


def keenan_test(series, ar_order=DEFAULT_AR_ORDER):
    """Keenan's one-degree-of-freedom test for nonlinearity.

    Fit AR(p) by least squares, then regress its residuals on the squared
    fitted values (with the AR terms partialled out).

    Args:
        series: at least ``3 ar_order + 10`` values
        ar_order (int): the AR order p

    Returns:
        :class:`.TestReport` with an F(1, m - 2p - 2) p-value

    """

    x, p = _check_ar(series, ar_order)
    X, y = _ar_design(x, p)
    m = y.size

    fit = _ols(X, y)
    e = fit.resid
    xi = _ols(X, fit.fittedvalues ** 2).resid
    sxx = np.dot(xi, xi)
    if sxx <= 1e-12 * np.dot(y, y):
        raise DegenerateError('squared fit lies in the AR span')

    eta2 = np.dot(e, xi) ** 2 / sxx
    df2 = m - 2 * p - 2
    statistic = eta2 * df2 / (np.dot(e, e) - eta2)
    logger.debug('keenan_test: p = %d, F = %.4f', p, statistic)

    return TestReport('keenan', statistic,
                      PBound(PKind.EXACT, stats.f.sf(statistic, 1, df2)),
                      'linear AR process', ModelVariant.DRIFT,
                      {'n': x.size, 'ar_order': p})


def tsay_test(series, ar_order=DEFAULT_AR_ORDER):
    """Tsay's F test for nonlinearity.

    As Keenan, but the AR residuals are regressed on every distinct product
    ``x[t - i] x[t - j]``, ``1 <= i <= j <= p``, each with the AR terms
    partialled out.

    Args:
        series: at least ``3 ar_order + 10`` values
        ar_order (int): the AR order p

    Returns:
        :class:`.TestReport` with an F(k, m - p - k - 1) p-value, k the
        number of products

    """

    x, p = _check_ar(series, ar_order)
    X, y = _ar_design(x, p)
    m = y.size

    e = _ols(X, y).resid
    products = [X[:, i] * X[:, j]
                for i in range(1, p + 1) for j in range(i, p + 1)]
    k = len(products)
    df2 = m - p - k - 1
    if df2 < 1:
        raise InsufficientDataError(
            'series too short for the Tsay test at order {0}'.format(p))

    Z = np.column_stack([_ols(X, column).resid for column in products])
    residual = _ols(Z, e).resid
    rss0 = np.dot(e, e)
    rss1 = np.dot(residual, residual)
    if rss1 <= 0:
        raise DegenerateError('Tsay regression fits exactly')

    statistic = ((rss0 - rss1) / k) / (rss1 / df2)
    logger.debug('tsay_test: p = %d, k = %d, F = %.4f', p, k, statistic)

    return TestReport('tsay', statistic,
                      PBound(PKind.EXACT, stats.f.sf(statistic, k, df2)),
                      'linear AR process', ModelVariant.DRIFT,
                      {'n': x.size, 'ar_order': p})


def mcleod_li_test(series, max_lag=DEFAULT_MAX_LAG):
    """The McLeod-Li test for conditional heteroscedasticity.

    A Ljung-Box statistic on the squared, mean-removed values.

    Args:
        series: at least 30 values
        max_lag (int): the number of lags, less than the series length

    Returns:
        :class:`.TestReport` with a chi-square(max_lag) p-value

    """

    max_lag = _check_positive_int(max_lag, 'max_lag')
    x = _prepare(series, 30)
    n = x.size
    if max_lag >= n:
        raise ParameterError('max_lag must be less than the series length')

    squares = (x - x.mean()) ** 2
    if _is_constant(squares):
        raise DegenerateError('squared series is constant')

    box = acorr_ljungbox(squares, lags=[max_lag])
    statistic = float(box['lb_stat'].iloc[-1])
    p_value = float(box['lb_pvalue'].iloc[-1])
    logger.debug('mcleod_li_test: lags = %d, Q = %.4f', max_lag, statistic)

    return TestReport('mcleod_li', statistic,
                      PBound(PKind.EXACT, p_value),
                      'no ARCH effects', ModelVariant.DRIFT,
                      {'n': n, 'max_lag': max_lag})


def run_battery(series, variant=DEFAULT_VARIANT, ar_order=DEFAULT_AR_ORDER,
                max_lag=DEFAULT_MAX_LAG):
    """Run all five tests on one series.

    Returns:
        list of :class:`.TestReport`, stationarity tests first

    """

    return [
        kpss_test(series, variant),
        adf_test(series, variant),
        keenan_test(series, ar_order),
        tsay_test(series, ar_order),
        mcleod_li_test(series, max_lag),
    ]


def report_table(reports_by_series, tests=None):
    """Tabulate p-values, one row per test and one column per series.

    Cells read ``>0.1``, ``<0.01`` or ``0.022``.

    Args:
        reports_by_series (dict): series label to a list of
            :class:`.TestReport`
        tests (list): test names to keep, in row order; all by default

    Returns:
        :class:`pandas.DataFrame`, indexed by test name

    """

    columns = OrderedDict()
    names = []
    for label, reports in reports_by_series.items():
        columns[label] = OrderedDict((r.test_name, str(r.p_value))
                                     for r in reports)
        for r in reports:
            if r.test_name not in names:
                names.append(r.test_name)
    if tests is not None:
        names = [name for name in tests if name in names]

    frame = pd.DataFrame(columns, index=names, dtype=object)
    frame.index.name = 'test'

    return frame.fillna('')


__all__ = [
    'DEFAULT_VARIANT',
    'DEFAULT_AR_ORDER',
    'DEFAULT_MAX_LAG',
    'PBound',
    'TestReport',
    'kpss_test',
    'adf_test',
    'keenan_test',
    'tsay_test',
    'mcleod_li_test',
    'run_battery',
    'report_table',
]
