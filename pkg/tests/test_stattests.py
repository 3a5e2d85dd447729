# vim: set fileencoding=utf-8 :
import numpy as np
import pytest
from scipy import signal

import pycycles
from pycycles import PKind, ModelVariant, tables
from helpers import white


def _walk(n, key):
    return np.cumsum(white(n, 21, key))


def _rejections(test, series_list, level=0.05, **kwargs):
    return sum(test(x, **kwargs).p_value.rejects(level) for x in series_list)


class TestPBound:
    def test_str(self):
        assert str(pycycles.PBound(PKind.EXACT, 0.0224)) == '0.022'
        assert str(pycycles.PBound(PKind.LESS_THAN, 0.01)) == '<0.01'
        assert str(pycycles.PBound(PKind.GREATER_THAN, 0.1)) == '>0.1'

    def test_rejects(self):
        assert pycycles.PBound(PKind.LESS_THAN, 0.01).rejects(0.05)
        assert not pycycles.PBound(PKind.GREATER_THAN, 0.1).rejects(0.05)
        assert pycycles.PBound(PKind.EXACT, 0.03).rejects(0.05)
        assert not pycycles.PBound(PKind.EXACT, 0.07).rejects(0.05)

    def test_clipped(self):
        assert pycycles.PBound(PKind.EXACT, 1.5).value == 1.0

    def test_bad_kind(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.PBound('roughly', 0.5)


class TestKpss:
    def test_white_noise(self):
        # nominal rate of >0.1 is 90%; allow three binomial sd over 500
        series = [white(200, 1, i) for i in range(500)]
        kept = sum(str(pycycles.kpss_test(x).p_value) == '>0.1'
                   for x in series)
        assert kept / 500 >= 0.86

    def test_random_walk(self):
        series = [_walk(200, i) for i in range(500)]
        assert _rejections(pycycles.kpss_test, series) / 500 >= 0.9

    def test_table_rows(self):
        for table in tables.KPSS.values():
            assert table['n'] == (25, 50, 100, 250, 500)
            for row in table['critical']:
                assert list(row) == sorted(row, reverse=True)

    def test_report(self):
        report = pycycles.kpss_test(white(51, 2))
        assert report.test_name == 'kpss'
        assert report.statistic > 0
        assert report.model_variant == ModelVariant.NODRIFT_NOTREND
        assert report.parameters['lags'] == 3
        assert report.to_dict()['test'] == 'kpss'

    def test_trend_variant(self):
        x = 0.5 * np.arange(60) + white(60, 3)
        level = pycycles.kpss_test(x, ModelVariant.DRIFT)
        trend = pycycles.kpss_test(x, ModelVariant.DRIFT_TREND)
        assert level.p_value.rejects(0.05)
        assert not trend.p_value.rejects(0.01)

    def test_table_edge(self):
        x = 0.5 * np.arange(200) + white(200, 99)
        report = pycycles.kpss_test(x)
        assert report.p_value.kind == PKind.LESS_THAN
        assert str(report.p_value) == '<0.01'

    def test_constant(self):
        with pytest.raises(pycycles.DegenerateError):
            pycycles.kpss_test(np.ones(40))

    def test_short(self):
        with pytest.raises(pycycles.InsufficientDataError):
            pycycles.kpss_test(white(19, 4))

    def test_bad_variant(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.kpss_test(white(40, 4), 'quadratic')


class TestAdf:
    def test_random_walk(self):
        series = [_walk(200, i) for i in range(500)]
        kept = sum(pycycles.adf_test(x).p_value.kind == PKind.GREATER_THAN
                   for x in series)
        assert kept / 500 >= 0.85

    def test_white_noise(self):
        series = [white(200, 5, i) for i in range(500)]
        rejected = sum(str(pycycles.adf_test(x).p_value) == '<0.01'
                       for x in series)
        assert rejected / 500 >= 0.9

    def test_white_noise_far_from_zero(self):
        x = white(200, 6) + 50.0
        report = pycycles.adf_test(x, ModelVariant.NODRIFT_NOTREND)
        assert str(report.p_value) == '<0.01'

    def test_shift_invariant(self):
        x = _walk(60, 7)
        a = pycycles.adf_test(x)
        b = pycycles.adf_test(3.0 * x + 100.0)
        assert a.statistic == pytest.approx(b.statistic)

    def test_lags(self):
        report = pycycles.adf_test(white(51, 8), ModelVariant.DRIFT_TREND)
        assert report.parameters['lags'] == 3
        assert report.null_hypothesis == 'unit root'


def _nlma(n, key, b=0.8):
    e = white(n + 1, 31, key)
    return e[1:] + b * e[:-1] ** 2


def _ar2(n, key, burn=100):
    e = white(n + burn, 32, key)
    return signal.lfilter([1.0], [1.0, -0.5, 0.3], e)[burn:]


def _squared_input(n, key):
    # y[t] = 0.5 x[t - 1]^2 + e[t], x an AR(1) input
    x = pycycles.gen_ar1(n + 1, 0.5, 1.0,
                         pycycles.SeededStream(33).child(key))
    return 0.5 * x[:-1] ** 2 + white(n, 34, key)


class TestKeenan:
    def test_linear(self):
        series = [_ar2(500, i) for i in range(500)]
        assert _rejections(pycycles.keenan_test, series) <= 50

    def test_squared_input(self):
        # about a quarter of draws reject at this length
        series = [_squared_input(500, i) for i in range(200)]
        assert _rejections(pycycles.keenan_test, series) >= 30

    def test_nonlinear(self):
        series = [_nlma(200, i) for i in range(20)]
        assert _rejections(pycycles.keenan_test, series) >= 10

    def test_report(self):
        report = pycycles.keenan_test(white(51, 9), ar_order=3)
        assert report.p_value.kind == PKind.EXACT
        assert 0 <= report.p_value.value <= 1
        assert report.parameters == {'n': 51, 'ar_order': 3}

    def test_short(self):
        with pytest.raises(pycycles.InsufficientDataError):
            pycycles.keenan_test(white(15, 9), ar_order=2)


class TestTsay:
    def test_nonlinear(self):
        stream = pycycles.SeededStream(43)
        series = [pycycles.gen_bilinear(300, 0.5, stream.child(i))
                  for i in range(20)]
        assert _rejections(pycycles.tsay_test, series) >= 12

    def test_linear(self):
        series = [white(100, 44, i) for i in range(100)]
        assert _rejections(pycycles.tsay_test, series) <= 12


class TestMcLeodLi:
    def test_arch(self):
        stream = pycycles.SeededStream(45)
        series = [pycycles.gen_arch1(500, 0.2, 0.5, stream.child(i))
                  for i in range(20)]
        assert _rejections(pycycles.mcleod_li_test, series) >= 14

    def test_white(self):
        series = [white(100, 46, i) for i in range(100)]
        assert _rejections(pycycles.mcleod_li_test, series) <= 12

    def test_short(self):
        with pytest.raises(pycycles.InsufficientDataError):
            pycycles.mcleod_li_test(white(29, 46))

    def test_bad_lag(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.mcleod_li_test(white(40, 46), max_lag=40)


class TestBattery:
    def test_order(self):
        reports = pycycles.run_battery(white(51, 47))
        assert [r.test_name for r in reports] == \
            ['kpss', 'adf', 'keenan', 'tsay', 'mcleod_li']

    def test_table(self):
        reports = {
            'a': pycycles.run_battery(white(51, 48)),
            'b': pycycles.run_battery(_walk(51, 48)),
        }
        table = pycycles.report_table(reports, tests=['kpss', 'adf'])
        assert list(table.columns) == ['a', 'b']
        assert list(table.index) == ['kpss', 'adf']
        assert table.loc['kpss', 'a'] == str(reports['a'][0].p_value)
