# vim: set fileencoding=utf-8 :
import numpy as np
import pytest

import pycycles
from helpers import tone, white


def _pair(n=64, seed=1):
    x = pycycles.cwt_morlet(tone(n, 11) + 0.5 * white(n, seed, 0))
    y = pycycles.cwt_morlet(tone(n, 11, 1.0, 0.7) + 0.5 * white(n, seed, 1))
    return x, y


class TestCrossWavelet:
    def test_self_phase(self):
        x, _ = _pair()
        c = pycycles.cross_wavelet(x, x)
        assert np.all(c.phase == 0)
        assert np.allclose(c.power, x.power)

    def test_quarter_period_lead(self):
        n = 128
        x = pycycles.cwt_morlet(tone(n, 16))
        y = pycycles.cwt_morlet(tone(n, 16, 1.0, -np.pi / 2))
        c = pycycles.cross_wavelet(x, y)
        j = np.argmin(np.abs(c.periods - 16))
        assert np.allclose(c.phase[j, 40:88], np.pi / 2, atol=0.1)

    def test_hermitian(self):
        x, y = _pair()
        xy = pycycles.cross_wavelet(x, y)
        yx = pycycles.cross_wavelet(y, x)
        assert np.allclose(xy.coefficients, np.conj(yx.coefficients))
        assert np.allclose(xy.power, yx.power)

    def test_phase_range(self):
        x, y = _pair()
        phase = pycycles.cross_wavelet(x, y).phase
        assert np.all(phase > -np.pi) and np.all(phase <= np.pi)

    def test_significance(self):
        x, y = _pair()
        c = pycycles.cross_wavelet(x, y)
        assert set(c.siglevels) == {0.90, 0.95}
        assert np.all(c.siglevels[0.90] | ~c.siglevels[0.95])
        assert np.all(c.threshold[0.95] > c.threshold[0.90])
        j = np.argmin(np.abs(c.periods - 11))
        assert np.any(c.siglevels[0.95][j, 20:44])

    def test_white_noise_false_positives(self):
        model = pycycles.Ar1Model(0.0)
        rates = []
        for key in range(1000):
            x = pycycles.cwt_morlet(white(128, 15, key)).with_significance(
                model)
            y = pycycles.cwt_morlet(white(128, 16, key)).with_significance(
                model)
            c = pycycles.cross_wavelet(x, y)
            trusted = c.scales[:, np.newaxis] < c.coi[np.newaxis, :]
            rates.append(np.count_nonzero(c.siglevels[0.95] & trusted) /
                         np.count_nonzero(trusted))
        assert 0.03 <= np.median(rates) <= 0.07

    def test_coi(self):
        x, y = _pair()
        c = pycycles.cross_wavelet(x, y)
        assert np.array_equal(c.coi, np.minimum(x.coi, y.coi))

    def test_mismatch(self):
        x = pycycles.cwt_morlet(white(64, 2))
        y = pycycles.cwt_morlet(white(60, 3))
        with pytest.raises(pycycles.ParameterError):
            pycycles.cross_wavelet(x, y)
        z = pycycles.cwt_morlet(white(64, 4),
                                pycycles.ScaleGrid.for_length(64, dj=0.25))
        with pytest.raises(pycycles.ParameterError):
            pycycles.cross_wavelet(x, z)


class TestDumpLowFrequency:
    def test_middle(self):
        x, y = _pair()
        c = pycycles.cross_wavelet(x, y)
        trimmed = pycycles.dump_lowfreq_mask(c, 8.0)
        long = c.periods > 8.0
        assert np.all(trimmed.coefficients[long] == 0)
        assert np.array_equal(trimmed.coefficients[~long],
                              c.coefficients[~long])
        assert not np.any(trimmed.siglevels[0.95][long])

    def test_keep_all(self):
        x, y = _pair()
        c = pycycles.cross_wavelet(x, y)
        trimmed = pycycles.dump_lowfreq_mask(c, 1000.0)
        assert np.array_equal(trimmed.coefficients, c.coefficients)

    def test_drop_all(self):
        x, y = _pair()
        c = pycycles.cross_wavelet(x, y)
        trimmed = pycycles.dump_lowfreq_mask(c, 1.0)
        assert np.all(trimmed.coefficients == 0)
        assert np.all(trimmed.power == 0)


class TestCoherence:
    def test_identical(self):
        x, _ = _pair()
        r = pycycles.coherence(x, x)
        trusted = x.scales[:, np.newaxis] < r.coi[np.newaxis, :]
        assert np.allclose(r.rsq[trusted], 1.0)
        assert np.allclose(r.phase[trusted], 0.0)

    def test_bounds(self):
        x = pycycles.cwt_morlet(white(64, 5))
        y = pycycles.cwt_morlet(white(64, 6))
        r = pycycles.coherence(x, y)
        assert np.all(r.rsq >= 0) and np.all(r.rsq <= 1)

    def test_symmetric(self):
        x, y = _pair()
        xy = pycycles.coherence(x, y)
        yx = pycycles.coherence(y, x)
        assert np.allclose(xy.rsq, yx.rsq)
        assert np.allclose(xy.phase, -yx.phase)

    def test_amplitude_invariant(self):
        a = tone(64, 11) + 0.5 * white(64, 7)
        b = tone(64, 13) + 0.5 * white(64, 8)
        r1 = pycycles.coherence(pycycles.cwt_morlet(a),
                                pycycles.cwt_morlet(b))
        r2 = pycycles.coherence(pycycles.cwt_morlet(10 * a),
                                pycycles.cwt_morlet(b - 4))
        assert np.allclose(r1.rsq, r2.rsq)

    def test_time_only(self):
        x, y = _pair()
        r = pycycles.coherence(x, y, pycycles.SmoothSpec(1.0, 0.0))
        assert r.smooth.scale_width == 0
        assert np.all(r.rsq <= 1)

    def test_smoothing_required(self):
        x, y = _pair()
        with pytest.raises(pycycles.ParameterError):
            pycycles.coherence(x, y, pycycles.SmoothSpec(0.0, 0.0))

    def test_bad_smoothing(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.SmoothSpec(-1.0)

    def test_smooth_constant(self):
        grid = pycycles.ScaleGrid(2.0, 0.1, 12)
        field = np.ones((12, 200))
        smoothed = pycycles.SmoothSpec().apply(field, grid)
        assert np.allclose(smoothed[:, 80:120], 1.0)

    def test_scale_boxcar_centred(self):
        grid = pycycles.ScaleGrid(2.0, 0.1, 21)
        field = np.zeros((21, 30))
        field[10] = 1.0
        for width in (0.5, 0.6):
            smoothed = pycycles.SmoothSpec(0.0, width).apply(field, grid)
            column = smoothed[:, 15]
            assert np.allclose(column, column[::-1])
            assert column.sum() == pytest.approx(1.0)


class TestCoherenceSignificance:
    def test_workers(self):
        x = pycycles.cwt_morlet(white(32, 9))
        y = pycycles.cwt_morlet(white(32, 10))
        stream = pycycles.SeededStream(3)
        one = pycycles.coherence_significance(x, y, n_surrogates=4,
                                              stream=stream, workers=1)
        two = pycycles.coherence_significance(x, y, n_surrogates=4,
                                              stream=stream, workers=2)
        assert np.array_equal(one, two)
        assert one.shape == x.coefficients.shape
        assert np.all((one >= 0) & (one <= 1))

    def test_seeded(self):
        x = pycycles.cwt_morlet(white(32, 11))
        y = pycycles.cwt_morlet(white(32, 12))
        a = pycycles.coherence_significance(
            x, y, n_surrogates=3, stream=pycycles.SeededStream(1))
        b = pycycles.coherence_significance(
            x, y, n_surrogates=3, stream=pycycles.SeededStream(2))
        assert not np.array_equal(a, b)

    def test_threshold(self):
        x, y = _pair()
        r = pycycles.coherence(x, y)
        assert r.significant is None
        threshold = pycycles.coherence_significance(x, y, n_surrogates=5)
        r = r.with_threshold(threshold, 0.95)
        assert r.level == 0.95
        assert np.array_equal(r.significant, r.rsq > threshold)

    def test_bad_count(self):
        x, y = _pair()
        with pytest.raises(pycycles.ParameterError):
            pycycles.coherence_significance(x, y, n_surrogates=0)
