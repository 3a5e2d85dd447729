# vim: set fileencoding=utf-8 :
import numpy as np
import pytest

import pycycles
from pycycles.emd import _extrema
from helpers import tone, white


class TestSift:
    def test_complete(self):
        x = white(100, 1)
        modes = pycycles.sift(x)
        assert len(modes) >= 2
        assert np.max(np.abs(modes.reconstruction() - x)) < 1e-9

    def test_two_tones(self):
        fast = tone(400, 5)
        slow = tone(400, 40)
        modes = pycycles.sift(fast + slow)
        interior = slice(40, -40)
        rest = modes.imfs[1:].sum(axis=0) + modes.residual
        assert np.corrcoef(modes.imfs[0][interior],
                           fast[interior])[0, 1] > 0.95
        assert np.corrcoef(rest[interior], slow[interior])[0, 1] > 0.95

    def test_monotone(self):
        x = np.arange(20.0) ** 2
        modes = pycycles.sift(x)
        assert len(modes) == 0
        assert np.array_equal(modes.residual, x)

    def test_max_imfs(self):
        modes = pycycles.sift(white(200, 2), max_imfs=2)
        assert len(modes) == 2
        assert len(modes.sift_counts) == 2

    def test_flags(self):
        modes = pycycles.sift(white(100, 3), epsilon=1e-9, max_sifts=1)
        assert 0 in modes.flags
        assert modes.sift_counts[0] == 1

    def test_two_tones_converge(self):
        modes = pycycles.sift(tone(400, 5) + tone(400, 40))
        assert modes.converged[0]
        assert modes.sift_counts[0] < pycycles.DEFAULT_MAX_SIFTS

    def test_plateau_extrema(self):
        h = np.array([0.0, 1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 0.0, 2.0, 0.0])
        maxima, minima = _extrema(h)
        assert list(maxima) == [2, 8]
        assert list(minima) == [5]

    def test_no_extrema(self):
        maxima, minima = _extrema(np.array([1.0, 1.0, 2.0, 3.0, 3.0]))
        assert maxima.size == 0 and minima.size == 0

    def test_check(self):
        modes = pycycles.sift(tone(200, 10))
        count_ok, envelope_ok = modes.check()[0]
        assert count_ok
        assert envelope_ok

    def test_short(self):
        with pytest.raises(pycycles.InsufficientDataError):
            pycycles.sift(white(15, 5))

    def test_bad_epsilon(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.sift(white(50, 5), epsilon=1.0)


class TestDenoise:
    def test_closes(self):
        x = pycycles.AnnualSeries(1950, tone(51, 11) + 0.3 * white(51, 6))
        d = pycycles.denoise_first_imf(x)
        assert np.all(d.trend == 0)
        assert np.max(np.abs(d.cycle + d.noise - x.values)) < 1e-9
        assert d.method_tags == ('emd-first-imf(0.05)',)

    def test_noise_is_first_imf(self):
        x = tone(100, 20) + 0.3 * white(100, 7)
        d = pycycles.denoise_first_imf(x)
        modes = pycycles.sift(x, max_imfs=1)
        assert np.allclose(d.noise, modes.imfs[0])


class TestHilbert:
    def test_tone_frequency(self):
        spectrum = pycycles.hilbert_spectrum(tone(200, 10))
        assert spectrum.is_imf
        assert spectrum.mean_frequency == pytest.approx(0.1, abs=1e-3)
        assert np.allclose(spectrum.amplitude[20:-20], 1.0, atol=1e-6)

    def test_zero(self):
        spectrum = pycycles.hilbert_spectrum(np.zeros(32))
        assert not np.any(spectrum.defined)
        assert np.isnan(spectrum.mean_frequency)

    def test_modes(self):
        modes = pycycles.sift(tone(256, 8) + tone(256, 64))
        spectra = modes.hilbert()
        assert len(spectra) == len(modes)
        assert spectra[0].mean_frequency > spectra[-1].mean_frequency
