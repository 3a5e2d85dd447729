# vim: set fileencoding=utf-8 :
import numpy as np
import pytest

import pycycles


class TestSeededStream:
    def test_deterministic(self):
        a = pycycles.SeededStream(7).normal(10)
        b = pycycles.SeededStream(7).normal(10)
        assert np.array_equal(a, b)

    def test_value_like(self):
        assert pycycles.SeededStream(7, (1, 2)) == \
            pycycles.SeededStream(7).child(1).child(2)
        assert len({pycycles.SeededStream(7), pycycles.SeededStream(7)}) == 1
        assert pycycles.SeededStream(7).child(3).counter == 3

    def test_children_differ(self):
        stream = pycycles.SeededStream(7)
        a, b = stream.split(2)
        assert not np.array_equal(a.normal(10), b.normal(10))
        assert not np.array_equal(a.normal(10), stream.normal(10))

    def test_children_independent(self):
        a, b = pycycles.SeededStream(8).split(2)
        r = np.corrcoef(a.normal(5000), b.normal(5000))[0, 1]
        assert abs(r) < 0.05

    def test_bad_seed(self):
        for seed in (-1, 2 ** 64, 1.5, True):
            with pytest.raises(pycycles.ParameterError):
                pycycles.SeededStream(seed)


class TestAr1:
    def test_moments(self):
        alpha, sigma = 0.6, 2.0
        x = pycycles.gen_ar1(50000, alpha, sigma, pycycles.SeededStream(1))
        assert np.var(x) == pytest.approx(sigma ** 2 / (1 - alpha ** 2),
                                          rel=0.05)
        assert pycycles.acf(x, 1).rho[1] == pytest.approx(alpha, abs=0.02)

    def test_deterministic(self):
        stream = pycycles.SeededStream(2)
        assert np.array_equal(pycycles.gen_ar1(20, 0.5, 1.0, stream),
                              pycycles.gen_ar1(20, 0.5, 1.0, stream))

    def test_length_one(self):
        x = pycycles.gen_ar1(1, 0.5, 1.0, pycycles.SeededStream(3))
        assert x.shape == (1,)

    def test_bad_alpha(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.gen_ar1(10, 1.0, 1.0, pycycles.SeededStream(3))

    def test_bad_length(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.gen_ar1(0, 0.5, 1.0, pycycles.SeededStream(3))


class TestTones:
    def test_closed_form(self):
        x = pycycles.gen_sum_of_tones(30, [(10, 2.0, 0.5), (4, 1.0, 0.0)])
        t = np.arange(30)
        expected = 2.0 * np.cos(2 * np.pi * t / 10 + 0.5) + \
            np.cos(2 * np.pi * t / 4)
        assert np.max(np.abs(x - expected)) < 1e-12

    def test_noise(self):
        stream = pycycles.SeededStream(4)
        x = pycycles.gen_sum_of_tones(30, [(10, 1.0, 0.0)], 0.5, stream)
        clean = pycycles.gen_sum_of_tones(30, [(10, 1.0, 0.0)])
        assert np.allclose(x - clean, stream.normal(30, 0.5))

    def test_noise_needs_stream(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.gen_sum_of_tones(30, [(10, 1.0, 0.0)], 0.5)

    def test_bad_period(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.gen_sum_of_tones(30, [(2, 1.0, 0.0)])


class TestOtherModels:
    def test_random_walk(self):
        stream = pycycles.SeededStream(5)
        x = pycycles.gen_random_walk(100, 1.0, stream)
        assert np.allclose(np.diff(x), stream.normal(100)[1:])

    def test_arch1_heavy_tails(self):
        x = pycycles.gen_arch1(20000, 0.2, 0.5, pycycles.SeededStream(6))
        kurtosis = np.mean(x ** 4) / np.mean(x ** 2) ** 2
        assert kurtosis > 3.5
        assert np.var(x) == pytest.approx(0.2 / (1 - 0.5), rel=0.15)

    def test_bilinear_length(self):
        x = pycycles.gen_bilinear(64, 0.4, pycycles.SeededStream(7))
        assert x.shape == (64,)
        assert np.all(np.isfinite(x))
