# Fourier transforms, periodograms and the AR(1) red-noise background

import logging
import numbers

import numpy as np
from scipy import fft, optimize, special

from pycycles import ParameterError, DegenerateError, next_pow2, \
    _as_values, _is_constant, _check_probability
from pycycles.series import acf

logger = logging.getLogger(__name__)

# largest alpha a fitted AR(1) may have
MAX_ALPHA = 0.999


def dft(signal, pad=False):
    """The discrete Fourier transform.

    ``F[k] = sum_t x[t] exp(-2 pi i k t / N)``. For real input the sign of
    the exponent only conjugates the coefficients.

    Args:
        signal: the values, at least 2
        pad (bool): zero-pad to the next power of two first, giving an
            interpolated spectrum of that length rather than N coefficients

    Returns:
        numpy.ndarray of complex

    """

    x = _as_values(signal, min_length=2)
    n = next_pow2(x.size) if pad else x.size

    return fft.fft(x, n=n)


class Periodogram(object):
    """Power at the positive Fourier frequencies of a series.

    Attributes:
        frequencies (numpy.ndarray): ``k / N`` for ``k = 1 .. N // 2``, in
            cycles per sample (cycles per year for annual data)
        power (numpy.ndarray): ``|F[k]|^2 / N``
        n (int): the series length

    """

    __slots__ = ('frequencies', 'power', 'n')

    def __init__(self, frequencies, power, n):
        self.frequencies = frequencies
        self.power = power
        self.n = n

    @property
    def periods(self):
        return 1.0 / self.frequencies

    @property
    def weights(self):
        """How many DFT bins each ordinate stands for (2, or 1 at Nyquist)."""

        weights = np.full(self.power.size, 2.0)
        if self.n % 2 == 0:
            weights[-1] = 1.0

        return weights

    def total(self):
        """The sum of squares the periodogram accounts for (Parseval)."""

        return float(np.sum(self.power * self.weights))

    def smoothed(self, m):
        """Modified Daniell smoothing over 2m + 1 neighbouring ordinates.

        The end ordinates get half weight, the series is reflected at both
        ends.

        Args:
            m (int): the half-width, 0 returns an unchanged copy

        Returns:
            :class:`.Periodogram`

        """

        if m <= 0:
            return Periodogram(self.frequencies, self.power.copy(), self.n)

        kernel = np.ones(2 * m + 1)
        kernel[0] = kernel[-1] = 0.5
        kernel /= kernel.sum()
        padded = np.pad(self.power, m, mode='reflect')
        power = np.convolve(padded, kernel, mode='valid')

        return Periodogram(self.frequencies, power, self.n)


def periodogram(signal):
    """The raw periodogram of a mean-removed series.

    Parseval: ``sum(power * weights) == sum((x - mean(x))^2)``.

    Args:
        signal: the values, at least 8

    Returns:
        :class:`.Periodogram`

    """

    x = _as_values(signal, min_length=8)
    n = x.size
    coefficients = fft.fft(x - x.mean())
    k = np.arange(1, n // 2 + 1)
    power = np.abs(coefficients[k]) ** 2 / n

    return Periodogram(k / n, power, n)


class Ar1Model(object):
    """A red-noise background ``x[t] = alpha * x[t - 1] + e[t]``.

    Attributes:
        alpha (float): lag-one autocorrelation in [0, 1)
        sigma2 (float): innovation variance
        clamped (bool): the raw estimate fell outside [0, 0.999]

    """

    __slots__ = ('alpha', 'sigma2', 'clamped')

    def __init__(self, alpha, sigma2=1.0, clamped=False):
        if not 0 <= alpha < 1:
            raise ParameterError('AR(1) alpha must lie in [0, 1)',
                                 'got {0!r}'.format(alpha))
        self.alpha = float(alpha)
        self.sigma2 = float(sigma2)
        self.clamped = bool(clamped)

    def __repr__(self):
        return 'Ar1Model(alpha={0:.4f}, sigma2={1:.4g}{2})'.format(
            self.alpha, self.sigma2, ', clamped' if self.clamped else '')

    def spectrum(self, frequency, grid=None):
        return ar1_spectrum(self, frequency, grid)


def fit_ar1(signal):
    """Fit a red-noise model by the lag-one autocorrelation.

    Args:
        signal: the values, at least 20; the mean is removed first

    Returns:
        :class:`.Ar1Model`

    Raises:
        :class:`.DegenerateError`

    """

    x = _as_values(signal, min_length=20)
    if _is_constant(x):
        raise DegenerateError('unable to fit AR(1) to a constant series')

    raw = acf(x, 1).rho[1]
    alpha = min(max(raw, 0.0), MAX_ALPHA)
    clamped = alpha != raw
    if clamped:
        logger.warning('AR(1) alpha %.4f clamped to %.4f', raw, alpha)
    sigma2 = np.var(x) * (1 - alpha ** 2)

    return Ar1Model(alpha, sigma2, clamped)


def ar1_spectrum(model, frequency, grid=None):
    """The normalized AR(1) power spectrum.

    ``P(f) = (1 - alpha^2) / |1 - alpha exp(-2 pi i f)|^2``, which has unit
    mean over a uniform frequency grid on [0, 0.5]. Pass ``grid`` to
    renormalize to unit mean over some other set of frequencies.

    Args:
        model (Ar1Model): the background
        frequency: frequencies in cycles per sample, in [0, 0.5]
        grid: optional frequencies to normalize over

    Returns:
        float, or numpy.ndarray for array input

    """

    f = np.asarray(frequency, dtype=np.float64)
    if np.any(f < 0) or np.any(f > 0.5):
        raise ParameterError('frequency must lie in [0, 0.5]')

    def raw(f):
        a = model.alpha
        return (1 - a ** 2) / (1 - 2 * a * np.cos(2 * np.pi * f) + a ** 2)

    power = raw(f)
    if grid is not None:
        power = power / np.mean(raw(np.asarray(grid, dtype=np.float64)))

    return float(power) if power.ndim == 0 else power


def chi2_quantile(p, m):
    """The p-quantile of the chi-square distribution with m degrees of freedom.

    Computed by inverting the regularized lower incomplete gamma function.

    Args:
        p (float): probability in (0, 1)
        m (float): degrees of freedom, positive

    Returns:
        float

    Raises:
        :class:`.ParameterError`

    """

    p = _check_probability(p)
    if isinstance(m, bool) or not isinstance(m, numbers.Real) or m <= 0:
        raise ParameterError('degrees of freedom must be positive',
                             'got {0!r}'.format(m))

    return 2.0 * special.gammaincinv(m / 2.0, p)


def _product_sf(z):
    # P(sqrt(U V) > z) for independent U, V ~ chi2(2)
    return z * special.k1(z)


def cross_quantile(p):
    """The p-quantile of ``sqrt(U V)``, ``U, V`` independent chi-square(2).

    This is the ``Z_2(p)`` of cross-wavelet significance;
    ``cross_quantile(0.95)`` is 3.999.

    Args:
        p (float): probability in (0, 1)

    Returns:
        float

    """

    p = _check_probability(p)

    return optimize.brentq(lambda z: _product_sf(z) - (1 - p),
                           1e-12, 100.0, xtol=1e-14)


__all__ = [
    'MAX_ALPHA',
    'dft',
    'Periodogram',
    'periodogram',
    'Ar1Model',
    'fit_ar1',
    'ar1_spectrum',
    'chi2_quantile',
    'cross_quantile',
]
