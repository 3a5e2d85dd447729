# continuous Morlet wavelet transform with cone of influence and red-noise
# significance

import functools
import logging

import numpy as np
from scipy import fft

from pycycles import ParameterError, next_pow2, _as_values, \
    _check_probability, _check_range
from pycycles.series import standardize
from pycycles.spectral import fit_ar1, ar1_spectrum, chi2_quantile

logger = logging.getLogger(__name__)

DEFAULT_OMEGA0 = 6.0
DEFAULT_DJ = 1 / 20.0

# kernels are cut this many scales from their centre
TRUNCATION = 7.0

# decorrelation factor for time-averaged Morlet power
GAMMA_MORLET = 2.32

SIGNIFICANCE_LEVELS = (0.90, 0.95)


def fourier_factor(omega0=DEFAULT_OMEGA0):
    """Fourier period per unit scale, ``4 pi / (w0 + sqrt(2 + w0^2))``."""

    return 4 * np.pi / (omega0 + np.sqrt(2 + omega0 ** 2))


class ScaleGrid(object):
    """Geometric wavelet scales ``s0 * 2^(j dj)``, ``j = 0 .. n_scales - 1``.

    Attributes:
        s0 (float): the smallest scale, at least ``2 dt``
        dj (float): octaves between neighbouring scales
        n_scales (int): how many scales
        dt (float): the sampling interval

    """

    __slots__ = ('s0', 'dj', 'n_scales', 'dt')

    def __init__(self, s0, dj, n_scales, dt=1.0):
        dt = _check_range(dt, 0, np.inf, 'dt', low_open=True)
        if not s0 >= 2 * dt:
            raise ParameterError('smallest scale must be at least 2 dt',
                                 's0 = {0!r}, dt = {1!r}'.format(s0, dt))
        if not dj > 0:
            raise ParameterError('dj must be positive',
                                 'got {0!r}'.format(dj))
        if int(n_scales) < 1:
            raise ParameterError('need at least one scale')
        self.s0 = float(s0)
        self.dj = float(dj)
        self.n_scales = int(n_scales)
        self.dt = dt

    def __repr__(self):
        return 'ScaleGrid(s0={0:g}, dj={1:g}, n_scales={2})'.format(
            self.s0, self.dj, self.n_scales)

    def __eq__(self, other):
        return isinstance(other, ScaleGrid) and \
            (self.s0, self.dj, self.n_scales, self.dt) == \
            (other.s0, other.dj, other.n_scales, other.dt)

    def __hash__(self):
        return hash((self.s0, self.dj, self.n_scales, self.dt))

    @staticmethod
    def for_length(n, dt=1.0, dj=DEFAULT_DJ, s0=None):
        """The grid reaching from s0 up to ``n dt / 2``.

        Args:
            n (int): the series length
            dt (float): the sampling interval
            dj (float): octaves per scale step
            s0 (float): the smallest scale, ``2 dt`` by default

        Returns:
            :class:`.ScaleGrid`

        """

        if s0 is None:
            s0 = 2 * dt
        octaves = np.log2(n * dt / 2.0 / s0)
        if octaves < 0:
            raise ParameterError('series too short for the smallest scale',
                                 'n = {0}, s0 = {1:g}'.format(n, s0))
        # the tiny allowance stops rounding losing the top scale
        n_scales = int(np.floor(octaves / dj + 1e-9)) + 1

        return ScaleGrid(s0, dj, n_scales, dt)

    @property
    def scales(self):
        return self.s0 * 2.0 ** (np.arange(self.n_scales) * self.dj)

    def periods(self, omega0=DEFAULT_OMEGA0):
        return fourier_factor(omega0) * self.scales

    def validate(self, n):
        """Check the largest scale fits a series of length n."""

        largest = self.scales[-1]
        if largest > n * self.dt / 2.0 * (1 + 1e-9):
            raise ParameterError('largest scale exceeds half the series',
                                 'scale {0:g} for {1} values'.format(
                                     largest, n))


def _morlet(u, omega0):
    return np.pi ** -0.25 * np.exp(1j * omega0 * u - u ** 2 / 2)


@functools.lru_cache(maxsize=16)
def _kernel_bank(n, scales, omega0, dt):
    """Fourier transforms of the sampled, normalized daughter wavelets.

    The transforms have a length that makes circular convolution equal to
    linear convolution over the first n outputs.

    """

    reach = int(np.ceil(TRUNCATION * max(scales) / dt))
    m = next_pow2(n + reach)
    lags = np.arange(-reach, reach + 1)
    bank = np.zeros((len(scales), m), dtype=np.complex128)
    for j, s in enumerate(scales):
        kernel = np.sqrt(dt / s) * _morlet(lags * dt / s, omega0)
        bank[j, lags % m] = kernel
    bank = fft.fft(bank, axis=1)
    bank.flags.writeable = False
    logger.debug('_kernel_bank: %d scales, transform length %d',
                 len(scales), m)

    return bank


def wavelet_transform(values, grid, omega0=DEFAULT_OMEGA0):
    """The linear Morlet transform of a series, with no standardization.

    ``W[j, k] = sum_i x[i] sqrt(dt / s_j) conj(psi((t_i - t_k) / s_j))``
    with ``psi(u) = pi^(-1/4) exp(i w0 u) exp(-u^2 / 2)``, computed in the
    frequency domain on a zero-padded copy.

    Args:
        values: the series
        grid (ScaleGrid): the scales
        omega0 (float): the Morlet centre frequency

    Returns:
        numpy.ndarray, complex, n_scales x n

    """

    x = _as_values(values)
    n = x.size
    bank = _kernel_bank(n, tuple(grid.scales), float(omega0), grid.dt)
    spectrum = fft.fft(x, n=bank.shape[1])

    return fft.ifft(bank * spectrum, axis=1)[:, :n]


class Scalogram(object):
    """Wavelet coefficients of a standardized series on a scale x time grid.

    Attributes:
        times (numpy.ndarray): the time (year) of each column
        grid (ScaleGrid): the scales, one per row
        omega0 (float): the Morlet centre frequency
        coefficients (numpy.ndarray): complex, n_scales x n_times
        signal (numpy.ndarray): the standardized series transformed
        coi (numpy.ndarray): per time, the largest scale free of edge
            effects
        model (Ar1Model): the red-noise background, or None
        background (numpy.ndarray): expected power per scale under the
            background, or None
        siglevels (dict): significance level to bool mask

    """

    __slots__ = ('times', 'grid', 'omega0', 'coefficients', 'signal',
                 'coi', 'model', 'background', 'siglevels', 'label')

    def __init__(self, times, grid, omega0, coefficients, signal, coi,
                 model=None, background=None, siglevels=None, label=''):
        self.times = times
        self.grid = grid
        self.omega0 = omega0
        self.coefficients = coefficients
        self.signal = signal
        self.coi = coi
        self.model = model
        self.background = background
        self.siglevels = siglevels or {}
        self.label = label

    def __repr__(self):
        return 'Scalogram({0!r}, {1} x {2})'.format(
            self.label, self.grid.n_scales, self.times.size)

    @property
    def power(self):
        return np.abs(self.coefficients) ** 2

    @property
    def scales(self):
        return self.grid.scales

    @property
    def periods(self):
        return self.grid.periods(self.omega0)

    @property
    def frequencies(self):
        """Fourier frequency of each scale, in cycles per sample.

        Periods under two samples are capped at the Nyquist frequency.

        """

        return np.minimum(self.grid.dt / self.periods, 0.5)

    @property
    def variance(self):
        return float(np.var(self.signal, ddof=1))

    def with_significance(self, model=None, levels=SIGNIFICANCE_LEVELS):
        """A copy with the red-noise background and significance masks.

        Args:
            model (Ar1Model): the background, fitted from the signal by
                default
            levels (tuple): significance levels for masks

        Returns:
            :class:`.Scalogram`

        """

        if model is None:
            model = fit_ar1(self.signal)
        background = self.variance * ar1_spectrum(model, self.frequencies)
        siglevels = {p: significance_mask(self, model, p) for p in levels}

        return Scalogram(self.times, self.grid, self.omega0,
                         self.coefficients, self.signal, self.coi, model,
                         background, siglevels, self.label)


def _times(signal, n, dt):
    if hasattr(signal, 'years'):
        return signal.years

    return np.arange(n) * dt


def cone_of_influence(n, grid):
    """Per time, the largest scale whose e-folding time ``sqrt(2) s`` fits
    between the time and the nearest end of the series."""

    t = np.arange(n)
    distance = np.minimum(t, n - 1 - t) * grid.dt

    return np.minimum(distance / np.sqrt(2), grid.scales[-1])


def cwt_morlet(signal, grid=None, omega0=DEFAULT_OMEGA0, dt=1.0):
    """The Morlet scalogram of a series.

    The series is standardized first, then transformed with
    :func:`wavelet_transform`.

    Args:
        signal: at least 16 values, or an :class:`.AnnualSeries`
        grid (ScaleGrid): the scales, ``ScaleGrid.for_length(n)`` by
            default
        omega0 (float): the Morlet centre frequency, at least 5
        dt (float): the sampling interval for the default grid

    Returns:
        :class:`.Scalogram` without significance, see
        :meth:`.Scalogram.with_significance`

    Raises:
        :class:`.ParameterError`, :class:`.DegenerateError`

    """

    x = _as_values(signal, min_length=16)
    n = x.size
    omega0 = _check_range(omega0, 5, np.inf, 'omega0')
    if grid is None:
        grid = ScaleGrid.for_length(n, dt)
    grid.validate(n)

    z = standardize(x)
    coefficients = wavelet_transform(z, grid, omega0)
    logger.debug('cwt_morlet: %d values, %d scales', n, grid.n_scales)

    return Scalogram(_times(signal, n, grid.dt), grid, omega0, coefficients,
                     z, cone_of_influence(n, grid),
                     label=getattr(signal, 'label', ''))


def significance_mask(sc, model, p):
    """Points whose power exceeds the red-noise background at level p.

    True where ``|W|^2 / var > P(f) chi2_2(p) / 2``, with ``P`` the
    AR(1) spectrum at the Fourier frequency of each scale.

    Args:
        sc (Scalogram): the scalogram
        model (Ar1Model): the background
        p (float): the significance level, in (0, 1)

    Returns:
        numpy.ndarray of bool, n_scales x n_times

    """

    p = _check_probability(p)
    threshold = ar1_spectrum(model, sc.frequencies) * \
        chi2_quantile(p, 2) / 2.0

    return sc.power / sc.variance > threshold[:, np.newaxis]


def coi_mask(sc):
    """Points outside the cone of influence, where edges do not matter.

    Returns:
        numpy.ndarray of bool, n_scales x n_times

    """

    return sc.scales[:, np.newaxis] < sc.coi[np.newaxis, :]


class GlobalSpectrum(object):
    """Time-averaged wavelet power over the trusted part of a scalogram.

    Attributes:
        periods (numpy.ndarray): Fourier period per scale
        power (numpy.ndarray): mean power outside the cone of influence,
            NaN where no point is trusted
        counts (numpy.ndarray): trusted points averaged per scale
        threshold (numpy.ndarray): background power at the chosen level
        significant (numpy.ndarray): bool, power above threshold

    """

    __slots__ = ('periods', 'power', 'counts', 'threshold', 'significant')

    def __init__(self, periods, power, counts, threshold, significant):
        self.periods = periods
        self.power = power
        self.counts = counts
        self.threshold = threshold
        self.significant = significant


def global_spectrum(sc, model=None, p=0.95):
    """Average a scalogram over time and test it against red noise.

    The average of ``n_a`` trusted points has
    ``nu = 2 sqrt(1 + (n_a dt / (2.32 s))^2)`` degrees of freedom.

    Args:
        sc (Scalogram): the scalogram
        model (Ar1Model): the background, the scalogram's own by default
        p (float): the significance level

    Returns:
        :class:`.GlobalSpectrum`

    """

    p = _check_probability(p)
    if model is None:
        model = sc.model if sc.model is not None else fit_ar1(sc.signal)

    trusted = coi_mask(sc)
    counts = trusted.sum(axis=1)
    total = np.where(trusted, sc.power, 0).sum(axis=1)
    power = np.full(counts.size, np.nan)
    np.divide(total, counts, out=power, where=counts > 0)

    nu = 2 * np.sqrt(1 + (counts * sc.grid.dt /
                          (GAMMA_MORLET * sc.scales)) ** 2)
    quantile = np.array([chi2_quantile(p, v) for v in nu])
    threshold = sc.variance * ar1_spectrum(model, sc.frequencies) * \
        quantile / nu
    significant = np.where(counts > 0, power > threshold, False)

    return GlobalSpectrum(sc.periods, power, counts, threshold, significant)


__all__ = [
    'DEFAULT_OMEGA0',
    'DEFAULT_DJ',
    'SIGNIFICANCE_LEVELS',
    'fourier_factor',
    'ScaleGrid',
    'wavelet_transform',
    'Scalogram',
    'cone_of_influence',
    'cwt_morlet',
    'significance_mask',
    'coi_mask',
    'GlobalSpectrum',
    'global_spectrum',
]
