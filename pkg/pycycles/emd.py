# empirical mode decomposition and the Hilbert spectrum of its modes

import logging

import numpy as np
from scipy import interpolate, signal

from pycycles import _as_values, _check_range, \
    _check_positive_int
from pycycles.series import Decomposition

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.05
DEFAULT_MAX_SIFTS = 50
DEFAULT_MAX_IMFS = 10


def _extrema(h):
    """Indices of the interior local maxima and minima.

    A flat peak or trough counts once, at the middle of its run.

    """

    d = np.sign(np.diff(h))
    steps = np.flatnonzero(d)
    slopes = d[steps]
    turns = np.flatnonzero(slopes[1:] != slopes[:-1])
    middle = (steps[turns] + 1 + steps[turns + 1]) // 2
    rising = slopes[turns] > 0

    return middle[rising], middle[~rising]


def _zero_crossings(h):
    s = np.sign(h)
    s = s[s != 0]

    return int(np.count_nonzero(s[1:] != s[:-1]))


def _envelope(index, h):
    """A cubic spline through some extrema, extended past both ends.

    The two extrema nearest each end are mirrored across it.

    """

    n = h.size
    t = index.astype(np.float64)
    left = -t[:2][::-1]
    right = 2.0 * (n - 1) - t[-2:][::-1]
    knots = np.concatenate((left[left < 0], t, right[right > n - 1]))
    values = h[np.concatenate((index[:2][::-1][left < 0], index,
                               index[-2:][::-1][right > n - 1]))]
    if knots.size < 2:
        return np.full(n, values[0])

    return interpolate.CubicSpline(knots, values)(np.arange(n))


def _envelope_mean(h):
    maxima, minima = _extrema(h)
    if maxima.size == 0 or minima.size == 0:
        return None

    return (_envelope(maxima, h) + _envelope(minima, h)) / 2


def _count_ok(h):
    maxima, minima = _extrema(h)

    return abs(maxima.size + minima.size - _zero_crossings(h)) <= 1


def _envelope_ok(h):
    mean = _envelope_mean(h)
    if mean is None:
        return False

    return abs(np.mean(mean)) < 0.1 * np.std(h)


def _sd(old, new):
    # the stopping sum, each term weighted by old^2
    energy = np.dot(old, old)
    if energy == 0:
        return 0.0

    return np.sum((old - new) ** 2) / energy


def _sift_one(r, epsilon, max_sifts):
    h = r
    for count in range(1, max_sifts + 1):
        mean = _envelope_mean(h)
        if mean is None:
            return h, count - 1, False
        new = h - mean
        sd = _sd(h, new)
        h = new
        if sd < epsilon and _count_ok(h):
            return h, count, True

    return h, max_sifts, False


def _monotone(r):
    d = np.diff(r)

    return bool(np.all(d >= 0) or np.all(d <= 0))


class ImfSet(object):
    """Intrinsic mode functions and the residual left after extracting them.

    ``imfs.sum(axis=0) + residual`` reproduces the input.

    Attributes:
        imfs (numpy.ndarray): one row per mode, highest frequency first
        residual (numpy.ndarray): what is left, monotone or nearly so
        sift_counts (list): sifting iterations spent on each mode
        epsilon (float): the sifting tolerance used
        converged (list): per mode, True if sifting met the tolerance and
            the extrema / zero-crossing rule before max_sifts

    """

    __slots__ = ('imfs', 'residual', 'sift_counts', 'epsilon', 'converged')

    def __init__(self, imfs, residual, sift_counts, epsilon, converged):
        self.imfs = imfs
        self.residual = residual
        self.sift_counts = sift_counts
        self.epsilon = epsilon
        self.converged = converged

    def __repr__(self):
        return 'ImfSet({0} modes, sifts {1})'.format(len(self),
                                                     self.sift_counts)

    def __len__(self):
        return self.imfs.shape[0]

    @property
    def flags(self):
        """Indices of modes that stopped at max_sifts."""

        return [i for i, ok in enumerate(self.converged) if not ok]

    def reconstruction(self):
        return self.imfs.sum(axis=0) + self.residual

    def check(self):
        """Test every mode against the IMF definition.

        Returns:
            list of ``(count_ok, envelope_ok)`` pairs: extrema and
            zero-crossing counts differ by at most one, and the mean of
            the envelope mean is under 0.1 standard deviations

        """

        return [(_count_ok(imf), _envelope_ok(imf)) for imf in self.imfs]

    def hilbert(self):
        return [hilbert_spectrum(imf) for imf in self.imfs]


def sift(signal, epsilon=DEFAULT_EPSILON, max_imfs=DEFAULT_MAX_IMFS,
         max_sifts=DEFAULT_MAX_SIFTS):
    """Empirical mode decomposition by sifting.

    Each mode is sifted by subtracting the mean of cubic-spline envelopes
    through the maxima and the minima, until the stopping sum
    ``sum((h_old - h_new)^2) / sum(h_old^2)`` drops below epsilon and the mode
    has as many zero crossings as extrema (give or take one), or max_sifts
    is reached. Extraction stops when the residual is monotone, has fewer
    than four extrema, or max_imfs modes are found.

    Args:
        signal: at least 16 values
        epsilon (float): the tolerance, in (0, 1)
        max_imfs (int): the most modes to extract
        max_sifts (int): the most sifting iterations per mode

    Returns:
        :class:`.ImfSet`

    Raises:
        :class:`.DataError`, :class:`.ParameterError`

    """

    x = _as_values(signal, min_length=16)
    epsilon = _check_range(epsilon, 0, 1, 'epsilon',
                           low_open=True, high_open=True)
    max_imfs = _check_positive_int(max_imfs, 'max_imfs')
    max_sifts = _check_positive_int(max_sifts, 'max_sifts')

    imfs = []
    counts = []
    converged = []
    r = x
    while len(imfs) < max_imfs:
        maxima, minima = _extrema(r)
        if maxima.size + minima.size < 4 or _monotone(r):
            break
        imf, count, ok = _sift_one(r, epsilon, max_sifts)
        if not ok:
            logger.warning('mode %d stopped after %d sifts without '
                           'meeting the tolerance', len(imfs) + 1, count)
        imfs.append(imf)
        counts.append(count)
        converged.append(ok)
        r = r - imf

    logger.debug('sift: %d modes from %d values, sifts %s',
                 len(imfs), x.size, counts)

    return ImfSet(np.array(imfs).reshape(len(imfs), x.size), r,
                  counts, epsilon, converged)


def denoise_first_imf(signal, epsilon=DEFAULT_EPSILON,
                      max_sifts=DEFAULT_MAX_SIFTS):
    """Remove the first intrinsic mode as noise.

    The input is assumed already detrended, so the trend is zero.

    Args:
        signal: at least 16 values, or an :class:`.AnnualSeries`
        epsilon (float): the sifting tolerance
        max_sifts (int): the most sifting iterations

    Returns:
        :class:`.Decomposition`

    """

    x = _as_values(signal, min_length=16)
    modes = sift(x, epsilon, max_imfs=1, max_sifts=max_sifts)
    noise = modes.imfs[0] if len(modes) else np.zeros(x.size)

    return Decomposition(signal, np.zeros(x.size), x - noise, noise,
                         ['emd-first-imf({0:g})'.format(epsilon)])


class HilbertSpectrum(object):
    """Instantaneous amplitude and frequency of one mode.

    Attributes:
        amplitude (numpy.ndarray): modulus of the analytic signal
        frequency (numpy.ndarray): cycles per sample, NaN where undefined
        defined (numpy.ndarray): bool, where the amplitude is not ~0
        is_imf (bool): False if the input badly fails the envelope-mean
            rule

    """

    __slots__ = ('amplitude', 'frequency', 'defined', 'is_imf')

    def __init__(self, amplitude, frequency, defined, is_imf):
        self.amplitude = amplitude
        self.frequency = frequency
        self.defined = defined
        self.is_imf = is_imf

    @property
    def mean_frequency(self):
        """The mean instantaneous frequency where it is defined."""

        if not np.any(self.defined):
            return float('nan')

        return float(np.mean(self.frequency[self.defined]))


def hilbert_spectrum(imf):
    """The Hilbert spectrum of one intrinsic mode.

    The analytic signal comes from the frequency-domain construction
    (negative frequencies zeroed, positive doubled). Frequency is the centred
    difference of the unwrapped phase over 2 pi.

    Args:
        imf: at least 16 values, zero mean

    Returns:
        :class:`.HilbertSpectrum`

    """

    h = _as_values(imf, name='imf', min_length=16)
    analytic = signal.hilbert(h)
    amplitude = np.abs(analytic)
    peak = np.max(amplitude)
    defined = amplitude > 1e-12 * peak if peak > 0 else \
        np.zeros(h.size, dtype=bool)

    phase = np.unwrap(np.angle(analytic))
    frequency = np.gradient(phase) / (2 * np.pi)
    frequency[~defined] = np.nan

    is_imf = True
    if peak > 0:
        mean = _envelope_mean(h)
        is_imf = mean is not None and \
            np.max(np.abs(mean)) < 0.5 * np.max(np.abs(h))
        if not is_imf:
            logger.warning('hilbert_spectrum: input is not an intrinsic '
                           'mode function')

    return HilbertSpectrum(amplitude, frequency, defined, is_imf)


__all__ = [
    'DEFAULT_EPSILON',
    'DEFAULT_MAX_SIFTS',
    'DEFAULT_MAX_IMFS',
    'ImfSet',
    'sift',
    'denoise_first_imf',
    'HilbertSpectrum',
    'hilbert_spectrum',
]
