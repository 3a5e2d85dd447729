# cross-wavelet power and wavelet coherence between two scalograms

import concurrent.futures
import logging

import numpy as np
from scipy import ndimage

from pycycles import ParameterError, _check_probability, \
    _check_positive_int
from pycycles.rng import SeededStream, gen_ar1
from pycycles.spectral import fit_ar1, ar1_spectrum, cross_quantile
from pycycles.wavelet import SIGNIFICANCE_LEVELS, cwt_morlet

logger = logging.getLogger(__name__)

# scale smoothing width, in octaves
DEFAULT_SCALE_WIDTH = 0.6

DEFAULT_SURROGATES = 300


def _check_pair(x, y):
    if x.grid != y.grid or x.omega0 != y.omega0:
        raise ParameterError('scalograms are on different scale grids',
                             '{0!r} and {1!r}'.format(x.grid, y.grid))
    if x.times.shape != y.times.shape or np.any(x.times != y.times):
        raise ParameterError('scalograms cover different times',
                             '{0} and {1} columns'.format(x.times.size,
                                                          y.times.size))


def _model(sc):
    return sc.model if sc.model is not None else fit_ar1(sc.signal)


class CrossScalogram(object):
    """The pointwise product ``W^X conj(W^Y)`` of two scalograms.

    Attributes:
        labels (tuple): the x and y series labels
        times (numpy.ndarray): the shared times
        grid (ScaleGrid): the shared scales
        omega0 (float): the Morlet centre frequency
        coefficients (numpy.ndarray): complex cross coefficients
        coi (numpy.ndarray): the smaller of the two cones of influence
        threshold (dict): significance level to the cross power, per scale,
            above which a point is significant
        siglevels (dict): significance level to bool mask

    """

    __slots__ = ('labels', 'times', 'grid', 'omega0', 'coefficients', 'coi',
                 'threshold', 'siglevels')

    def __init__(self, labels, times, grid, omega0, coefficients, coi,
                 threshold=None, siglevels=None):
        self.labels = labels
        self.times = times
        self.grid = grid
        self.omega0 = omega0
        self.coefficients = coefficients
        self.coi = coi
        self.threshold = threshold or {}
        self.siglevels = siglevels or {}

    def __repr__(self):
        return 'CrossScalogram({0!r}, {1!r})'.format(*self.labels)

    @property
    def power(self):
        """Cross power ``|W^X conj(W^Y)|``."""

        return np.abs(self.coefficients)

    @property
    def phase(self):
        """Phase of x relative to y, in (-pi, pi]."""

        phase = np.angle(self.coefficients)
        phase[phase == -np.pi] = np.pi

        return phase

    @property
    def scales(self):
        return self.grid.scales

    @property
    def periods(self):
        return self.grid.periods(self.omega0)


def cross_wavelet(x, y, levels=SIGNIFICANCE_LEVELS):
    """Cross-wavelet transform of two scalograms with red-noise masks.

    A point is significant at level p when
    ``|W^X W^Y*| / (sd_X sd_Y) > Z_2(p) / 2 * sqrt(P^X P^Y)``, with ``P^X``
    and ``P^Y`` the AR(1) backgrounds of the two series at the Fourier
    frequency of each scale. Each scalogram's own model is used, or one is
    fitted from its signal.

    Args:
        x (Scalogram): the first scalogram
        y (Scalogram): the second, on the same grid and times
        levels (tuple): significance levels for masks

    Returns:
        :class:`.CrossScalogram`

    Raises:
        :class:`.ParameterError`

    """

    _check_pair(x, y)
    coefficients = x.coefficients * np.conj(y.coefficients)
    power = np.abs(coefficients)

    background = np.sqrt(ar1_spectrum(_model(x), x.frequencies) *
                         ar1_spectrum(_model(y), y.frequencies))
    scale = np.sqrt(x.variance * y.variance)
    threshold = {}
    siglevels = {}
    for p in levels:
        p = _check_probability(p)
        threshold[p] = scale * cross_quantile(p) / 2.0 * background
        siglevels[p] = power > threshold[p][:, np.newaxis]

    return CrossScalogram((x.label, y.label), x.times, x.grid, x.omega0,
                          coefficients, np.minimum(x.coi, y.coi),
                          threshold, siglevels)


def dump_lowfreq_mask(c, cutoff_period):
    """A copy of a cross scalogram with long periods removed.

    Args:
        c (CrossScalogram): the cross scalogram
        cutoff_period (float): coefficients at scales whose Fourier period
            exceeds this are set to zero

    Returns:
        :class:`.CrossScalogram`

    """

    keep = c.periods <= cutoff_period
    coefficients = np.where(keep[:, np.newaxis], c.coefficients, 0)
    siglevels = {p: mask & keep[:, np.newaxis]
                 for p, mask in c.siglevels.items()}
    logger.debug('dump_lowfreq_mask: kept %d of %d scales',
                 np.count_nonzero(keep), keep.size)

    return CrossScalogram(c.labels, c.times, c.grid, c.omega0, coefficients,
                          c.coi, dict(c.threshold), siglevels)


class SmoothSpec(object):
    """Smoothing for coherence.

    Time smoothing is a Gaussian of standard deviation ``time_factor * s``
    at each scale s. Scale smoothing is a boxcar an odd number of scale bins
    wide, close to ``scale_width / dj``.

    Attributes:
        time_factor (float): Gaussian width in units of scale, 0 to disable
        scale_width (float): boxcar width in octaves, 0 to disable

    """

    __slots__ = ('time_factor', 'scale_width')

    def __init__(self, time_factor=1.0, scale_width=DEFAULT_SCALE_WIDTH):
        if time_factor < 0 or scale_width < 0:
            raise ParameterError('smoothing widths must not be negative')
        self.time_factor = float(time_factor)
        self.scale_width = float(scale_width)

    def __repr__(self):
        return 'SmoothSpec(time_factor={0:g}, scale_width={1:g})'.format(
            self.time_factor, self.scale_width)

    @property
    def enabled(self):
        return self.time_factor > 0 or self.scale_width > 0

    def to_dict(self):
        return {'time_factor': self.time_factor,
                'scale_width': self.scale_width}

    def apply(self, field, grid):
        """Smooth a real scale x time field, time first then scale."""

        out = np.empty_like(field)
        for j, s in enumerate(grid.scales):
            if self.time_factor > 0:
                ndimage.gaussian_filter1d(field[j],
                                          self.time_factor * s / grid.dt,
                                          output=out[j], mode='constant')
            else:
                out[j] = field[j]

        # odd width: centred on each scale
        width = 2 * int(round(self.scale_width / grid.dj / 2.0)) + 1
        if width > 1:
            out = ndimage.uniform_filter1d(out, width, axis=0,
                                           mode='nearest')

        return out

    def apply_complex(self, field, grid):
        return self.apply(field.real, grid) + \
            1j * self.apply(field.imag, grid)


class CoherenceMap(object):
    """Squared wavelet coherence.

    Attributes:
        labels (tuple): the x and y series labels
        times (numpy.ndarray): the shared times
        grid (ScaleGrid): the shared scales
        omega0 (float): the Morlet centre frequency
        rsq (numpy.ndarray): R^2 in [0, 1], scale x time
        phase (numpy.ndarray): phase of the smoothed cross spectrum
        smooth (SmoothSpec): the smoothing used
        coi (numpy.ndarray): the shared cone of influence
        threshold (numpy.ndarray): surrogate R^2 quantile, or None
        level (float): the level of threshold, or None

    """

    __slots__ = ('labels', 'times', 'grid', 'omega0', 'rsq', 'phase',
                 'smooth', 'coi', 'threshold', 'level')

    def __init__(self, labels, times, grid, omega0, rsq, phase, smooth, coi,
                 threshold=None, level=None):
        self.labels = labels
        self.times = times
        self.grid = grid
        self.omega0 = omega0
        self.rsq = rsq
        self.phase = phase
        self.smooth = smooth
        self.coi = coi
        self.threshold = threshold
        self.level = level

    def __repr__(self):
        return 'CoherenceMap({0!r}, {1!r})'.format(*self.labels)

    @property
    def scales(self):
        return self.grid.scales

    @property
    def periods(self):
        return self.grid.periods(self.omega0)

    @property
    def significant(self):
        """Bool mask of R^2 above the surrogate threshold, or None."""

        if self.threshold is None:
            return None

        return self.rsq > self.threshold

    def with_threshold(self, threshold, level):
        return CoherenceMap(self.labels, self.times, self.grid, self.omega0,
                            self.rsq, self.phase, self.smooth, self.coi,
                            threshold, level)


def _rsq(wx, wy, grid, smooth):
    s = grid.scales[:, np.newaxis]
    sxy = smooth.apply_complex(wx * np.conj(wy) / s, grid)
    sxx = smooth.apply(np.abs(wx) ** 2 / s, grid)
    syy = smooth.apply(np.abs(wy) ** 2 / s, grid)

    denominator = sxx * syy
    rsq = np.zeros_like(denominator)
    np.divide(np.abs(sxy) ** 2, denominator, out=rsq,
              where=denominator > 0)

    return np.clip(rsq, 0.0, 1.0), np.angle(sxy)


def coherence(x, y, smooth=None):
    """Squared wavelet coherence of two scalograms.

    ``R^2 = |S(W^XY / s)|^2 / (S(|W^X|^2 / s) S(|W^Y|^2 / s))`` where S
    smooths in time, then in scale.

    Args:
        x (Scalogram): the first scalogram
        y (Scalogram): the second, on the same grid and times
        smooth (SmoothSpec): the smoothing, ``SmoothSpec()`` by default

    Returns:
        :class:`.CoherenceMap`

    Raises:
        :class:`.ParameterError` for mismatched grids or no smoothing

    """

    _check_pair(x, y)
    if smooth is None:
        smooth = SmoothSpec()
    if not smooth.enabled:
        raise ParameterError('coherence needs smoothing',
                             'unsmoothed coherence is identically 1')

    rsq, phase = _rsq(x.coefficients, y.coefficients, x.grid, smooth)

    return CoherenceMap((x.label, y.label), x.times, x.grid, x.omega0, rsq,
                        phase, smooth, np.minimum(x.coi, y.coi))


def _surrogate_rsq(stream, n, alphas, grid, omega0, smooth):
    sx = cwt_morlet(gen_ar1(n, alphas[0], 1.0, stream.child(0)), grid,
                    omega0)
    sy = cwt_morlet(gen_ar1(n, alphas[1], 1.0, stream.child(1)), grid,
                    omega0)

    return _rsq(sx.coefficients, sy.coefficients, grid, smooth)[0]


def coherence_significance(x, y, smooth=None, n_surrogates=DEFAULT_SURROGATES,
                           p=0.95, stream=None, workers=1):
    """Pointwise R^2 threshold from AR(1) surrogate pairs.

    Each surrogate pair is two independent AR(1) series with the fitted
    alphas of x and y, transformed and smoothed like the originals. The
    threshold is the p-quantile of surrogate R^2 at every grid point.
    Surrogate i draws from ``stream.child(i)``, so the result does not
    depend on the number of workers.

    Args:
        x (Scalogram): the first scalogram
        y (Scalogram): the second
        smooth (SmoothSpec): the smoothing, ``SmoothSpec()`` by default
        n_surrogates (int): how many surrogate pairs
        p (float): the quantile
        stream (SeededStream): the random stream, seed 0 by default
        workers (int): threads to run surrogates on

    Returns:
        numpy.ndarray, scale x time

    """

    _check_pair(x, y)
    p = _check_probability(p)
    n_surrogates = _check_positive_int(n_surrogates, 'n_surrogates')
    workers = _check_positive_int(workers, 'workers')
    if smooth is None:
        smooth = SmoothSpec()
    if stream is None:
        stream = SeededStream(0)

    alphas = (_model(x).alpha, _model(y).alpha)
    n = x.times.size
    logger.debug('coherence_significance: %d surrogates, alphas %s, '
                 '%d workers', n_surrogates, alphas, workers)

    def run(i):
        return _surrogate_rsq(stream.child(i), n, alphas, x.grid, x.omega0,
                              smooth)

    if workers == 1:
        fields = [run(i) for i in range(n_surrogates)]
    else:
        with concurrent.futures.ThreadPoolExecutor(workers) as executor:
            fields = list(executor.map(run, range(n_surrogates)))

    return np.quantile(np.stack(fields), p, axis=0)


__all__ = [
    'DEFAULT_SCALE_WIDTH',
    'DEFAULT_SURROGATES',
    'CrossScalogram',
    'cross_wavelet',
    'dump_lowfreq_mask',
    'SmoothSpec',
    'CoherenceMap',
    'coherence',
    'coherence_significance',
]
