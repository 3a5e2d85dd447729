# seeded, splittable random streams and simulation fixtures

import logging
import numbers

import numpy as np
from scipy import signal

from pycycles import ParameterError, _check_range

logger = logging.getLogger(__name__)


class SeededStream(object):
    """A value-like, splittable source of random numbers.

    A stream is a seed plus a spawn key. Two streams with equal seed and key
    always produce the same numbers, and children made with :meth:`child`
    never overlap each other or their parent, since they come from
    :class:`numpy.random.SeedSequence` spawn keys feeding a ``PCG64`` bit
    generator.

    Attributes:
        seed (int): the 64-bit root seed
        key (tuple): the spawn key, empty for a root stream

    """

    __slots__ = ('seed', 'key')

    def __init__(self, seed, key=()):
        if isinstance(seed, bool) or not isinstance(seed, numbers.Integral) \
                or not 0 <= seed < 2 ** 64:
            raise ParameterError('seed must be an integer in [0, 2^64)',
                                 'got {0!r}'.format(seed))
        self.seed = int(seed)
        self.key = tuple(int(k) for k in key)

    def __repr__(self):
        return 'SeededStream({0}, key={1})'.format(self.seed, self.key)

    def __eq__(self, other):
        return isinstance(other, SeededStream) and \
            (self.seed, self.key) == (other.seed, other.key)

    def __hash__(self):
        return hash((self.seed, self.key))

    @property
    def counter(self):
        """The position of this stream among its siblings."""

        return self.key[-1] if self.key else 0

    def child(self, index):
        """The index-th child stream.

        Args:
            index (int): which child, 0 or more

        Returns:
            :class:`.SeededStream`

        """

        return SeededStream(self.seed, self.key + (index,))

    def split(self, n):
        """The first n child streams."""

        return [self.child(i) for i in range(n)]

    def generator(self):
        """A fresh generator positioned at the start of this stream.

        Returns:
            :class:`numpy.random.Generator`

        """

        sequence = np.random.SeedSequence(self.seed, spawn_key=self.key)

        return np.random.Generator(np.random.PCG64(sequence))

    def normal(self, n, sd=1.0):
        """n normal deviates with mean 0 from the start of this stream."""

        return self.generator().normal(0.0, sd, n)


def _check_length(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ParameterError('n must be a positive integer',
                             'got {0!r}'.format(n))

    return int(n)


def gen_ar1(n, alpha, sigma, stream):
    """Simulate a stationary AR(1) process.

    ``x[t] = alpha * x[t - 1] + e[t]`` with ``e ~ Normal(0, sigma^2)``, and
    ``x[0]`` drawn from the stationary distribution
    ``Normal(0, sigma^2 / (1 - alpha^2))``.

    Args:
        n (int): the number of samples
        alpha (float): the lag-one coefficient, ``|alpha| < 1``
        sigma (float): the innovation standard deviation
        stream (SeededStream): where the randomness comes from

    Returns:
        numpy.ndarray

    Raises:
        :class:`.ParameterError`

    """

    n = _check_length(n)
    alpha = _check_range(alpha, -1, 1, 'alpha', low_open=True, high_open=True)
    sigma = _check_range(sigma, 0, np.inf, 'sigma')

    g = stream.generator()
    x0 = g.normal(0.0, sigma / np.sqrt(1 - alpha ** 2))
    innovations = g.normal(0.0, sigma, n - 1)
    if n == 1:
        return np.array([x0])

    rest, _ = signal.lfilter([1.0], [1.0, -alpha], innovations,
                             zi=[alpha * x0])

    return np.concatenate(([x0], rest))


def gen_sum_of_tones(n, tones, noise_sd=0.0, stream=None):
    """A sum of cosines plus optional white noise.

    Each tone is ``amplitude * cos(2 pi t / period + phase)`` for
    ``t = 0 .. n - 1``.

    Args:
        n (int): the number of samples
        tones (list): ``(period, amplitude, phase)`` triples, periods in
            samples and greater than 2
        noise_sd (float): the standard deviation of added Gaussian noise
        stream (SeededStream): needed only when noise_sd is positive

    Returns:
        numpy.ndarray

    Raises:
        :class:`.ParameterError`

    """

    n = _check_length(n)
    t = np.arange(n, dtype=np.float64)
    x = np.zeros(n)
    for period, amplitude, phase in tones:
        if not period > 2:
            raise ParameterError('tone period must exceed 2 samples',
                                 'got {0!r}'.format(period))
        x += amplitude * np.cos(2 * np.pi * t / period + phase)

    if noise_sd > 0:
        if stream is None:
            raise ParameterError('noise needs a random stream')
        x += stream.normal(n, noise_sd)

    return x


def gen_random_walk(n, sigma, stream):
    """The cumulative sum of n normal deviates."""

    n = _check_length(n)

    return np.cumsum(stream.normal(n, sigma))


def gen_arch1(n, a0, a1, stream, burn=100):
    """Simulate ARCH(1): ``x[t] = e[t] * sqrt(a0 + a1 * x[t - 1]^2)``.

    Args:
        n (int): the number of samples returned
        a0 (float): the constant variance term, positive
        a1 (float): the lag-one coefficient, in [0, 1)
        stream (SeededStream): where the randomness comes from
        burn (int): samples discarded from the start

    Returns:
        numpy.ndarray

    """

    n = _check_length(n)
    a0 = _check_range(a0, 0, np.inf, 'a0', low_open=True)
    a1 = _check_range(a1, 0, 1, 'a1', high_open=True)

    e = stream.normal(n + burn)
    x = np.zeros(n + burn)
    for t in range(1, n + burn):
        x[t] = e[t] * np.sqrt(a0 + a1 * x[t - 1] ** 2)

    return x[burn:]


def gen_bilinear(n, b, stream, burn=100):
    """Simulate the bilinear model ``x[t] = b x[t - 1] e[t - 1] + e[t]``."""

    n = _check_length(n)
    e = stream.normal(n + burn)
    x = np.zeros(n + burn)
    x[0] = e[0]
    for t in range(1, n + burn):
        x[t] = b * x[t - 1] * e[t - 1] + e[t]

    return x[burn:]


__all__ = [
    'SeededStream',
    'gen_ar1',
    'gen_sum_of_tones',
    'gen_random_walk',
    'gen_arch1',
    'gen_bilinear',
]
