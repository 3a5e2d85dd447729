# singular spectrum analysis

import logging
import numbers
from collections import OrderedDict

import numpy as np
from scipy import linalg

from pycycles import ParameterError, _as_values, _check_range
from pycycles.series import Decomposition

logger = logging.getLogger(__name__)

# the longest default window
MAX_DEFAULT_WINDOW = 25


def default_window(n):
    """The default embedding window, ``min(n // 2, 25)``."""

    return max(2, min(n // 2, MAX_DEFAULT_WINDOW))


class SsaModel(object):
    """The SVD of a trajectory matrix.

    The trajectory matrix has L rows and ``K = N - L + 1`` lagged columns;
    its SVD is ``T = U diag(s) V'``.

    Attributes:
        window (int): the window length L
        columns (int): K
        eigenvalues (numpy.ndarray): the singular values s, non-increasing
        left_vectors (numpy.ndarray): U, L x r
        right_vectors (numpy.ndarray): V, K x r
        source_length (int): N
        wide_window (bool): True if L is above N / 2

    """

    __slots__ = ('window', 'columns', 'eigenvalues', 'left_vectors',
                 'right_vectors', 'source_length')

    def __init__(self, window, columns, eigenvalues, left_vectors,
                 right_vectors, source_length):
        self.window = window
        self.columns = columns
        self.eigenvalues = eigenvalues
        self.left_vectors = left_vectors
        self.right_vectors = right_vectors
        self.source_length = source_length

    def __repr__(self):
        return 'SsaModel(L={0}, K={1})'.format(self.window, self.columns)

    @property
    def wide_window(self):
        return self.window > self.source_length // 2

    @property
    def rank(self):
        return self.eigenvalues.size

    @property
    def singular_values(self):
        return self.eigenvalues

    def elementary(self, index):
        """The index-th elementary reconstructed component."""

        return reconstruct(self, [index])


def embed_decompose(signal, window):
    """Embed a series in its trajectory matrix and decompose it.

    Windows above N / 2 give the transposed embedding of window
    ``N - L + 1`` and the same nonzero eigenvalues.

    Args:
        signal: at least 4 values
        window (int): L, with ``2 <= L <= N - 1``

    Returns:
        :class:`.SsaModel`

    Raises:
        :class:`.ParameterError`

    """

    x = _as_values(signal, min_length=4)
    n = x.size
    if isinstance(window, bool) or not isinstance(window, numbers.Integral) \
            or not 2 <= window <= n - 1:
        raise ParameterError('SSA window out of range',
                             'window {0} for {1} values'.format(window, n))
    window = int(window)
    if window > n // 2:
        logger.warning('embed_decompose: window %d above n / 2 = %d, '
                       'same as window %d transposed',
                       window, n // 2, n - window + 1)

    trajectory = linalg.hankel(x[:window], x[window - 1:])
    u, s, vt = np.linalg.svd(trajectory, full_matrices=False)
    logger.debug('embed_decompose: L = %d, K = %d, leading share %.3f',
                 window, n - window + 1,
                 s[0] ** 2 / np.sum(s ** 2) if s[0] > 0 else 0)

    return SsaModel(window, n - window + 1, s, u, vt.T, n)


def _check_group(model, group):
    indices = sorted(set(group))
    for i in indices:
        if isinstance(i, bool) or not isinstance(i, numbers.Integral) or \
                not 0 <= i < model.rank:
            raise ParameterError('component index out of range',
                                 'index {0!r}, rank {1}'.format(
                                     i, model.rank))

    return indices


def reconstruct(model, group):
    """Rebuild a series from a group of elementary components.

    The selected ``s_i u_i v_i'`` are summed and mapped back to a series by
    averaging along anti-diagonals.

    Args:
        model (SsaModel): the decomposition
        group (iterable): 0-based component indices, may be empty

    Returns:
        numpy.ndarray

    Raises:
        :class:`.ParameterError`

    """

    indices = _check_group(model, group)
    total = np.zeros(model.source_length)
    for i in indices:
        # anti-diagonal sums of an outer product are a convolution
        total += np.convolve(model.eigenvalues[i] * model.left_vectors[:, i],
                             model.right_vectors[:, i])
    counts = np.convolve(np.ones(model.window), np.ones(model.columns))

    return total / counts


def scree(model):
    """Eigenvalue shares ``s_i^2 / sum(s^2)``, descending."""

    power = model.eigenvalues ** 2
    total = np.sum(power)
    if total == 0:
        return np.zeros(power.size)

    return power / total


class Grouping(object):
    """Labelled, disjoint groups of component indices.

    Attributes:
        groups (list): lists of 0-based component indices
        labels (list): a label per group

    """

    __slots__ = ('groups', 'labels')

    def __init__(self, groups, labels=None):
        groups = [sorted(set(group)) for group in groups]
        if labels is None:
            labels = ['group{0}'.format(i + 1) for i in range(len(groups))]
        if len(labels) != len(groups):
            raise ParameterError('one label needed per group')
        seen = set()
        for group in groups:
            if seen.intersection(group):
                raise ParameterError('groups overlap',
                                     'shared indices {0}'.format(
                                         sorted(seen.intersection(group))))
            seen.update(group)

        self.groups = groups
        self.labels = list(labels)


def reconstruct_grouping(model, grouping):
    """Reconstruct every group of a :class:`.Grouping`.

    Returns:
        OrderedDict of label to series

    """

    return OrderedDict((label, reconstruct(model, group))
                       for label, group in zip(grouping.labels,
                                               grouping.groups))


def denoise_low_eigen(signal, window, threshold):
    """Remove the low-eigenvalue tail as noise.

    Components are taken from the smallest up while their cumulative share
    stays under the threshold; their reconstruction is the noise.

    Args:
        signal: the values, or an :class:`.AnnualSeries`
        window (int): the embedding window L
        threshold (float): share in (0, 1)

    Returns:
        :class:`.Decomposition`

    """

    threshold = _check_range(threshold, 0, 1, 'threshold',
                             low_open=True, high_open=True)
    x = _as_values(signal)
    model = embed_decompose(x, window)
    shares = scree(model)

    tail = []
    cumulative = 0.0
    for i in range(shares.size - 1, -1, -1):
        if cumulative + shares[i] >= threshold:
            break
        cumulative += shares[i]
        tail.append(i)
    logger.debug('denoise_low_eigen: %d tail components, share %.4f',
                 len(tail), cumulative)

    noise = reconstruct(model, tail)

    return Decomposition(signal, np.zeros(x.size), x - noise, noise,
                         ['ssa-tail({0}, {1:g})'.format(window, threshold)])


__all__ = [
    'default_window',
    'SsaModel',
    'embed_decompose',
    'reconstruct',
    'scree',
    'Grouping',
    'reconstruct_grouping',
    'denoise_low_eigen',
]
