# write analysis results as CSV, JSON and SVG files

import hashlib
import json
import logging

import numpy as np
import pandas as pd

from pycycles import ParameterError
from pycycles.wavelet import coi_mask

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.10g'


def _open_error(path, e):
    return ParameterError('unable to write "{0}"'.format(path), str(e))


def write_frame(path, frame):
    """Write a frame as UTF-8 CSV with a header row and no index."""

    try:
        frame.to_csv(path, index=False, encoding='utf-8',
                     float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as e:
        raise _open_error(path, e)
    logger.debug('write_frame: %d rows to %s', frame.shape[0], path)


def write_columns(path, columns):
    """Write a dict of equal-length columns as CSV, keys in order."""

    write_frame(path, pd.DataFrame(columns))


def write_json(path, value):
    """Write a JSON document with sorted keys and a trailing newline."""

    text = json.dumps(value, indent=2, sort_keys=True, allow_nan=False)
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text + '\n')
    except OSError as e:
        raise _open_error(path, e)


def write_text(path, text):
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    except OSError as e:
        raise _open_error(path, e)


def sha256_file(path):
    """The SHA-256 hex digest of a file's bytes."""

    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 16), b''):
            digest.update(block)

    return digest.hexdigest()


def series_frame(series):
    return series.to_frame()


def decomposition_frame(d, years):
    """One row per year with the source and its three components."""

    return pd.DataFrame({'year': years,
                         'source': d.values,
                         'trend': d.trend,
                         'cycle': d.cycle,
                         'noise': d.noise})


def imf_frame(imfs, years):
    """One column per IMF plus the residual."""

    columns = {'year': years}
    for i, imf in enumerate(imfs.imfs):
        columns['imf{0}'.format(i + 1)] = imf
    columns['residual'] = imfs.residual

    return pd.DataFrame(columns)


def scree_frame(model):
    """Singular values and their share of the total, one row each."""

    sigma = model.singular_values
    share = sigma ** 2 / np.sum(sigma ** 2)

    return pd.DataFrame({'component': np.arange(1, sigma.size + 1),
                         'singular_value': sigma,
                         'share': share,
                         'cumulative_share': np.cumsum(share)})


def periodogram_frame(pgram, model=None):
    """Periodogram rows, with the scaled AR(1) background when given."""

    columns = {'frequency': pgram.frequencies,
               'period': pgram.periods,
               'power': pgram.power}
    if model is not None:
        mean_power = np.mean(pgram.power)
        columns['ar1_background'] = mean_power * \
            model.spectrum(pgram.frequencies, grid=pgram.frequencies)

    return pd.DataFrame(columns)


def _long(grid_object, values):
    # scale x time fields to one row per grid point, time varying fastest
    n_scales, n_times = next(iter(values.values())).shape
    columns = {
        'year': np.tile(grid_object.times, n_scales),
        'scale': np.repeat(grid_object.scales, n_times),
        'period_years': np.repeat(grid_object.periods, n_times),
    }
    for name, field in values.items():
        columns[name] = np.asarray(field).ravel()

    return pd.DataFrame(columns)


def _flag(mask, shape):
    if mask is None:
        return np.zeros(shape, dtype=int)

    return mask.astype(int)


def _in_coi(obj):
    # inside the cone means edge affected
    return (obj.scales[:, np.newaxis] >= obj.coi[np.newaxis, :]).astype(int)


def scalogram_frame(sc):
    """Long format: year, scale, period_years, power, sig90, sig95, in_coi."""

    shape = sc.power.shape

    return _long(sc, {'power': sc.power,
                      'sig90': _flag(sc.siglevels.get(0.90), shape),
                      'sig95': _flag(sc.siglevels.get(0.95), shape),
                      'in_coi': (~coi_mask(sc)).astype(int)})


def cross_frame(c):
    """Long format cross power and phase with masks."""

    shape = c.power.shape

    return _long(c, {'cross_power': c.power,
                     'phase': c.phase,
                     'sig90': _flag(c.siglevels.get(0.90), shape),
                     'sig95': _flag(c.siglevels.get(0.95), shape),
                     'in_coi': _in_coi(c)})


def coherence_frame(m):
    """Long format squared coherence, phase and surrogate significance."""

    fields = {'rsq': m.rsq, 'phase': m.phase}
    if m.threshold is not None:
        fields['threshold'] = m.threshold
        fields['significant'] = m.significant.astype(int)
    fields['in_coi'] = _in_coi(m)

    return _long(m, fields)


def reports_json(reports):
    """Test reports as a list of plain dicts."""

    return [report.to_dict() for report in reports]


__all__ = [
    'write_frame',
    'write_columns',
    'write_json',
    'write_text',
    'sha256_file',
    'series_frame',
    'decomposition_frame',
    'imf_frame',
    'scree_frame',
    'periodogram_frame',
    'scalogram_frame',
    'cross_frame',
    'coherence_frame',
    'reports_json',
]
