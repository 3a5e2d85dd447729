# vim: set fileencoding=utf-8 :
# test helpers
import os
import tempfile

import numpy as np
import pytest

import pycycles

SSN_FILE = os.environ.get('PYCYCLES_SSN_FILE')
WEMO_FILE = os.environ.get('PYCYCLES_WEMO_FILE')

# a 1967-2017 yearly record
RECORD_LENGTH = 51


# make a temp filename with the specified suffix and in the
# specified directory
def temp_filename(directory, suffix):
    temp_name = next(tempfile._get_candidate_names())
    filename = os.path.join(directory, temp_name + suffix)

    return filename


# use as @skip_if_no('PYCYCLES_SSN_FILE')
def skip_if_no(variable):
    return pytest.mark.skipif(not os.environ.get(variable),
                              reason=('{} not set, skipping test'.
                                      format(variable)))


# write a plain year,value CSV and return its path
def write_plain_csv(directory, values, start_year=1950, name=None):
    if name is None:
        filename = temp_filename(str(directory), '.csv')
    else:
        filename = os.path.join(str(directory), name)
    lines = ['year,value']
    for i, value in enumerate(values):
        lines.append('{0},{1!r}'.format(start_year + i, float(value)))
    with open(filename, 'w') as f:
        f.write('\n'.join(lines) + '\n')

    return filename


def tone(n, period, amplitude=1.0, phase=0.0):
    return pycycles.gen_sum_of_tones(n, [(period, amplitude, phase)])


def white(n, seed, key=0):
    return pycycles.SeededStream(seed).child(key).normal(n)


def annual(values, start_year=1950, label='test'):
    return pycycles.AnnualSeries(start_year, values, label=label)


# direct O(N^2) transforms used as oracles
def slow_dft(x):
    n = len(x)
    t = np.arange(n)
    return np.array([np.sum(x * np.exp(-2j * np.pi * k * t / n))
                     for k in range(n)])


def slow_morlet(x, scale, omega0=6.0, dt=1.0):
    n = len(x)
    t = np.arange(n) * dt
    out = np.empty(n, dtype=complex)
    for k in range(n):
        u = (t - t[k]) / scale
        psi = np.pi ** -0.25 * np.exp(1j * omega0 * u - u ** 2 / 2)
        out[k] = np.sum(x * np.sqrt(dt / scale) * np.conj(psi))

    return out


# test a pair of things which can be lists for approx. equality
def assert_almost_equal_objects(a, b, threshold=0.0001, msg=''):
    assert all([pytest.approx(x, abs=threshold) == y
                for x, y in zip(a, b)]), msg
