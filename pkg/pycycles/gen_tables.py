#!/usr/bin/env python

# regenerate tables.py by Monte Carlo simulation of the null distributions
#
# run with:
#
#   python -m pycycles.gen_tables --replications 100000 > pycycles/tables.py

import argparse
import logging

import numpy as np

from pycycles import ModelVariant, SeededStream
from pycycles import tables
from pycycles.stattests import _adf_statistic, kpss_test

logger = logging.getLogger(__name__)

SIZES = (25, 50, 100, 250, 500)


def simulate_adf(n, variant, replications, stream):
    statistics = np.empty(replications)
    for i in range(replications):
        walk = np.cumsum(stream.child(i).normal(n))
        statistics[i], _ = _adf_statistic(walk, variant)

    return np.quantile(statistics, tables.PROBABILITIES)


def simulate_kpss(n, variant, replications, stream):
    statistics = np.empty(replications)
    for i in range(replications):
        noise = stream.child(i).normal(n)
        statistics[i] = kpss_test(noise, variant).statistic

    return np.quantile(statistics, [1 - p for p in tables.PROBABILITIES])


def _format_table(name, rows):
    lines = ['    {0!r}: {{'.format(name),
             "        'n': {0!r},".format(SIZES),
             "        'critical': ("]
    for row in rows:
        lines.append('            ({0}),'.format(
            ', '.join('{0:.3f}'.format(v) for v in row)))
    lines += ['        ),', '    },']

    return lines


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('--replications', type=int, default=100000)
    parser.add_argument('--seed', type=int, default=20170101)
    args = parser.parse_args()

    root = SeededStream(args.seed)
    out = ['# critical values for the stationarity tests -- '
           'regenerate with gen_tables.py',
           '#',
           '# Monte Carlo percentiles, {0} replications per size.'.format(
               args.replications),
           '',
           'PROBABILITIES = {0!r}'.format(tables.PROBABILITIES),
           '',
           'ADF = {']
    variants = (ModelVariant.NODRIFT_NOTREND, ModelVariant.DRIFT,
                ModelVariant.DRIFT_TREND)
    for v, variant in enumerate(variants):
        rows = [simulate_adf(n, variant, args.replications,
                             root.child(v).child(n))
                for n in SIZES]
        out += _format_table(variant, rows)
    out += ['}', '', 'KPSS = {']
    for v, (name, variant) in enumerate((('level', ModelVariant.DRIFT),
                                         ('trend',
                                          ModelVariant.DRIFT_TREND))):
        rows = [simulate_kpss(n, variant, args.replications,
                              root.child(10 + v).child(n))
                for n in SIZES]
        out += _format_table(name, rows)
    out += ['}']

    print('\n'.join(out))


if __name__ == '__main__':
    main()
