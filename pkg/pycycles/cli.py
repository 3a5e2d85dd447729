# the pycycles command-line interface

import argparse
import logging
import os
import sys
from collections import OrderedDict

import numpy as np

from pycycles import Error, ParameterError, NumericError, DetrendMethod, \
    ModelVariant, SCHEMAS, __version__, _enum_values
from pycycles import export
from pycycles.detrend import DetrendConfig, detrend, DEFAULT_STIFFNESS, \
    DEFAULT_BASS
from pycycles.emd import sift, DEFAULT_EPSILON, DEFAULT_MAX_SIFTS, \
    DEFAULT_MAX_IMFS
from pycycles.ingest import AnnualSeries, load_series
from pycycles.pipeline import SEED_VARIABLE, RunConfig, run_pipeline
from pycycles.rng import SeededStream, gen_ar1, gen_random_walk, \
    gen_sum_of_tones
from pycycles.spectral import periodogram, fit_ar1
from pycycles.ssa import default_window, embed_decompose, denoise_low_eigen
from pycycles.stattests import run_battery, report_table
from pycycles.svg import scalogram_svg, cross_svg, coherence_svg
from pycycles.wavelet import DEFAULT_OMEGA0, DEFAULT_DJ, ScaleGrid, \
    cwt_morlet, global_spectrum
from pycycles.xwavelet import DEFAULT_SCALE_WIDTH, SmoothSpec, \
    cross_wavelet, dump_lowfreq_mask, coherence, coherence_significance

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(levelname)s:%(name)s: %(message)s'


def _seed(explicit, environ=None):
    # an explicit flag wins over the environment, which wins over 0
    if explicit is not None:
        return explicit
    environ = os.environ if environ is None else environ
    text = environ.get(SEED_VARIABLE)
    if text is None:
        return 0
    try:
        return int(text)
    except ValueError:
        raise ParameterError('{0} must be an integer'.format(SEED_VARIABLE),
                             'got {0!r}'.format(text))


def _out(args, name):
    os.makedirs(args.out, exist_ok=True)

    return os.path.join(args.out, name)


def _read(args, path=None):
    return load_series(path or args.input, args.schema, args.label,
                       args.unit)


def _grid(args, series):
    return ScaleGrid.for_length(len(series), dj=args.dj, s0=args.s0)


def cmd_ingest(args):
    series = _read(args)
    export.write_frame(_out(args, 'series.csv'), export.series_frame(series))
    print('{0}: {1}-{2}, {3} years'.format(series.label, series.start_year,
                                           series.end_year, len(series)))


def cmd_detrend(args):
    series = _read(args)
    split = detrend(series, DetrendConfig(args.method, args.stiffness,
                                          args.bass))
    export.write_frame(_out(args, 'detrend.csv'),
                       export.decomposition_frame(split, series.years))


def cmd_test(args):
    series = _read(args)
    if args.detrend:
        split = detrend(series, DetrendConfig(args.method, args.stiffness,
                                              args.bass))
        series = series.with_values(split.values - split.trend)
    reports = run_battery(series, args.variant, args.ar_order, args.max_lag)
    export.write_json(_out(args, 'tests.json'), export.reports_json(reports))
    print(report_table({series.label: reports}).to_string())


def cmd_emd(args):
    series = _read(args)
    modes = sift(series, args.epsilon, args.max_imfs, args.max_sifts)
    export.write_frame(_out(args, 'emd_imfs.csv'),
                       export.imf_frame(modes, series.years))
    if len(modes):
        model = fit_ar1(modes.imfs[0])
        export.write_frame(_out(args, 'imf1_periodogram.csv'),
                           export.periodogram_frame(
                               periodogram(modes.imfs[0]), model))
        print('{0} modes, first mode AR(1) alpha {1:.3f}'.format(
            len(modes), model.alpha))
    else:
        print('no modes')


def cmd_ssa(args):
    series = _read(args)
    window = args.window or default_window(len(series))
    model = embed_decompose(series, window)
    export.write_frame(_out(args, 'ssa_scree.csv'),
                       export.scree_frame(model))
    split = denoise_low_eigen(series, window, args.threshold)
    export.write_frame(_out(args, 'denoise.csv'),
                       export.decomposition_frame(split, series.years))


def cmd_wavelet(args):
    series = _read(args)
    sc = cwt_morlet(series, _grid(args, series), args.omega0)
    sc = sc.with_significance()
    export.write_frame(_out(args, 'scalogram.csv'),
                       export.scalogram_frame(sc))
    export.write_text(_out(args, 'scalogram.svg'), scalogram_svg(sc))
    spectrum = global_spectrum(sc)
    export.write_columns(_out(args, 'global_spectrum.csv'), OrderedDict([
        ('period_years', spectrum.periods),
        ('power', spectrum.power),
        ('sig95', spectrum.significant.astype(int)),
    ]))


def cmd_xwavelet(args):
    x = _read(args, args.input)
    y = load_series(args.other, args.schema, None, args.unit)
    if x.start_year != y.start_year or len(x) != len(y):
        raise ParameterError('series cover different years',
                             '{0}-{1} and {2}-{3}'.format(
                                 x.start_year, x.end_year,
                                 y.start_year, y.end_year))
    grid = _grid(args, x)
    sx = cwt_morlet(x, grid, args.omega0)
    sy = cwt_morlet(y, grid, args.omega0)

    cross = cross_wavelet(sx, sy)
    if args.cutoff_period is not None:
        cross = dump_lowfreq_mask(cross, args.cutoff_period)
    export.write_frame(_out(args, 'cross.csv'), export.cross_frame(cross))
    export.write_text(_out(args, 'cross.svg'), cross_svg(cross))

    smooth = SmoothSpec(args.smooth_time, args.smooth_scale)
    rsq = coherence(sx, sy, smooth)
    if args.surrogates > 0:
        stream = SeededStream(_seed(args.seed))
        rsq = rsq.with_threshold(
            coherence_significance(sx, sy, smooth, args.surrogates, 0.95,
                                   stream, args.workers), 0.95)
    export.write_frame(_out(args, 'coherence.csv'),
                       export.coherence_frame(rsq))
    export.write_text(_out(args, 'coherence.svg'), coherence_svg(rsq))


def cmd_pipeline(args):
    if args.from_manifest:
        config = RunConfig.from_manifest(args.from_manifest)
    elif args.config:
        config = RunConfig.from_file(args.config)
    else:
        raise ParameterError('pipeline needs a config or --from-manifest')
    if args.seed is not None:
        config = config.with_seed(args.seed)
    elif not args.from_manifest:
        config = config.with_environment()

    manifest = run_pipeline(config)
    print('wrote {0} outputs to {1}'.format(len(manifest.outputs),
                                            manifest.output_dir))


def cmd_synth(args):
    stream = SeededStream(_seed(args.seed))
    if args.kind == 'tones':
        tones = args.tone or [(11.0, 1.0, 0.0)]
        values = gen_sum_of_tones(args.length, tones, args.noise_sd, stream)
    elif args.kind == 'ar1':
        values = gen_ar1(args.length, args.alpha, args.sigma, stream)
    else:
        values = gen_random_walk(args.length, args.sigma, stream)

    series = AnnualSeries(args.start_year, values, label=args.kind)
    directory = os.path.dirname(args.output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    export.write_frame(args.output, series.to_frame())


def _add_input(parser):
    parser.add_argument('input', help='the data file')
    parser.add_argument('--schema', default='plain',
                        choices=sorted(SCHEMAS),
                        help='the column layout of the file')
    parser.add_argument('--label', help='series label, the file stem '
                        'by default')
    parser.add_argument('--unit', default='', help='an opaque unit string')
    parser.add_argument('--out', default='.',
                        help='directory to write results to')


def _add_detrend(parser):
    parser.add_argument('--method', default=DetrendMethod.SPLINE,
                        choices=_enum_values(DetrendMethod),
                        help='how to estimate the trend')
    parser.add_argument('--stiffness', type=float,
                        default=DEFAULT_STIFFNESS,
                        help='spline stiffness in (0, 1]')
    parser.add_argument('--bass', type=float, default=DEFAULT_BASS,
                        help='supersmoother bass in [0, 10]')


def _add_grid(parser):
    parser.add_argument('--omega0', type=float, default=DEFAULT_OMEGA0,
                        help='Morlet centre frequency, at least 5')
    parser.add_argument('--dj', type=float, default=DEFAULT_DJ,
                        help='octaves between scales')
    parser.add_argument('--s0', type=float, default=2.0,
                        help='smallest scale in years')


def build_parser():
    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog='pycycles',
        description='Cycle analysis of annual time series.',
        formatter_class=formatter)
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for info, -vv for debug messages')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('ingest', formatter_class=formatter,
                            help='read a data file into an annual series')
    _add_input(p)
    p.set_defaults(func=cmd_ingest)

    p = commands.add_parser('detrend', formatter_class=formatter,
                            help='split off the trend')
    _add_input(p)
    _add_detrend(p)
    p.set_defaults(func=cmd_detrend)

    p = commands.add_parser('test', formatter_class=formatter,
                            help='stationarity and linearity tests')
    _add_input(p)
    _add_detrend(p)
    p.add_argument('--detrend', action='store_true',
                   help='detrend before testing')
    p.add_argument('--variant', default=ModelVariant.NODRIFT_NOTREND,
                   choices=_enum_values(ModelVariant),
                   help='deterministic terms of the unit-root tests')
    p.add_argument('--ar-order', type=int, default=2,
                   help='AR order for Keenan and Tsay')
    p.add_argument('--max-lag', type=int, default=10,
                   help='lags for McLeod-Li')
    p.set_defaults(func=cmd_test)

    p = commands.add_parser('emd', formatter_class=formatter,
                            help='empirical mode decomposition')
    _add_input(p)
    p.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON,
                   help='sifting tolerance')
    p.add_argument('--max-sifts', type=int, default=DEFAULT_MAX_SIFTS,
                   help='most sifting iterations per mode')
    p.add_argument('--max-imfs', type=int, default=DEFAULT_MAX_IMFS,
                   help='most modes to extract')
    p.set_defaults(func=cmd_emd)

    p = commands.add_parser('ssa', formatter_class=formatter,
                            help='singular spectrum analysis')
    _add_input(p)
    p.add_argument('--window', type=int,
                   help='embedding window, min(N // 2, 25) by default')
    p.add_argument('--threshold', type=float, default=0.05,
                   help='share of the spectrum removed as noise')
    p.set_defaults(func=cmd_ssa)

    p = commands.add_parser('wavelet', formatter_class=formatter,
                            help='Morlet scalogram with significance')
    _add_input(p)
    _add_grid(p)
    p.set_defaults(func=cmd_wavelet)

    p = commands.add_parser('xwavelet', formatter_class=formatter,
                            help='cross-wavelet power and coherence')
    _add_input(p)
    p.add_argument('other', help='the second data file')
    _add_grid(p)
    p.add_argument('--cutoff-period', type=float,
                   help='zero cross power at longer periods')
    p.add_argument('--smooth-time', type=float, default=1.0,
                   help='Gaussian time smoothing, in units of scale')
    p.add_argument('--smooth-scale', type=float,
                   default=DEFAULT_SCALE_WIDTH,
                   help='boxcar scale smoothing, in octaves')
    p.add_argument('--surrogates', type=int, default=0,
                   help='AR(1) surrogate pairs for coherence significance')
    p.add_argument('--workers', type=int, default=1,
                   help='threads for surrogates')
    p.add_argument('--seed', type=int,
                   help='random seed, {0} or 0 by default'.format(
                       SEED_VARIABLE))
    p.set_defaults(func=cmd_xwavelet)

    p = commands.add_parser('pipeline', formatter_class=formatter,
                            help='run the whole chain from a JSON config',
                            epilog='an input with "denoise": "none" '
                            'keeps its first EMD mode')
    p.add_argument('config', nargs='?', help='the JSON config file')
    p.add_argument('--from-manifest',
                   help='rerun the config recorded in a manifest')
    p.add_argument('--seed', type=int,
                   help='override the config and {0} seed'.format(
                       SEED_VARIABLE))
    p.set_defaults(func=cmd_pipeline)

    p = commands.add_parser('synth', formatter_class=formatter,
                            help='write a synthetic annual series')
    p.add_argument('output', help='the CSV file to write')
    p.add_argument('--kind', default='tones',
                   choices=('tones', 'ar1', 'walk'),
                   help='what to simulate')
    p.add_argument('--length', type=int, default=51, help='years')
    p.add_argument('--start-year', type=int, default=1950,
                   help='the first year')
    p.add_argument('--tone', type=float, nargs=3, action='append',
                   metavar=('PERIOD', 'AMPLITUDE', 'PHASE'),
                   help='add a tone, period 11 amplitude 1 by default')
    p.add_argument('--noise-sd', type=float, default=0.0,
                   help='white noise added to tones')
    p.add_argument('--alpha', type=float, default=0.5, help='AR(1) alpha')
    p.add_argument('--sigma', type=float, default=1.0,
                   help='innovation standard deviation')
    p.add_argument('--seed', type=int,
                   help='random seed, {0} or 0 by default'.format(
                       SEED_VARIABLE))
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None):
    """Run the command line, returning the process exit code.

    Exit codes are 0 on success, 2 for bad parameters or config, 3 for bad
    data and 4 for numeric failure.

    """

    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                      logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT)

    try:
        args.func(args)
    except Error as e:
        logger.debug('command failed', exc_info=True)
        sys.stderr.write('pycycles: error: {0}\n'.format(e))
        return e.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as e:
        logger.debug('command failed', exc_info=True)
        sys.stderr.write('pycycles: numeric error: {0}\n'.format(e))
        return NumericError.exit_code

    return 0


if __name__ == '__main__':
    sys.exit(main())
