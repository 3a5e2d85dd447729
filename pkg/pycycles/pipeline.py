# run the whole analysis chain from a JSON config

import copy
import json
import logging
import os
import shutil
import tempfile
from collections import OrderedDict

import numpy as np

from pycycles import Error, ParameterError, PipelineError, NumericError, \
    DegenerateError, DetrendMethod, DenoiseMethod, ModelVariant, \
    __version__, _check_enum, _check_positive_int, _check_range
from pycycles import export
from pycycles.detrend import DetrendConfig, detrend
from pycycles.emd import sift, denoise_first_imf
from pycycles.ingest import SCHEMAS, load_series
from pycycles.rng import SeededStream
from pycycles.series import acf_band, standardize, trend_regression
from pycycles.spectral import periodogram, fit_ar1
from pycycles.ssa import default_window, embed_decompose, denoise_low_eigen
from pycycles.stattests import run_battery, report_table
from pycycles.svg import scalogram_svg, cross_svg, coherence_svg
from pycycles.wavelet import ScaleGrid, cwt_morlet, global_spectrum
from pycycles.xwavelet import SmoothSpec, cross_wavelet, dump_lowfreq_mask, \
    coherence, coherence_significance

logger = logging.getLogger(__name__)

SEED_VARIABLE = 'PYCYCLES_SEED'

MANIFEST_NAME = 'manifest.json'

STATIONARITY_TESTS = ('kpss', 'adf')
LINEARITY_TESTS = ('keenan', 'tsay', 'mcleod_li')


class RunConfig(object):
    """Everything a pipeline run needs, read from flat JSON.

    ``inputs`` is a list of ``{"path": ..., "schema": ..., "label": ...,
    "unit": ..., "denoise": ...}`` objects, only ``path`` being required.
    A per-input ``denoise`` overrides ``denoise_method`` for that series,
    so ``"none"`` keeps the first mode of a series whose short-period
    variability is signal. ``pairs`` is a list of ``[label_x, label_y]``
    lists. Every other key is a scalar and :attr:`DEFAULTS` lists them all
    with their default values.

    Raises:
        :class:`.ParameterError` for unknown keys and bad values

    """

    DEFAULTS = OrderedDict([
        ('inputs', []),
        ('pairs', []),
        ('output_dir', 'pycycles-out'),
        ('seed', 0),
        ('detrend_method', DetrendMethod.SPLINE),
        ('spline_stiffness', 0.67),
        ('friedman_bass', 0.0),
        ('test_variant', ModelVariant.NODRIFT_NOTREND),
        ('ar_order', 2),
        ('max_lag', 10),
        ('denoise_method', DenoiseMethod.EMD),
        ('emd_epsilon', 0.05),
        ('emd_max_sifts', 50),
        ('emd_max_imfs', 10),
        ('ssa_window', None),
        ('ssa_threshold', 0.05),
        ('omega0', 6.0),
        ('dj', 0.05),
        ('s0', 2.0),
        ('cutoff_period', None),
        ('smooth_time', 1.0),
        ('smooth_scale', 0.6),
        ('coherence_surrogates', 300),
        ('workers', 1),
    ])

    def __init__(self, **kwargs):
        unknown = sorted(set(kwargs) - set(self.DEFAULTS))
        if unknown:
            raise ParameterError('unknown config keys',
                                 ', '.join(unknown))
        values = copy.deepcopy(self.DEFAULTS)
        values.update(kwargs)
        self._values = values
        self._validate()

    def __getattr__(self, name):
        try:
            return self.__dict__['_values'][name]
        except KeyError:
            raise AttributeError(name)

    def __repr__(self):
        return 'RunConfig({0} inputs, {1} pairs)'.format(
            len(self.inputs), len(self.pairs))

    def _validate(self):
        v = self._values

        inputs = []
        for item in v['inputs']:
            if isinstance(item, str):
                item = {'path': item}
            if not isinstance(item, dict) or 'path' not in item:
                raise ParameterError('each input needs a path',
                                     'got {0!r}'.format(item))
            extra = sorted(set(item) - {'path', 'schema', 'label', 'unit',
                                        'denoise'})
            if extra:
                raise ParameterError('unknown input keys', ', '.join(extra))
            schema = item.get('schema', 'plain')
            if schema not in SCHEMAS:
                raise ParameterError('unknown schema "{0}"'.format(schema))
            denoise = item.get('denoise')
            if denoise is not None:
                _check_enum(denoise, DenoiseMethod, 'denoise')
            path = str(item['path'])
            label = item.get('label') or \
                os.path.splitext(os.path.basename(path))[0]
            inputs.append(OrderedDict([('path', path),
                                       ('schema', schema),
                                       ('label', label),
                                       ('unit', item.get('unit', '')),
                                       ('denoise', denoise)]))
        labels = [item['label'] for item in inputs]
        if len(set(labels)) != len(labels):
            raise ParameterError('input labels must be unique',
                                 ', '.join(labels))
        v['inputs'] = inputs

        pairs = []
        for pair in v['pairs']:
            if len(pair) != 2 or any(label not in labels for label in pair):
                raise ParameterError('pairs must name two input labels',
                                     'got {0!r}'.format(pair))
            pairs.append(list(pair))
        v['pairs'] = pairs

        seed = v['seed']
        if isinstance(seed, bool) or not isinstance(seed, int) or \
                not 0 <= seed < 2 ** 64:
            raise ParameterError('seed must be an integer in [0, 2^64)',
                                 'got {0!r}'.format(seed))

        DetrendConfig(v['detrend_method'], v['spline_stiffness'],
                      v['friedman_bass'])
        _check_enum(v['test_variant'], ModelVariant, 'test_variant')
        _check_enum(v['denoise_method'], DenoiseMethod, 'denoise_method')
        for name in ('ar_order', 'max_lag', 'emd_max_sifts', 'emd_max_imfs',
                     'workers'):
            _check_positive_int(v[name], name)
        if v['ssa_window'] is not None:
            _check_positive_int(v['ssa_window'], 'ssa_window')
        _check_range(v['emd_epsilon'], 0, 1, 'emd_epsilon',
                     low_open=True, high_open=True)
        _check_range(v['ssa_threshold'], 0, 1, 'ssa_threshold',
                     low_open=True, high_open=True)
        _check_range(v['omega0'], 5, np.inf, 'omega0')
        _check_range(v['dj'], 0, np.inf, 'dj', low_open=True)
        _check_range(v['s0'], 2, np.inf, 's0')
        _check_range(v['smooth_time'], 0, np.inf, 'smooth_time')
        _check_range(v['smooth_scale'], 0, np.inf, 'smooth_scale')
        if v['cutoff_period'] is not None:
            _check_range(v['cutoff_period'], 0, np.inf, 'cutoff_period',
                         low_open=True)
        if isinstance(v['coherence_surrogates'], bool) or \
                not isinstance(v['coherence_surrogates'], int) or \
                v['coherence_surrogates'] < 0:
            raise ParameterError('coherence_surrogates must be 0 or more')

    @staticmethod
    def from_dict(values, base_dir=None):
        """Make a config, resolving relative paths against base_dir."""

        if not isinstance(values, dict):
            raise ParameterError('config must be a JSON object')
        values = copy.deepcopy(values)
        if base_dir is not None:
            inputs = values.get('inputs', [])
            for i, item in enumerate(inputs):
                if isinstance(item, str):
                    inputs[i] = os.path.join(base_dir, item)
                elif isinstance(item, dict) and 'path' in item:
                    item['path'] = os.path.join(base_dir, item['path'])
            if 'output_dir' in values:
                values['output_dir'] = os.path.join(base_dir,
                                                    values['output_dir'])

        return RunConfig(**values)

    @staticmethod
    def from_file(path):
        """Read a flat JSON config file.

        Relative input paths and the output directory are taken relative to
        the directory holding the file.

        """

        try:
            with open(path, encoding='utf-8') as f:
                values = json.load(f)
        except OSError as e:
            raise ParameterError('unable to read config "{0}"'.format(path),
                                 str(e))
        except ValueError as e:
            raise ParameterError('config "{0}" is not JSON'.format(path),
                                 str(e))

        return RunConfig.from_dict(values,
                                   os.path.dirname(os.path.abspath(path)))

    @staticmethod
    def from_manifest(path):
        """The config a previous run recorded in its manifest."""

        try:
            with open(path, encoding='utf-8') as f:
                manifest = json.load(f)
        except (OSError, ValueError) as e:
            raise ParameterError('unable to read manifest "{0}"'.format(path),
                                 str(e))
        if 'config' not in manifest:
            raise ParameterError('"{0}" is not a run manifest'.format(path))

        return RunConfig.from_dict(manifest['config'])

    def to_dict(self):
        return copy.deepcopy(self._values)

    def with_seed(self, seed):
        values = self.to_dict()
        values['seed'] = seed

        return RunConfig(**values)

    def with_environment(self, environ=None):
        """Apply a seed from the ``PYCYCLES_SEED`` environment variable."""

        environ = os.environ if environ is None else environ
        text = environ.get(SEED_VARIABLE)
        if text is None:
            return self
        try:
            seed = int(text)
        except ValueError:
            raise ParameterError('{0} must be an integer'.format(
                SEED_VARIABLE), 'got {0!r}'.format(text))
        logger.info('seed %d from %s', seed, SEED_VARIABLE)

        return self.with_seed(seed)

    def check_files(self):
        """Raise :class:`.ParameterError` naming the first missing input."""

        for item in self.inputs:
            if not os.path.isfile(item['path']):
                raise ParameterError('missing input file',
                                     item['path'])


class RunManifest(object):
    """What a pipeline run read, how, and what it wrote.

    Attributes:
        config (dict): every effective parameter
        inputs (list): input path, schema and SHA-256 per series
        outputs (dict): output path, relative to the output directory, to
            its SHA-256
        output_dir (str): where the outputs are

    """

    __slots__ = ('config', 'inputs', 'outputs', 'output_dir')

    def __init__(self, config, inputs, outputs, output_dir):
        self.config = config
        self.inputs = inputs
        self.outputs = outputs
        self.output_dir = output_dir

    def __repr__(self):
        return 'RunManifest({0} outputs in {1!r})'.format(
            len(self.outputs), self.output_dir)

    def to_dict(self):
        return OrderedDict([('version', __version__),
                            ('seed', self.config['seed']),
                            ('config', self.config),
                            ('inputs', self.inputs),
                            ('outputs', self.outputs)])

    @staticmethod
    def load(path):
        with open(path, encoding='utf-8') as f:
            values = json.load(f)

        return RunManifest(values['config'], values['inputs'],
                           values['outputs'], os.path.dirname(path))


class _Run(object):
    # one pipeline run writing into a staging directory

    def __init__(self, config, staging):
        self.config = config
        self.staging = staging
        self.written = []
        self.stage = 'setup'

    def path(self, *parts):
        path = os.path.join(self.staging, *parts)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        self.written.append('/'.join(parts))

        return path

    def analyze(self, item, grid_options):
        c = self.config
        label = item['label']

        self.stage = 'ingest:' + label
        series = load_series(item['path'], item['schema'], label,
                             item['unit'])
        export.write_frame(self.path(label, 'series.csv'),
                           export.series_frame(series))
        years = series.years

        self.stage = 'detrend:' + label
        trend_split = detrend(series, DetrendConfig(c.detrend_method,
                                                    c.spline_stiffness,
                                                    c.friedman_bass))
        export.write_frame(self.path(label, 'detrend.csv'),
                           export.decomposition_frame(trend_split, years))
        detrended = series.with_values(trend_split.values -
                                       trend_split.trend)

        self.stage = 'tests:' + label
        reports = run_battery(detrended, c.test_variant, c.ar_order,
                              c.max_lag)
        export.write_json(self.path(label, 'tests.json'),
                          export.reports_json(reports))

        self.stage = 'emd:' + label
        modes = sift(detrended, c.emd_epsilon, c.emd_max_imfs,
                     c.emd_max_sifts)
        export.write_frame(self.path(label, 'emd_imfs.csv'),
                           export.imf_frame(modes, years))
        if len(modes):
            first = modes.imfs[0]
            noise_model = fit_ar1(first)
            pgram = periodogram(first)
            export.write_frame(self.path(label, 'imf1_periodogram.csv'),
                               export.periodogram_frame(pgram, noise_model))
            export.write_json(self.path(label, 'imf1_noise.json'),
                              _noise_report(first, noise_model))

        window = c.ssa_window or default_window(len(series))
        self.stage = 'ssa:' + label
        model = embed_decompose(detrended, window)
        export.write_frame(self.path(label, 'ssa_scree.csv'),
                           export.scree_frame(model))

        self.stage = 'denoise:' + label
        method = item['denoise'] or c.denoise_method
        if method == DenoiseMethod.EMD:
            split = denoise_first_imf(detrended, c.emd_epsilon,
                                      c.emd_max_sifts)
        elif method == DenoiseMethod.SSA:
            split = denoise_low_eigen(detrended, window, c.ssa_threshold)
        else:
            split = None
        if split is not None:
            export.write_frame(self.path(label, 'denoise.csv'),
                               export.decomposition_frame(split, years))
            cleaned = series.with_values(split.cycle)
        else:
            cleaned = detrended

        self.stage = 'wavelet:' + label
        standardized = series.with_values(standardize(cleaned))
        grid = ScaleGrid.for_length(len(series), **grid_options)
        sc = cwt_morlet(standardized, grid, c.omega0).with_significance()
        export.write_frame(self.path(label, 'scalogram.csv'),
                           export.scalogram_frame(sc))
        export.write_text(self.path(label, 'scalogram.svg'),
                          scalogram_svg(sc))
        spectrum = global_spectrum(sc)
        export.write_columns(self.path(label, 'global_spectrum.csv'),
                             OrderedDict([
                                 ('period_years', spectrum.periods),
                                 ('power', spectrum.power),
                                 ('points', spectrum.counts),
                                 ('threshold95', spectrum.threshold),
                                 ('sig95', spectrum.significant.astype(int)),
                             ]))

        return reports, sc, trend_split.trend

    def compare(self, x, y, index, trends=None):
        c = self.config
        name = '{0}__{1}'.format(x.label, y.label)

        self.stage = 'xwavelet:' + name
        if x.times.size != y.times.size or np.any(x.times != y.times):
            raise ParameterError('paired series cover different years',
                                 '{0} and {1}'.format(x.label, y.label))
        cross = cross_wavelet(x, y)
        if c.cutoff_period is not None:
            cross = dump_lowfreq_mask(cross, c.cutoff_period)
        export.write_frame(self.path('pairs', name, 'cross.csv'),
                           export.cross_frame(cross))
        export.write_text(self.path('pairs', name, 'cross.svg'),
                          cross_svg(cross))

        if trends is not None:
            self.stage = 'trends:' + name
            export.write_json(
                self.path('pairs', name, 'trend_regression.json'),
                _trend_report(*trends))

        self.stage = 'coherence:' + name
        smooth = SmoothSpec(c.smooth_time, c.smooth_scale)
        rsq = coherence(x, y, smooth)
        if c.coherence_surrogates > 0:
            stream = SeededStream(c.seed).child(index)
            threshold = coherence_significance(
                x, y, smooth, c.coherence_surrogates, 0.95, stream,
                c.workers)
            rsq = rsq.with_threshold(threshold, 0.95)
        export.write_frame(self.path('pairs', name, 'coherence.csv'),
                           export.coherence_frame(rsq))
        export.write_text(self.path('pairs', name, 'coherence.svg'),
                          coherence_svg(rsq))


def _noise_report(imf, model):
    band = acf_band(imf.size)

    return OrderedDict([
        ('alpha', model.alpha),
        ('clamped', model.clamped),
        ('acf_band95', band),
        ('noise_model', 'red' if model.alpha > band else 'white'),
    ])


def _trend_report(a, b):
    try:
        fit = trend_regression(a, b)
    except DegenerateError as e:
        return OrderedDict([('slope', None), ('intercept', None),
                            ('r2', None), ('reason', e.message)])

    return OrderedDict([('slope', float(fit.slope)),
                        ('intercept', float(fit.intercept)),
                        ('r2', float(fit.r2))])


def _check_output(output_dir):
    # only an empty directory or a previous run may be replaced
    if os.path.isdir(output_dir):
        existing = os.listdir(output_dir)
        if existing and MANIFEST_NAME not in existing:
            raise ParameterError('output directory is not a previous run',
                                 output_dir)
    elif os.path.exists(output_dir):
        raise ParameterError('output path is not a directory', output_dir)


def _replace_output(staging, output_dir):
    _check_output(output_dir)
    if os.path.exists(output_dir):
        shutil.rmtree(output_dir)
    os.replace(staging, output_dir)


def run_pipeline(config):
    """Run the analysis chain and write every artifact.

    For each input: ingest, detrend, the test battery on the detrended
    series, EMD with a noise report on the first mode, the SSA scree,
    denoising, standardization and a Morlet scalogram with red-noise
    significance. Then cross-wavelet, trend regression and coherence for
    each configured pair, and the stationarity and linearity tables.

    Outputs are written to a staging directory beside the output directory
    and moved into place only when every stage succeeds. A previous run in
    the output directory is replaced.

    Args:
        config (RunConfig): the run

    Returns:
        :class:`.RunManifest`

    Raises:
        :class:`.ParameterError` for a missing input or an output
        directory holding something other than a previous run,
        :class:`.PipelineError` naming the stage that failed

    """

    config.check_files()
    output_dir = os.path.abspath(config.output_dir)
    _check_output(output_dir)
    parent = os.path.dirname(output_dir)
    os.makedirs(parent, exist_ok=True)
    staging = tempfile.mkdtemp(prefix='.pycycles-', dir=parent)
    logger.info('staging run in %s', staging)

    run = _Run(config, staging)
    grid_options = {'dj': config.dj, 's0': config.s0}
    try:
        reports = OrderedDict()
        scalograms = OrderedDict()
        trends = OrderedDict()
        for item in config.inputs:
            label = item['label']
            reports[label], scalograms[label], trends[label] = \
                run.analyze(item, grid_options)
            logger.info('analyzed %s', label)

        for index, (a, b) in enumerate(config.pairs):
            run.compare(scalograms[a], scalograms[b], index,
                        (trends[a], trends[b]))
            logger.info('compared %s with %s', a, b)

        run.stage = 'tables'
        if reports:
            export.write_frame(
                run.path('stationarity_table.csv'),
                report_table(reports, STATIONARITY_TESTS).reset_index())
            export.write_frame(
                run.path('linearity_table.csv'),
                report_table(reports, LINEARITY_TESTS).reset_index())

        inputs = [OrderedDict([('path', item['path']),
                               ('schema', item['schema']),
                               ('label', item['label']),
                               ('sha256', export.sha256_file(item['path']))])
                  for item in config.inputs]
        outputs = OrderedDict(
            (name, export.sha256_file(os.path.join(staging, name)))
            for name in sorted(run.written))
        manifest = RunManifest(config.to_dict(), inputs, outputs, output_dir)
        export.write_json(os.path.join(staging, MANIFEST_NAME),
                          manifest.to_dict())
        _replace_output(staging, output_dir)
    except Error as e:
        shutil.rmtree(staging, ignore_errors=True)
        if isinstance(e, PipelineError) or run.stage == 'setup':
            raise
        raise PipelineError(run.stage, e)
    except (ArithmeticError, np.linalg.LinAlgError) as e:
        shutil.rmtree(staging, ignore_errors=True)
        raise PipelineError(run.stage,
                            NumericError(str(e) or type(e).__name__))
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise

    logger.info('wrote %d outputs to %s', len(outputs), output_dir)

    return manifest


__all__ = [
    'SEED_VARIABLE',
    'MANIFEST_NAME',
    'RunConfig',
    'RunManifest',
    'run_pipeline',
]
