# vim: set fileencoding=utf-8 :
import json
import os

import numpy as np
import pandas as pd
import pytest

import pycycles
from pycycles.cli import main, _seed
from helpers import RECORD_LENGTH, tone, white, write_plain_csv

SERIES_OUTPUTS = [
    'series.csv', 'detrend.csv', 'tests.json', 'emd_imfs.csv',
    'imf1_periodogram.csv', 'imf1_noise.json', 'ssa_scree.csv',
    'denoise.csv', 'scalogram.csv', 'scalogram.svg', 'global_spectrum.csv',
]

PAIR_OUTPUTS = ['cross.csv', 'cross.svg', 'trend_regression.json',
                'coherence.csv', 'coherence.svg']


def _inputs(directory):
    n = RECORD_LENGTH
    a = tone(n, 11) + 0.3 * white(n, 1, 0)
    b = tone(n, 11, 1.0, 1.0) + 0.3 * white(n, 1, 1)
    return (write_plain_csv(directory, a, name='a.csv'),
            write_plain_csv(directory, b, name='b.csv'))


def _config(directory, **kwargs):
    a, b = _inputs(directory)
    values = dict(inputs=[{'path': a, 'label': 'a'},
                          {'path': b, 'label': 'b'}],
                  pairs=[['a', 'b']],
                  output_dir=str(directory.join('out')),
                  coherence_surrogates=5)
    values.update(kwargs)
    return pycycles.RunConfig(**values)


def _read(path):
    with open(path, 'rb') as f:
        return f.read()


class TestRunConfig:
    def test_defaults(self):
        config = pycycles.RunConfig()
        assert config.seed == 0
        assert config.denoise_method == 'emd'
        assert config.coherence_surrogates == 300
        assert config.inputs == []

    def test_unknown_key(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig(colour='blue')

    def test_bad_values(self):
        for values in ({'seed': -1}, {'omega0': 3.0}, {'dj': 0},
                       {'denoise_method': 'fft'}, {'workers': 0},
                       {'ssa_threshold': 1.0}, {'coherence_surrogates': -1}):
            with pytest.raises(pycycles.ParameterError):
                pycycles.RunConfig(**values)

    def test_inputs(self):
        config = pycycles.RunConfig(inputs=['data/wheat.csv'])
        assert config.inputs[0]['label'] == 'wheat'
        assert config.inputs[0]['schema'] == 'plain'
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig(inputs=['a/x.csv', 'b/x.csv'])
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig(inputs=[{'path': 'x.csv', 'colour': 1}])
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig(inputs=[{'path': 'x.csv', 'denoise': 'fft'}])
        config = pycycles.RunConfig(inputs=[{'path': 'x.csv',
                                             'denoise': 'none'}])
        assert config.inputs[0]['denoise'] == 'none'

    def test_pairs(self):
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig(inputs=['x.csv'], pairs=[['x', 'y']])

    def test_environment(self):
        config = pycycles.RunConfig(seed=3)
        assert config.with_environment({}).seed == 3
        assert config.with_environment(
            {pycycles.SEED_VARIABLE: '42'}).seed == 42
        with pytest.raises(pycycles.ParameterError):
            config.with_environment({pycycles.SEED_VARIABLE: 'many'})

    def test_from_file(self, tmpdir):
        _inputs(tmpdir)
        path = str(tmpdir.join('run.json'))
        with open(path, 'w') as f:
            json.dump({'inputs': ['a.csv', {'path': 'b.csv'}],
                       'output_dir': 'results'}, f)
        config = pycycles.RunConfig.from_file(path)
        assert config.inputs[0]['path'] == str(tmpdir.join('a.csv'))
        assert config.inputs[1]['label'] == 'b'
        assert config.output_dir == str(tmpdir.join('results'))
        config.check_files()

    def test_from_file_errors(self, tmpdir):
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig.from_file(str(tmpdir.join('nothing.json')))
        path = str(tmpdir.join('bad.json'))
        with open(path, 'w') as f:
            f.write('{inputs')
        with pytest.raises(pycycles.ParameterError):
            pycycles.RunConfig.from_file(path)


class TestPipeline:
    def test_outputs(self, tmpdir):
        config = _config(tmpdir)
        manifest = pycycles.run_pipeline(config)
        out = str(tmpdir.join('out'))
        assert manifest.output_dir == out

        expected = ['a/' + name for name in SERIES_OUTPUTS] + \
            ['b/' + name for name in SERIES_OUTPUTS] + \
            ['pairs/a__b/' + name for name in PAIR_OUTPUTS] + \
            ['stationarity_table.csv', 'linearity_table.csv']
        assert sorted(manifest.outputs) == sorted(expected)
        for name, digest in manifest.outputs.items():
            assert pycycles.sha256_file(os.path.join(out, name)) == digest
        assert os.path.isfile(os.path.join(out, pycycles.MANIFEST_NAME))
        assert not any(name.startswith('.pycycles-')
                       for name in os.listdir(str(tmpdir)))

    def test_reports(self, tmpdir):
        pycycles.run_pipeline(_config(tmpdir))
        out = tmpdir.join('out')
        with open(str(out.join('a', 'tests.json'))) as f:
            tests = json.load(f)
        assert [t['test'] for t in tests] == \
            ['kpss', 'adf', 'keenan', 'tsay', 'mcleod_li']
        with open(str(out.join('a', 'imf1_noise.json'))) as f:
            assert json.load(f)['noise_model'] in ('red', 'white')

        table = pd.read_csv(str(out.join('stationarity_table.csv')))
        assert list(table.columns) == ['test', 'a', 'b']
        assert list(table['test']) == ['kpss', 'adf']

        scalogram = pd.read_csv(str(out.join('a', 'scalogram.csv')))
        assert list(scalogram.columns) == \
            ['year', 'scale', 'period_years', 'power', 'sig90', 'sig95',
             'in_coi']
        assert scalogram['year'].min() == 1950
        assert scalogram['year'].max() == 2000

    def test_rerun_identical(self, tmpdir):
        config = _config(tmpdir)
        pycycles.run_pipeline(config)
        manifest = tmpdir.join('out', pycycles.MANIFEST_NAME)
        first = _read(str(manifest))
        pycycles.run_pipeline(config)
        assert _read(str(manifest)) == first

    def test_from_manifest(self, tmpdir):
        config = _config(tmpdir, seed=9)
        pycycles.run_pipeline(config)
        manifest = str(tmpdir.join('out', pycycles.MANIFEST_NAME))
        again = pycycles.RunConfig.from_manifest(manifest)
        assert again.to_dict() == config.to_dict()
        loaded = pycycles.RunManifest.load(manifest)
        assert loaded.config['seed'] == 9

    def test_seed(self, tmpdir):
        one = pycycles.run_pipeline(_config(tmpdir, seed=1))
        two = pycycles.run_pipeline(_config(tmpdir, seed=2))
        coherence = 'pairs/a__b/coherence.csv'
        assert one.outputs[coherence] != two.outputs[coherence]
        assert one.outputs['a/scalogram.csv'] == \
            two.outputs['a/scalogram.csv']

    def test_identical_pair(self, tmpdir):
        a, _ = _inputs(tmpdir)
        copy = write_plain_csv(tmpdir, pycycles.load_series(a).values,
                               name='copy.csv')
        config = pycycles.RunConfig(inputs=[a, copy], pairs=[['a', 'copy']],
                                    output_dir=str(tmpdir.join('out')),
                                    coherence_surrogates=0)
        pycycles.run_pipeline(config)
        frame = pd.read_csv(str(tmpdir.join('out', 'pairs', 'a__copy',
                                            'coherence.csv')))
        trusted = frame[frame['in_coi'] == 0]
        assert len(trusted) > 0
        assert (trusted['rsq'] - 1).abs().max() < 1e-6
        assert 'threshold' not in frame.columns

    def test_denoise_methods(self, tmpdir):
        manifest = pycycles.run_pipeline(
            _config(tmpdir, denoise_method='ssa', pairs=[]))
        assert 'a/denoise.csv' in manifest.outputs
        assert not any(name.startswith('pairs/')
                       for name in manifest.outputs)
        manifest = pycycles.run_pipeline(
            _config(tmpdir, denoise_method='none', pairs=[]))
        assert 'a/denoise.csv' not in manifest.outputs

    def test_denoise_per_input(self, tmpdir):
        a, b = _inputs(tmpdir)
        config = pycycles.RunConfig(
            inputs=[{'path': a, 'label': 'a', 'denoise': 'none'},
                    {'path': b, 'label': 'b'}],
            output_dir=str(tmpdir.join('out')))
        manifest = pycycles.run_pipeline(config)
        assert 'a/denoise.csv' not in manifest.outputs
        assert 'b/denoise.csv' in manifest.outputs

    def test_trend_regression(self, tmpdir):
        pycycles.run_pipeline(_config(tmpdir, coherence_surrogates=0))
        with open(str(tmpdir.join('out', 'pairs', 'a__b',
                                  'trend_regression.json'))) as f:
            fit = json.load(f)
        assert sorted(fit) == ['intercept', 'r2', 'slope']
        assert 0 <= fit['r2'] <= 1

    def test_cutoff(self, tmpdir):
        pycycles.run_pipeline(_config(tmpdir, cutoff_period=8.0))
        frame = pd.read_csv(str(tmpdir.join('out', 'pairs', 'a__b',
                                            'cross.csv')))
        assert (frame[frame['period_years'] > 8.0]['cross_power'] == 0).all()

    def test_missing_input(self, tmpdir):
        config = _config(tmpdir)
        os.remove(config.inputs[1]['path'])
        with pytest.raises(pycycles.ParameterError) as e:
            pycycles.run_pipeline(config)
        assert config.inputs[1]['path'] in str(e.value)
        assert not tmpdir.join('out').check()

    def test_failing_stage(self, tmpdir):
        short = write_plain_csv(tmpdir, white(12, 2), name='short.csv')
        config = pycycles.RunConfig(inputs=[short],
                                    output_dir=str(tmpdir.join('out')))
        with pytest.raises(pycycles.PipelineError) as e:
            pycycles.run_pipeline(config)
        assert e.value.stage == 'tests:short'
        assert isinstance(e.value.cause, pycycles.InsufficientDataError)
        assert e.value.exit_code == 3
        assert not tmpdir.join('out').check()
        assert not any(name.startswith('.pycycles-')
                       for name in os.listdir(str(tmpdir)))

    def test_numeric_failure(self, tmpdir, monkeypatch):
        def fail(*args, **kwargs):
            raise FloatingPointError('overflow in regression')

        monkeypatch.setattr('pycycles.pipeline.trend_regression', fail)
        with pytest.raises(pycycles.PipelineError) as e:
            pycycles.run_pipeline(_config(tmpdir))
        assert e.value.stage.startswith('trends:')
        assert isinstance(e.value.cause, pycycles.NumericError)
        assert e.value.exit_code == 4
        assert not tmpdir.join('out').check()

    def test_foreign_output(self, tmpdir):
        tmpdir.join('out').ensure('precious.txt')
        with pytest.raises(pycycles.ParameterError):
            pycycles.run_pipeline(_config(tmpdir))
        assert tmpdir.join('out', 'precious.txt').check()


class TestCommandLine:
    def test_seed_precedence(self):
        environ = {pycycles.SEED_VARIABLE: '5'}
        assert _seed(7, environ) == 7
        assert _seed(None, environ) == 5
        assert _seed(None, {}) == 0

    def test_synth(self, tmpdir):
        path = str(tmpdir.join('synth', 'tones.csv'))
        assert main(['synth', path, '--tone', '11', '1', '0',
                     '--noise-sd', '0.3', '--seed', '3']) == 0
        series = pycycles.load_series(path)
        assert len(series) == RECORD_LENGTH
        assert series.start_year == 1950

        again = str(tmpdir.join('again.csv'))
        main(['synth', again, '--tone', '11', '1', '0',
              '--noise-sd', '0.3', '--seed', '3'])
        assert _read(path) == _read(again)

    def test_wavelet(self, tmpdir):
        path = str(tmpdir.join('ar1.csv'))
        assert main(['synth', path, '--kind', 'ar1', '--seed', '1']) == 0
        out = str(tmpdir.join('out'))
        assert main(['wavelet', path, '--out', out]) == 0
        assert tmpdir.join('out', 'scalogram.svg').check()
        assert tmpdir.join('out', 'global_spectrum.csv').check()

    def test_xwavelet(self, tmpdir):
        a, b = _inputs(tmpdir)
        out = str(tmpdir.join('out'))
        assert main(['xwavelet', a, b, '--out', out, '--surrogates', '3',
                     '--cutoff-period', '20']) == 0
        frame = pd.read_csv(str(tmpdir.join('out', 'coherence.csv')))
        assert 'significant' in frame.columns

    def test_pipeline(self, tmpdir):
        a, b = _inputs(tmpdir)
        path = str(tmpdir.join('run.json'))
        with open(path, 'w') as f:
            json.dump({'inputs': ['a.csv', 'b.csv'], 'pairs': [['a', 'b']],
                       'output_dir': 'out', 'coherence_surrogates': 3}, f)
        assert main(['pipeline', path, '--seed', '4']) == 0
        manifest = str(tmpdir.join('out', pycycles.MANIFEST_NAME))
        with open(manifest) as f:
            assert json.load(f)['seed'] == 4
        first = _read(manifest)
        assert main(['pipeline', '--from-manifest', manifest]) == 0
        assert _read(manifest) == first

    def test_exit_codes(self, tmpdir, capsys):
        assert main(['ingest', str(tmpdir.join('nothing.csv'))]) == 2
        assert 'pycycles: error:' in capsys.readouterr().err

        short = write_plain_csv(tmpdir, white(12, 3), name='short.csv')
        assert main(['test', short, '--out', str(tmpdir)]) == 3

        flat = write_plain_csv(tmpdir, [1.0] * 30, name='flat.csv')
        assert main(['test', flat, '--out', str(tmpdir)]) == 4

    def test_numeric_exit_code(self, tmpdir, capsys, monkeypatch):
        def fail(*args, **kwargs):
            raise np.linalg.LinAlgError('SVD did not converge')

        monkeypatch.setattr('pycycles.cli.run_battery', fail)
        path = write_plain_csv(tmpdir, white(40, 4), name='noise.csv')
        assert main(['test', path, '--out', str(tmpdir)]) == 4
        assert 'SVD did not converge' in capsys.readouterr().err
