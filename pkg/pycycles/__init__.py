# flake8: noqa

import logging

logger = logging.getLogger(__name__)

# user code can override this null handler
logger.addHandler(logging.NullHandler())

# pull in our module version number, see also setup.py
from .version import __version__

# the order matters: each module imports names from the ones before it
from .error import *
from .enums import *
from .base import *
from .rng import *
from .ingest import *
from .series import *
from .spectral import *
from .detrend import *
from .stattests import *
from .emd import *
from .ssa import *
from .wavelet import *
from .xwavelet import *
from .svg import *
from .export import *
from .pipeline import *

__all__ = [
    '__version__',
    'Error', 'ParameterError', 'DataError', 'InsufficientDataError',
    'NumericError', 'DegenerateError', 'PipelineError',
    'DetrendMethod', 'ModelVariant', 'PKind', 'DenoiseMethod', 'Component',
    'next_pow2',
    'SeededStream', 'gen_ar1', 'gen_sum_of_tones', 'gen_random_walk',
    'gen_arch1', 'gen_bilinear',
    'MIN_YEARS', 'RawRecord', 'ColumnSchema', 'SCHEMAS', 'schema_for',
    'MeanPolicy', 'AnnualSeries', 'parse_csv', 'annualize', 'load_series',
    'Decomposition', 'AcfProfile', 'acf', 'acf_band', 'standardize',
    'recombine', 'RegressionFit', 'trend_regression',
    'MAX_ALPHA', 'dft', 'Periodogram', 'periodogram', 'Ar1Model', 'fit_ar1',
    'ar1_spectrum', 'chi2_quantile', 'cross_quantile',
    'DEFAULT_STIFFNESS', 'DEFAULT_BASS', 'DetrendConfig', 'spline_lambda',
    'detrend_spline', 'detrend_friedman', 'detrend',
    'DEFAULT_VARIANT', 'DEFAULT_AR_ORDER', 'DEFAULT_MAX_LAG', 'PBound',
    'TestReport', 'kpss_test', 'adf_test', 'keenan_test', 'tsay_test',
    'mcleod_li_test', 'run_battery', 'report_table',
    'DEFAULT_EPSILON', 'DEFAULT_MAX_SIFTS', 'DEFAULT_MAX_IMFS', 'ImfSet',
    'sift', 'denoise_first_imf', 'HilbertSpectrum', 'hilbert_spectrum',
    'default_window', 'SsaModel', 'embed_decompose', 'reconstruct', 'scree',
    'Grouping', 'reconstruct_grouping', 'denoise_low_eigen',
    'DEFAULT_OMEGA0', 'DEFAULT_DJ', 'SIGNIFICANCE_LEVELS', 'fourier_factor',
    'ScaleGrid', 'wavelet_transform', 'Scalogram', 'cone_of_influence',
    'cwt_morlet', 'significance_mask', 'coi_mask', 'GlobalSpectrum',
    'global_spectrum',
    'DEFAULT_SCALE_WIDTH', 'DEFAULT_SURROGATES', 'CrossScalogram',
    'cross_wavelet', 'dump_lowfreq_mask', 'SmoothSpec', 'CoherenceMap',
    'coherence', 'coherence_significance',
    'COLORMAP', 'contour_lines', 'emit_svg_heatmap', 'scalogram_svg',
    'cross_svg', 'coherence_svg',
    'write_frame', 'write_columns', 'write_json', 'write_text',
    'sha256_file', 'series_frame', 'decomposition_frame', 'imf_frame',
    'scree_frame', 'periodogram_frame', 'scalogram_frame', 'cross_frame',
    'coherence_frame', 'reports_json',
    'SEED_VARIABLE', 'MANIFEST_NAME', 'RunConfig', 'RunManifest',
    'run_pipeline',
]
