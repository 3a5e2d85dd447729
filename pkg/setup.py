"""cycle analysis for short annual time series

Detrending, stationarity and linearity tests, EMD and SSA denoising, and
Morlet wavelet, cross-wavelet and coherence analysis with red-noise
significance.
"""

# flake8: noqa

from codecs import open
from os import path

from setuptools import setup, find_packages

here = path.abspath(path.dirname(__file__))

info = {}
with open(path.join(here, 'pycycles', 'version.py'), encoding='utf-8') as f:
    exec(f.read(), info)

with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

# See https://pypi.python.org/pypi?%3Aaction=list_classifiers
pycycles_classifiers = [
    'Development Status :: 4 - Beta',
    'Environment :: Console',
    'Intended Audience :: Science/Research',
    'Topic :: Scientific/Engineering :: Atmospheric Science',
    'Topic :: Scientific/Engineering :: Mathematics',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Programming Language :: Python :: 3.11',
    'Programming Language :: Python :: Implementation :: CPython',
]

install_deps = [
    'numpy>=1.20',
    'scipy>=1.10',
    'pandas>=1.5',
    'matplotlib>=3.6',
    'contourpy>=1.0',
    'statsmodels>=0.13',
]

test_deps = [
    'pytest-runner',
    'pytest',
    'pytest-flake8',
    'pyperf',
]

extras = {
    'test': test_deps,
    'doc': ['sphinx', 'sphinx_rtd_theme'],
}

setup(
    name='pycycles',
    version=info['__version__'],
    description='cycle analysis for short annual time series',
    long_description=long_description,
    author='pycycles developers',
    license='MIT',
    classifiers=pycycles_classifiers,
    keywords='time series wavelet coherence EMD SSA unit root',

    packages=find_packages(exclude=['doc', 'tests', 'examples']),
    python_requires='>=3.8',
    install_requires=install_deps,
    tests_require=test_deps,
    extras_require=extras,
    entry_points={
        'console_scripts': ['pycycles = pycycles.cli:main'],
    },
)
