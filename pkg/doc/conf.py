# -*- coding: utf-8 -*-
#
# pycycles documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
]

# list members in source order, not alphabetically
autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = u'pycycles'
copyright = u'2026, pycycles developers'
author = u'pycycles developers'

# the version comes from the package, so it cannot drift from setup.py
info = {}
with open(os.path.join('..', 'pycycles', 'version.py')) as f:
    exec(f.read(), info)
release = info['__version__']
version = release.rsplit('.', 1)[0]

language = 'en'
exclude_patterns = ['_build', 'global.rst']
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'pycyclesdoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'pycycles', u'pycycles Documentation',
     [author], 1)
]
