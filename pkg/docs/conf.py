# -*- coding: utf-8 -*-
#
# Sphinx configuration for london-states.
import os
import sys

#
# Set Path so we can import the package sources;
# - this is relative to this file
sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))

from london_states import __version__  # noqa: E402


# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.napoleon',
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.imgmath',
    'sphinx.ext.viewcode',
]

napoleon_google_docstring = True
napoleon_use_param = True
napoleon_use_ivar = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'London States'
copyright = u'2026 London States developers'
author = u'London States developers'

# The short X.Y version.
version = '.'.join(__version__.split('.')[:2])
# The full version, including alpha/beta/rc tags.
release = __version__

language = 'en'
exclude_patterns = ['_build']
pygments_style = 'sphinx'
todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'html'


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'london-states', u'London States Documentation',
     [author], 1)
]


intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
