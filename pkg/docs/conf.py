# -*- coding: utf-8 -*-
#
# equicones documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

extensions = []

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'equicones'
version = '0.1'
release = '0.1'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'equiconesdoc'

latex_documents = [
    ('index', 'equicones.tex', u'equicones Documentation', u'equicones developers', 'manual'),
]

man_pages = [
    ('index', 'equicones', u'equicones Documentation', [u'equicones developers'], 1)
]
