#!/usr/bin/env python
# Licensed under a 3-clause BSD style license - see LICENSE.rst

import os
import sys

from configparser import ConfigParser

# Get some values from the setup.cfg
conf = ConfigParser()
conf.read(['setup.cfg'])
metadata = dict(conf.items('metadata'))

PACKAGENAME = metadata.get('package_name', 'circstab')
DESCRIPTION = metadata.get('description', '')
AUTHOR = metadata.get('author', '')
AUTHOR_EMAIL = metadata.get('author_email', '')
LICENSE = metadata.get('license', 'unknown')
URL = metadata.get('url', '')
__minimum_python_version__ = metadata.get("minimum_python_version", "3.10")

# Enforce Python version check - this is the same check as in __init__.py
if sys.version_info < tuple((int(val) for val in __minimum_python_version__.split('.'))):
    sys.stderr.write("ERROR: circstab requires Python {} or later\n".format(__minimum_python_version__))
    sys.exit(1)

from setuptools import setup, find_packages

# order of priority for long_description:
#   (1) set in setup.cfg,
#   (2) load README.rst
_cfg_long_description = metadata.get('long_description', '')
if _cfg_long_description:
    LONG_DESCRIPTION = _cfg_long_description
elif os.path.exists('README.rst'):
    with open('README.rst') as f:
        LONG_DESCRIPTION = f.read()
else:
    LONG_DESCRIPTION = DESCRIPTION

# VERSION should be PEP440 compatible (http://www.python.org/dev/peps/pep-0440)
VERSION = metadata.get('version', '0.1.dev0')

# Define entry points for command-line scripts
entry_points = {'console_scripts': []}

if conf.has_section('entry_points'):
    entry_point_list = conf.items('entry_points')
    for entry_point in entry_point_list:
        entry_points['console_scripts'].append('{0} = {1}'.format(
            entry_point[0], entry_point[1]))

extras_require = {}
if conf.has_section('options.extras_require'):
    for name, requirements in conf.items('options.extras_require'):
        extras_require[name] = [s.strip() for s in requirements.split(',')
                                if s.strip()]

setup(name=PACKAGENAME,
      version=VERSION,
      description=DESCRIPTION,
      install_requires=[s.strip() for s in metadata.get('install_requires', 'astropy').split(',')],
      extras_require=extras_require,
      author=AUTHOR,
      author_email=AUTHOR_EMAIL,
      license=LICENSE,
      url=URL,
      long_description=LONG_DESCRIPTION,
      zip_safe=False,
      packages=find_packages(include=[PACKAGENAME, PACKAGENAME + '.*']),
      package_data={PACKAGENAME + '.tests': ['data/*']},
      entry_points=entry_points,
      python_requires='>={}'.format(__minimum_python_version__),
)
