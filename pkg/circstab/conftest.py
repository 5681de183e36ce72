# This file is used to configure the behavior of pytest when using the Astropy
# test infrastructure.

import os

import pytest

try:
    from pytest_astropy_header.display import (PYTEST_HEADER_MODULES,
                                               TESTED_VERSIONS)
except ImportError:
    PYTEST_HEADER_MODULES = {}
    TESTED_VERSIONS = {}

from . import conf

PYTEST_HEADER_MODULES['Astropy'] = 'astropy'
PYTEST_HEADER_MODULES['Numpy'] = 'numpy'
PYTEST_HEADER_MODULES['networkx'] = 'networkx'
PYTEST_HEADER_MODULES['sympy'] = 'sympy'
for name in ('h5py', 'Matplotlib', 'Scipy', 'Pandas'):
    PYTEST_HEADER_MODULES.pop(name, None)

from ._astropy_init import __version__

TESTED_VERSIONS[os.path.basename(os.path.dirname(__file__))] = __version__


def pytest_configure(config):
    config.addinivalue_line('markers',
                            'slow: exhaustive sweeps that take minutes')


@pytest.fixture(autouse=True)
def _default_conf():
    """
    Every test starts from the default configuration.
    """
    conf.reset()
    yield
    conf.reset()
