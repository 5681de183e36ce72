# Licensed under a 3-clause BSD style license - see LICENSE.rst

__all__ = ['__version__']

import os
from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version('circstab')
except PackageNotFoundError:
    __version__ = '0.1.dev0'

try:
    # Create the test function for self test
    from astropy.tests.runner import TestRunner
except ImportError:
    pass
else:
    test = TestRunner.make_test_runner_in(os.path.dirname(__file__))
    test.__test__ = False
    __all__ += ['test']
