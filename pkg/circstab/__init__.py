# Licensed under a 3-clause BSD style license - see LICENSE.rst

"""
Stability of circulant and abelian Cayley graphs: canonical double covers,
automorphism groups, Wilson's instability conditions, compatible adjacency
matrices and the Cartesian skeleton.
"""

# Packages may add whatever they like to this file, but
# should keep this content at the top.
# ----------------------------------------------------------------------------
from ._astropy_init import *
# ----------------------------------------------------------------------------

# Enforce Python version check during package import.
# This is the same check as the one at the top of setup.py
import sys

from astropy import config as _config

__minimum_python_version__ = "3.10"

class UnsupportedPythonError(Exception):
    pass

if sys.version_info < tuple(int(val) for val in
                            __minimum_python_version__.split('.')):
    raise UnsupportedPythonError("circstab does not support Python < {}"
                                 .format(__minimum_python_version__))


class Conf(_config.ConfigNamespace):
    """
    Configuration parameters for `circstab`.
    """
    max_vertices = _config.ConfigItem(
        128, 'Largest graph handed to the automorphism engine.')
    max_group_order = _config.ConfigItem(
        64, 'Largest group whose automorphisms are enumerated by brute force.')
    max_automorphism_candidates = _config.ConfigItem(
        10**6, 'Largest number of generator-image combinations tried when '
        'enumerating group automorphisms.')
    max_isomorphism_vertices = _config.ConfigItem(
        64, 'Largest graph accepted by the isomorphism test.')
    compat_node_limit = _config.ConfigItem(
        10**7, 'Search nodes visited before a compatibility search gives up.')
    compat_survey_max_order = _config.ConfigItem(
        16, 'Largest order for which surveys run the compatibility search '
        'unless asked otherwise.')
    tf_product_length = _config.ConfigItem(
        3, 'Longest product of double cover generators scanned for a '
        'two-fold automorphism before the layer-coloured search.')
    abelian_stream_max_order = _config.ConfigItem(
        27, 'Largest order enumerated by the abelian Cayley graph stream.')


conf = Conf()

from .utils import (CircstabError, InvalidGroupError, CoprimalityError,
                    ParityError, GraphError, DegreeMismatchError,
                    ParameterError, SizeLimitError, TransitivityError,
                    ConnectionSetError, SurveyIOError, CircstabWarning)
from .abelian import (AbelianGroup, GroupElement, GroupAutomorphism,
                      make_cyclic, make_product, units_mod, crt_solve,
                      automorphisms, set_stabilizer, subgroups_cyclic,
                      abelian_groups, divisors, crt_product_set)
from .graph import (Graph, cayley_graph, circulant, double_cover,
                    double_cover_as_circulant, direct_product,
                    lexicographic_product, cartesian_product, complete, cycle,
                    edgeless, complete_bipartite, disjoint_union,
                    is_connected, is_bipartite, is_vertex_determining,
                    are_isomorphic, minus_product_identity_check)
from .permgroup import PermGroup, group_order
from .autgroup import (automorphism_group, isomorphism, orbits,
                       is_arc_transitive, is_edge_transitive,
                       sufficient_arc_transitivity, is_normal_cayley)
from .stability import (Status, StabilityVerdict, is_stable, classify,
                        tf_witness, verify_tf_pair, compatible_from_tf)
from .wilson import (ConditionReport, check_c1, check_c2, check_c2prime,
                     check_c3, check_c4, check_all)
from .compat import (CompatibilityResult, verify_compatible,
                     compatible_matrix_search, compatible_cayley_search,
                     thm3_certificate, thm3_instances)
from .skeleton import boolean_square, dispensable_edges, cartesian_skeleton
from .survey import (SurveyOptions, SurveyRecord, SurveyAggregate,
                     enumerate_connection_sets, enumerate_abelian_cayley,
                     classify_one, run_survey)
