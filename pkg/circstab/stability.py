import itertools
from enum import Enum
from dataclasses import dataclass, field
from typing import Optional

from astropy import log

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .autgroup import automorphism_group
from .graph import (double_cover, is_connected, is_bipartite,
                    is_vertex_determining)
from .permgroup import compose, inverse, check_perm
from .utils import DegreeMismatchError, map_bits


class Status(str, Enum):
    STABLE = 'stable'
    TRIVIALLY_UNSTABLE = 'trivially_unstable'
    NONTRIVIALLY_UNSTABLE = 'nontrivially_unstable'


@dataclass
class StabilityVerdict:
    """
    Outcome of comparing |Aut(D(graph))| with 2 |Aut(graph)|.

    ``trivial_reasons`` lists why an unstable graph is trivially unstable
    and is empty for stable graphs; the structural flags are always set.
    ``tf_witness`` holds a pair (alpha, beta) with alpha != beta and
    u ~ v iff alpha(u) ~ beta(v), when one was found.
    """
    status: Status
    aut_order: int
    dcover_aut_order: int
    connected: bool
    bipartite: bool
    vertex_determining: bool
    trivial_reasons: list = field(default_factory=list)
    tf_witness: Optional[tuple] = None

    @property
    def stable(self):
        return self.status == Status.STABLE

    @property
    def nontrivially_unstable(self):
        return self.status == Status.NONTRIVIALLY_UNSTABLE

    def to_dict(self):
        witness = None
        if self.tf_witness is not None:
            witness = [list(self.tf_witness[0]), list(self.tf_witness[1])]
        return {'status': self.status.value,
                'autOrder': str(self.aut_order),
                'dcoverAutOrder': str(self.dcover_aut_order),
                'trivialReasons': list(self.trivial_reasons),
                'tfWitness': witness,
                'connected': self.connected,
                'bipartite': self.bipartite,
                'vertexDetermining': self.vertex_determining}


def is_stable(graph):
    """
    Whether |Aut(D(graph))| = 2 |Aut(graph)|.

    Aut(graph) x Z2 always embeds in Aut(D(graph)), so equal orders mean
    equal groups.
    """
    aut = automorphism_group(graph)
    dcover = automorphism_group(double_cover(graph))
    return dcover.order == 2 * aut.order


def _pair_from(g, n):
    """
    The two-fold automorphism carried by a double cover automorphism that
    keeps or swaps the layers, or None.
    """
    if all(g[u] < n for u in range(n)):
        alpha = tuple(g[:n])
        beta = tuple(g[v + n] - n for v in range(n))
    elif all(g[u] >= n for u in range(n)):
        alpha = tuple(g[u] - n for u in range(n))
        beta = tuple(g[n:])
    else:
        return None
    if alpha == beta:
        return None
    return alpha, beta


def _short_products(generators, length):
    for k in range(1, length + 1):
        for word in itertools.product(generators, repeat=k):
            p = word[0]
            for g in word[1:]:
                p = compose(p, g)
            yield p


def tf_witness(graph, dcover_group=None):
    """
    Find permutations alpha != beta of the vertices with
    u ~ v iff alpha(u) ~ beta(v).

    Generators of Aut(D(graph)) and their short products are scanned
    first; if none keeps or swaps the layers with different actions, the
    layer-preserving subgroup is computed directly.

    Parameters
    ----------
    graph : `~circstab.graph.Graph`
    dcover_group : `~circstab.permgroup.PermGroup`, optional
        Aut(D(graph)), if already known.

    Returns
    -------
    tuple of tuple or None
    """
    n = graph.n
    cover = double_cover(graph)
    if dcover_group is None:
        dcover_group = automorphism_group(cover)
    for g in _short_products(dcover_group.generators,
                             conf.tf_product_length):
        pair = _pair_from(g, n)
        if pair is not None:
            return pair
    log.debug("No two-fold automorphism among short products; searching "
              "the layer-preserving subgroup")
    layered = automorphism_group(cover, colouring=[0] * n + [1] * n)
    for g in layered.generators:
        pair = _pair_from(g, n)
        if pair is not None:
            return pair
    return None


def verify_tf_pair(graph, alpha, beta):
    """
    Whether u ~ v iff alpha(u) ~ beta(v) for all vertices u and v.
    """
    if len(alpha) != graph.n or len(beta) != graph.n:
        raise DegreeMismatchError("Permutations of degree {} and {} for a "
                                  "graph with {} vertices"
                                  .format(len(alpha), len(beta), graph.n))
    check_perm(alpha)
    check_perm(beta)
    return all(map_bits(nbrs, beta) == graph.adjacency[alpha[u]]
               for u, nbrs in enumerate(graph.adjacency))


def compatible_from_tf(alpha, beta):
    """
    The permutation beta o alpha^-1. For a two-fold automorphism it meets
    both compatibility conditions, and it is not the identity when
    alpha != beta.
    """
    return compose(inverse(alpha), beta)


def classify(graph):
    """
    Classify a graph as stable, trivially unstable or nontrivially
    unstable.

    Returns
    -------
    `StabilityVerdict`

    Raises
    ------
    SizeLimitError
        If the double cover exceeds ``conf.max_vertices``.
    """
    aut = automorphism_group(graph)
    dcover = automorphism_group(double_cover(graph))
    connected = is_connected(graph)
    bipartite = is_bipartite(graph)
    determining = is_vertex_determining(graph)
    stable = dcover.order == 2 * aut.order

    reasons = []
    witness = None
    if stable:
        status = Status.STABLE
    else:
        if not connected:
            reasons.append('disconnected')
        if bipartite and (aut.order > 1 or (connected and determining)):
            reasons.append('bipartite')
        if not determining:
            reasons.append('not_vertex_determining')
        if connected and not bipartite and determining:
            status = Status.NONTRIVIALLY_UNSTABLE
        else:
            status = Status.TRIVIALLY_UNSTABLE
        witness = tf_witness(graph, dcover)

    return StabilityVerdict(status, aut.order, dcover.order, connected,
                            bipartite, determining, reasons, witness)
