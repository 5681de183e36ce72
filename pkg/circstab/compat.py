"""
Compatible adjacency matrices: a nonidentity permutation sigma with
sigma(x) not adjacent to x and sigma(y) ~ x iff sigma(x) ~ y, so that A P
is again the adjacency matrix of a graph.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from astropy import log

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .abelian import make_cyclic, automorphisms, crt_solve
from .autgroup import is_arc_transitive, sufficient_arc_transitivity
from .graph import (cayley_graph, is_connected, is_bipartite,
                    is_vertex_determining)
from .permgroup import check_perm, is_identity
from .stability import classify
from .utils import (CoprimalityError, DegreeMismatchError, ParameterError,
                    SizeLimitError, iter_bits)


@dataclass
class CompatibilityResult:
    """
    ``compatible`` is None when the search stopped at its node limit
    before deciding.
    """
    compatible: Optional[bool]
    witness: Optional[tuple] = None
    method: str = 'matrix_search'
    search_exhausted: bool = True
    nodes: int = 0

    @property
    def inconclusive(self):
        return self.compatible is None

    def to_dict(self):
        return {'compatible': self.compatible,
                'witness': (None if self.witness is None
                            else list(self.witness)),
                'method': self.method,
                'searchExhausted': self.search_exhausted,
                'nodes': self.nodes}


def _permutation_matrix(sigma):
    n = len(sigma)
    P = np.zeros((n, n), dtype=np.int64)
    P[list(sigma), np.arange(n)] = 1
    return P


def verify_compatible(graph, sigma):
    """
    Whether ``A P_sigma`` is symmetric with zero diagonal and sigma is not
    the identity.

    Parameters
    ----------
    graph : `~circstab.graph.Graph`
    sigma : sequence of int
        ``sigma[x]`` is the image of ``x``.

    Raises
    ------
    DegreeMismatchError
        If ``sigma`` does not act on the vertices of ``graph``.
    """
    sigma = tuple(int(x) for x in sigma)
    if len(sigma) != graph.n:
        raise DegreeMismatchError("Permutation of degree {} for a graph with "
                                  "{} vertices".format(len(sigma), graph.n))
    check_perm(sigma)
    if is_identity(sigma):
        return False
    M = graph.adjacency_matrix() @ _permutation_matrix(sigma)
    return bool((M == M.T).all() and not M.diagonal().any())


class _NodeLimitReached(Exception):
    pass


def _backtrack(adjacency, node_limit):
    """
    Assign sigma in vertex order with forward checking of the domains.

    Returns
    -------
    sigma : tuple or None
    nodes : int
    exhausted : bool
    """
    n = len(adjacency)
    full = (1 << n) - 1
    sigma = [None] * n
    nodes = 0

    def search(x, domains):
        nonlocal nodes
        if x == n:
            return not is_identity(sigma)
        for t in iter_bits(domains[x]):
            nodes += 1
            if nodes > node_limit:
                raise _NodeLimitReached
            sigma[x] = t
            keep = ~(1 << t)
            nx = adjacency[x]
            nt = adjacency[t]
            narrowed = list(domains)
            ok = True
            for y in range(x + 1, n):
                d = narrowed[y] & keep
                d &= nx if nt >> y & 1 else ~nx
                if not d:
                    ok = False
                    break
                narrowed[y] = d
            if ok and search(x + 1, narrowed):
                return True
        sigma[x] = None
        return False

    domains = [~nbrs & full for nbrs in adjacency]
    try:
        found = search(0, domains)
    except _NodeLimitReached:
        return None, nodes, False
    return (tuple(sigma) if found else None), nodes, True


def _search(graph, check, node_limit, candidates, method):
    for sigma in candidates:
        sigma = tuple(int(x) for x in sigma)
        if len(sigma) == graph.n and check(sigma):
            return CompatibilityResult(True, sigma, method)

    if node_limit is None:
        node_limit = conf.compat_node_limit
    sigma, nodes, exhausted = _backtrack(graph.adjacency, node_limit)
    if sigma is not None:
        if not check(sigma):
            raise RuntimeError("Compatibility search produced an invalid "
                               "witness {}".format(sigma))
        return CompatibilityResult(True, sigma, method, True, nodes)
    if not exhausted:
        log.debug("Compatibility search on {} vertices stopped after {} nodes"
                  .format(graph.n, nodes))
        return CompatibilityResult(None, None, method, False, nodes)
    return CompatibilityResult(False, None, method, True, nodes)


def compatible_matrix_search(graph, node_limit=None, candidates=()):
    """
    Search for a nonidentity permutation matrix compatible with the
    adjacency matrix of ``graph``.

    Parameters
    ----------
    graph : `~circstab.graph.Graph`
    node_limit : int, optional
        Assignments tried before giving up. Defaults to
        ``conf.compat_node_limit``.
    candidates : iterable of sequences, optional
        Permutations checked before the search.

    Returns
    -------
    `CompatibilityResult`
        ``compatible`` is False only after an exhausted search; the witness
        depends on the search order.
    """
    return _search(graph, lambda s: verify_compatible(graph, s), node_limit,
                   candidates, 'matrix_search')


def _additive_check(G, members):
    in_set = np.zeros(G.order, dtype=bool)
    in_set[members] = True
    table = G.add_table
    neg = G.neg_table

    def check(sigma):
        if sorted(sigma) != list(range(G.order)) or is_identity(sigma):
            return False
        # M[x, y] says sigma(y) - x lies in S
        M = in_set[table[neg[:, None], np.asarray(sigma)[None, :]]]
        return bool((M == M.T).all() and not M.diagonal().any())

    return check


def compatible_cayley_search(G, S, node_limit=None, candidates=()):
    """
    Decide compatibility for Cay(G, S) through the additive form of the
    conditions: sigma(x) - x not in S, and sigma(y) - x in S iff
    sigma(x) - y in S.

    Group automorphisms are tried first, largest multiplier first for
    cyclic groups, then their compositions with translations, then the
    general search.

    Returns
    -------
    `CompatibilityResult`
    """
    members = G.connection_set(S)
    check = _additive_check(G, members)
    graph = cayley_graph(G, G.as_elements(members))
    for sigma in candidates:
        sigma = tuple(int(x) for x in sigma)
        if check(sigma):
            return CompatibilityResult(True, sigma, 'cayley_search')

    try:
        automs = automorphisms(G)
    except SizeLimitError as exc:
        log.warning("Skipping automorphism candidates: {}".format(exc))
        automs = []
    for alpha in reversed(automs):
        if check(alpha.permutation):
            return CompatibilityResult(True, alpha.permutation,
                                       'cayley_search')
    table = G.add_table
    for alpha in reversed(automs):
        image = np.asarray(alpha.permutation)
        for c in range(1, G.order):
            sigma = tuple(int(x) for x in table[image, c])
            if check(sigma):
                return CompatibilityResult(True, sigma, 'cayley_search')

    return _search(graph, check, node_limit, (), 'cayley_search')


@dataclass
class FamilyCertificate:
    """
    Checks behind the stable circulant Cay(Z_lm, {1, -1, t, -t}) with a
    compatible adjacency matrix, where t = -1 mod l and t = 1 mod m.
    """
    l: int
    m: int
    n: int
    t: int
    connection_set: list
    non_bipartite: bool = False
    vertex_determining: bool = False
    sigma_automorphism: bool = False
    sigma_involution: bool = False
    sigma_fixes_set: bool = False
    sigma_compatible: bool = False
    connected: bool = False
    arc_transitive_by_stabilizer: bool = False
    arc_transitive: bool = False
    verdict: object = None
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {'l': self.l, 'm': self.m, 'n': self.n, 't': self.t,
                'connectionSet': list(self.connection_set),
                'nonBipartite': self.non_bipartite,
                'vertexDetermining': self.vertex_determining,
                'sigmaAutomorphism': self.sigma_automorphism,
                'sigmaInvolution': self.sigma_involution,
                'sigmaFixesSet': self.sigma_fixes_set,
                'sigmaCompatible': self.sigma_compatible,
                'connected': self.connected,
                'arcTransitiveByStabilizer': self.arc_transitive_by_stabilizer,
                'arcTransitive': self.arc_transitive,
                'verdict': self.verdict.to_dict(),
                'passed': self.passed,
                'failures': list(self.failures)}


def _check_family_parameters(l, m):
    for name, value in (('l', l), ('m', m)):
        if value <= 1:
            raise ParameterError("{} must be greater than 1, got {}"
                                 .format(name, value))
        if value % 2 == 0:
            raise ParameterError("{} must be odd, got {}".format(name, value))
    if math.gcd(l, m) != 1:
        raise CoprimalityError("l = {} and m = {} are not coprime"
                               .format(l, m))


def thm3_certificate(l, m):
    """
    Build Cay(Z_lm, {1, -1, t, -t}) and verify that it is non-bipartite,
    vertex-determining, connected, arc-transitive and stable, with x -> t x
    as a compatible involutory automorphism.

    Parameters
    ----------
    l, m : int
        Coprime odd integers greater than 1.

    Returns
    -------
    `FamilyCertificate`

    Raises
    ------
    ParameterError
        If ``l`` or ``m`` is even or at most 1.
    CoprimalityError
        If ``l`` and ``m`` share a factor.
    """
    _check_family_parameters(l, m)
    n = l * m
    t = crt_solve(-1 % l, l, 1, m)
    S = sorted({1, n - 1, t, n - t})
    G = make_cyclic(n)
    graph = cayley_graph(G, S)
    cert = FamilyCertificate(l, m, n, t, S)

    cert.non_bipartite = not is_bipartite(graph)
    cert.vertex_determining = is_vertex_determining(graph)
    sigma = tuple((t * x) % n for x in range(n))
    cert.sigma_automorphism = math.gcd(t, n) == 1
    cert.sigma_involution = (t * t) % n == 1
    cert.sigma_fixes_set = {sigma[s] for s in S} == set(S)
    cert.sigma_compatible = (_additive_check(G, S)(sigma) and
                             verify_compatible(graph, sigma))
    cert.connected = is_connected(graph)
    cert.arc_transitive_by_stabilizer = sufficient_arc_transitivity(G, S)
    cert.arc_transitive = is_arc_transitive(graph)
    cert.verdict = classify(graph)

    checks = ['non_bipartite', 'vertex_determining', 'sigma_automorphism',
              'sigma_involution', 'sigma_fixes_set', 'sigma_compatible',
              'connected', 'arc_transitive_by_stabilizer', 'arc_transitive']
    cert.failures = [name for name in checks if not getattr(cert, name)]
    if len(S) != 4:
        cert.failures.append('connection_set_size')
    if not cert.verdict.stable:
        cert.failures.append('stable')
    if cert.failures:
        log.warning("Certificate for l = {}, m = {} failed: {}"
                    .format(l, m, ', '.join(cert.failures)))
    return cert


def thm3_instances(max_order):
    """
    Pairs (l, m) with 1 < l < m, both odd and coprime, and l m at most
    ``max_order``, ordered by l m.
    """
    pairs = [(l, m) for l in range(3, max_order + 1, 2)
             for m in range(l + 2, max_order // l + 1, 2)
             if math.gcd(l, m) == 1]
    return sorted(pairs, key=lambda p: (p[0] * p[1], p[0]))
