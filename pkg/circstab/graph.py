from collections import deque

import numpy as np

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .abelian import make_cyclic, crt_solve
from .utils import (GraphError, ParameterError, ParityError, check_size,
                    iter_bits, map_bits)


class Graph:
    """
    A simple undirected graph on vertices 0..n-1 with one neighbour bitset
    per vertex.
    """

    def __init__(self, n, adjacency, labels=None):
        """
        Parameters
        ----------
        n : int
            Number of vertices, at least 1.
        adjacency : sequence of int
            ``adjacency[u]`` has bit ``v`` set iff u ~ v.
        labels : list of str, optional
            Vertex names kept for DOT export and reports. Defaults to the
            vertex indices.
        """
        if n < 1:
            raise GraphError("A graph needs at least one vertex")
        adjacency = tuple(int(a) for a in adjacency)
        if len(adjacency) != n:
            raise GraphError("Expected {} neighbour sets, got {}"
                             .format(n, len(adjacency)))
        full = (1 << n) - 1
        for u, nbrs in enumerate(adjacency):
            if nbrs & ~full:
                raise GraphError("Vertex {} has a neighbour outside 0..{}"
                                 .format(u, n - 1))
            if nbrs >> u & 1:
                raise GraphError("Loop at vertex {}".format(u))
            for v in iter_bits(nbrs):
                if not adjacency[v] >> u & 1:
                    raise GraphError("Adjacency is not symmetric at ({}, {})"
                                     .format(u, v))
        self.n = n
        self.adjacency = adjacency
        if labels is None:
            labels = [str(u) for u in range(n)]
        elif len(labels) != n:
            raise GraphError("Expected {} labels, got {}"
                             .format(n, len(labels)))
        self.labels = [str(label) for label in labels]

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        adjacency = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError("Loop at vertex {}".format(u))
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        return cls(n, adjacency, labels)

    @classmethod
    def from_matrix(cls, matrix, labels=None):
        """
        Build a graph from a symmetric 0/1 `~numpy.ndarray`.
        """
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise GraphError("Adjacency matrix must be square")
        adjacency = [sum(1 << int(v) for v in np.flatnonzero(row))
                     for row in matrix]
        return cls(matrix.shape[0], adjacency, labels)

    def __repr__(self):
        return '<Graph n={} edges={}>'.format(self.n, self.num_edges)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n and
                self.adjacency == other.adjacency)

    def __hash__(self):
        return hash(self.adjacency)

    def adjacency_matrix(self, dtype=np.int64):
        matrix = np.zeros((self.n, self.n), dtype=dtype)
        for u, nbrs in enumerate(self.adjacency):
            matrix[u, list(iter_bits(nbrs))] = 1
        return matrix

    def neighbours(self, u):
        return list(iter_bits(self.adjacency[u]))

    def has_edge(self, u, v):
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, u):
        return self.adjacency[u].bit_count()

    def degrees(self):
        return [nbrs.bit_count() for nbrs in self.adjacency]

    @property
    def num_edges(self):
        return sum(self.degrees()) // 2

    def edges(self):
        """
        Edges (u, v) with u < v in lexicographic order.
        """
        return [(u, v) for u, nbrs in enumerate(self.adjacency)
                for v in iter_bits(nbrs >> (u + 1) << (u + 1))]

    def arcs(self):
        return [(u, v) for u, nbrs in enumerate(self.adjacency)
                for v in iter_bits(nbrs)]

    def is_automorphism(self, perm):
        """
        Whether the vertex permutation ``perm`` maps edges onto edges.
        """
        return all(map_bits(nbrs, perm) == self.adjacency[perm[u]]
                   for u, nbrs in enumerate(self.adjacency))

    def without_edges(self, edges):
        adjacency = list(self.adjacency)
        for u, v in edges:
            adjacency[u] &= ~(1 << v)
            adjacency[v] &= ~(1 << u)
        return Graph(self.n, adjacency, self.labels)

    def to_dict(self):
        return {'n': self.n, 'edges': [list(e) for e in self.edges()]}

    def to_dot(self, name='G'):
        """
        Graphviz text with one labelled node and one edge per line.
        """
        lines = ['graph {} {{'.format(name)]
        for u, label in enumerate(self.labels):
            lines.append('  {} [label="{}"];'.format(u, label))
        for u, v in self.edges():
            lines.append('  {} -- {};'.format(u, v))
        lines.append('}')
        return '\n'.join(lines) + '\n'


def cayley_graph(G, S):
    """
    The Cayley graph of an abelian group: x ~ y iff y - x lies in ``S``.

    Parameters
    ----------
    G : `~circstab.abelian.AbelianGroup`
    S : iterable
        Connection set, as residues (cyclic groups) or tuples of residues.

    Raises
    ------
    ConnectionSetError
        If ``S`` is empty, contains zero or is not inverse-closed.
    """
    check_size(G.order, conf.max_vertices)
    members = G.connection_set(S)
    table = G.add_table
    adjacency = [sum(1 << int(y) for y in table[x, members])
                 for x in range(G.order)]
    return Graph(G.order, adjacency, [G.label(x) for x in range(G.order)])


def circulant(n, S):
    return cayley_graph(make_cyclic(n), S)


def double_cover(graph):
    """
    The canonical double cover, graph x K2. Vertex (u, x) has index
    u + x * n.
    """
    n = graph.n
    adjacency = ([nbrs << n for nbrs in graph.adjacency] +
                 list(graph.adjacency))
    labels = ['({},{})'.format(label, x) for x in (0, 1)
              for label in graph.labels]
    return Graph(2 * n, adjacency, labels)


def double_cover_as_circulant(n, S):
    """
    For odd ``n``, the connection set of Z_2n whose circulant is the
    double cover of circulant(n, S): each s is lifted to the odd residue
    congruent to it modulo n.

    Returns
    -------
    order : int
        2 * n
    T : list of int
        Sorted connection set of Z_2n.
    """
    if n % 2 == 0:
        raise ParityError("The double cover is a circulant of Z_2n only for "
                          "odd n, got n = {}".format(n))
    members = make_cyclic(n).connection_set(S)
    return 2 * n, sorted(crt_solve(s, n, 1, 2) for s in members)


def _labels(first, second):
    return ['({},{})'.format(a, b) for a in first.labels
            for b in second.labels]


def direct_product(first, second):
    """
    (u, x) ~ (v, y) iff u ~ v and x ~ y. The pair (u, x) has index
    u * len(second) + x.
    """
    matrix = np.kron(first.adjacency_matrix(), second.adjacency_matrix())
    return Graph.from_matrix(matrix, _labels(first, second))


def lexicographic_product(first, second):
    """
    (u, x) ~ (v, y) iff u ~ v, or u = v and x ~ y.
    """
    ones = np.ones((second.n, second.n), dtype=np.int64)
    matrix = (np.kron(first.adjacency_matrix(), ones) +
              np.kron(np.eye(first.n, dtype=np.int64),
                      second.adjacency_matrix()))
    return Graph.from_matrix(matrix, _labels(first, second))


def cartesian_product(first, second):
    """
    (u, x) ~ (v, y) iff u ~ v and x = y, or u = v and x ~ y.
    """
    matrix = (np.kron(first.adjacency_matrix(),
                      np.eye(second.n, dtype=np.int64)) +
              np.kron(np.eye(first.n, dtype=np.int64),
                      second.adjacency_matrix()))
    return Graph.from_matrix(matrix, _labels(first, second))


def minus_product_identity_check(graph, d):
    """
    Check that graph x K_d is isomorphic to graph[empty_d] with the d
    diagonal copies of ``graph`` removed.
    """
    if d <= 1:
        raise ParameterError("d must be greater than 1, got {}".format(d))
    left = direct_product(graph, complete(d))
    lex = lexicographic_product(graph, edgeless(d))
    diagonal = [(u * d + x, v * d + x) for u, v in graph.edges()
                for x in range(d)]
    return are_isomorphic(left, lex.without_edges(diagonal))


def complete(n):
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << u) for u in range(n)])


def cycle(n):
    if n < 3:
        raise ParameterError("A cycle needs at least 3 vertices, got {}"
                             .format(n))
    return Graph.from_edges(n, [(u, (u + 1) % n) for u in range(n)])


def edgeless(n):
    return Graph(n, [0] * n)


def complete_bipartite(m, n=None):
    if n is None:
        n = m
    left = ((1 << m) - 1)
    right = ((1 << n) - 1) << m
    return Graph(m + n, [right] * m + [left] * n)


def disjoint_union(graphs):
    adjacency = []
    labels = []
    offset = 0
    for i, graph in enumerate(graphs):
        adjacency.extend(nbrs << offset for nbrs in graph.adjacency)
        labels.extend('{}:{}'.format(i, label) for label in graph.labels)
        offset += graph.n
    return Graph(offset, adjacency, labels)


def components(graph):
    """
    Vertex sets of the connected components, as bitsets, in order of their
    smallest vertex.
    """
    remaining = (1 << graph.n) - 1
    result = []
    while remaining:
        start = remaining & -remaining
        reached = frontier = start
        while frontier:
            grown = 0
            for u in iter_bits(frontier):
                grown |= graph.adjacency[u]
            frontier = grown & ~reached
            reached |= frontier
        result.append(reached)
        remaining &= ~reached
    return result


def is_connected(graph):
    return len(components(graph)) == 1


def bipartition(graph):
    """
    A 2-colouring of the vertices, or None if the graph is not bipartite.
    """
    colour = [None] * graph.n
    for start in range(graph.n):
        if colour[start] is not None:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in iter_bits(graph.adjacency[u]):
                if colour[v] is None:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return colour


def is_bipartite(graph):
    return bipartition(graph) is not None


def is_vertex_determining(graph):
    return len(set(graph.adjacency)) == graph.n


def _brute_isomorphism(first, second):
    n = first.n
    mapping = [None] * n
    used = 0

    def extend(u):
        nonlocal used
        if u == n:
            return True
        for image in range(n):
            if used >> image & 1 or first.degree(u) != second.degree(image):
                continue
            if any(first.has_edge(u, w) != second.has_edge(image, mapping[w])
                   for w in range(u)):
                continue
            mapping[u] = image
            used |= 1 << image
            if extend(u + 1):
                return True
            used &= ~(1 << image)
        mapping[u] = None
        return False

    return list(mapping) if extend(0) else None


def are_isomorphic(first, second, method='refinement'):
    """
    Decide whether two graphs are isomorphic.

    Parameters
    ----------
    first, second : `Graph`
    method : {'refinement', 'brute'}
        ``'refinement'`` uses the partition backtracking of
        `~circstab.autgroup.isomorphism`; ``'brute'`` tries vertex
        assignments directly and is meant for graphs of at most ten
        vertices.

    Raises
    ------
    SizeLimitError
        If either graph exceeds ``conf.max_isomorphism_vertices``.
    """
    check_size(max(first.n, second.n), conf.max_isomorphism_vertices)
    if (first.n != second.n or first.num_edges != second.num_edges or
            sorted(first.degrees()) != sorted(second.degrees())):
        return False
    if method == 'brute':
        return _brute_isomorphism(first, second) is not None
    if method != 'refinement':
        raise ParameterError("Unknown isomorphism method '{}'".format(method))
    from .autgroup import isomorphism
    return isomorphism(first, second) is not None
