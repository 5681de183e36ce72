"""
Automorphism groups and isomorphisms of graphs by partition refinement with
backtracking, plus orbit and transitivity questions built on them.
"""

import math
from collections import deque

from astropy import log

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .abelian import set_stabilizer
from .graph import cayley_graph
from .permgroup import PermGroup
from .utils import (TransitivityError, ParameterError, check_size, iter_bits,
                    map_bits)


class _Path:
    """
    The leftmost root-to-leaf path of a search tree: the partitions and
    traces at every node, the individualized vertices and the positions of
    the cells they were taken from.
    """

    def __init__(self, graph):
        self.graph = graph
        self.cells = []
        self.traces = []
        self.base = []
        self.targets = []

    @property
    def depth(self):
        return len(self.base)

    @property
    def leaf(self):
        return [cell.bit_length() - 1 for cell in self.cells[-1]]


class _SearchTree:
    """
    Ordered partitions of the vertices of one graph, refined to equitable
    partitions. Every step depends only on positions and neighbour counts,
    so isomorphic graphs produce identical traces.
    """

    def __init__(self, graph, colouring=None):
        self.graph = graph
        self.adj = graph.adjacency
        self.colouring = colouring
        self.nodes = 0

    def _initial_cells(self):
        if self.colouring is None:
            return [(1 << self.graph.n) - 1]
        if len(self.colouring) != self.graph.n:
            raise ParameterError("Colouring has {} entries for {} vertices"
                                 .format(len(self.colouring), self.graph.n))
        classes = {}
        for v, colour in enumerate(self.colouring):
            classes[colour] = classes.get(colour, 0) | 1 << v
        return [classes[colour] for colour in sorted(classes)]

    def refine(self, cells, queue, trace):
        while queue:
            splitter = queue.popleft()
            refined = []
            for cell in cells:
                if not cell & (cell - 1):
                    refined.append(cell)
                    continue
                groups = {}
                for v in iter_bits(cell):
                    count = (self.adj[v] & splitter).bit_count()
                    groups[count] = groups.get(count, 0) | 1 << v
                if len(groups) == 1:
                    refined.append(cell)
                    continue
                counts = sorted(groups)
                parts = [groups[c] for c in counts]
                trace.append((len(refined), tuple(counts),
                              tuple(p.bit_count() for p in parts)))
                refined.extend(parts)
                queue.extend(parts)
            cells = refined
        trace.append(tuple(cell.bit_count() for cell in cells))
        return cells

    def root(self):
        cells = self._initial_cells()
        trace = []
        cells = self.refine(cells, deque(cells), trace)
        return cells, tuple(trace)

    def individualize(self, cells, k, v):
        self.nodes += 1
        single = 1 << v
        split = cells[:k] + [single, cells[k] & ~single] + cells[k + 1:]
        trace = [k]
        split = self.refine(split, deque([single]), trace)
        return split, tuple(trace)

    @staticmethod
    def target(cells):
        """
        Position of the first largest non-singleton cell, or -1.
        """
        best, size = -1, 1
        for i, cell in enumerate(cells):
            count = cell.bit_count()
            if count > size:
                best, size = i, count
        return best

    def first_path(self):
        path = _Path(self.graph)
        cells, trace = self.root()
        path.cells.append(cells)
        path.traces.append(trace)
        while True:
            k = self.target(cells)
            if k < 0:
                break
            v = (cells[k] & -cells[k]).bit_length() - 1
            path.base.append(v)
            path.targets.append(k)
            cells, trace = self.individualize(cells, k, v)
            path.cells.append(cells)
            path.traces.append(trace)
        return path

    def descend(self, path, cells, level, v):
        """
        Search the subtree below ``cells`` after individualizing ``v`` for a
        leaf that matches the leaf of ``path``.

        Returns
        -------
        tuple or None
            The map from ``path.graph`` to this graph sending the leaf of
            ``path`` to the matching leaf.
        """
        cells, trace = self.individualize(cells, path.targets[level], v)
        if trace != path.traces[level + 1]:
            return None
        if level + 1 == path.depth:
            return self._leaf_map(path, cells)
        k = path.targets[level + 1]
        for w in iter_bits(cells[k]):
            found = self.descend(path, cells, level + 1, w)
            if found is not None:
                return found
        return None

    def _leaf_map(self, path, cells):
        perm = [0] * len(cells)
        for u, cell in zip(path.leaf, cells):
            perm[u] = cell.bit_length() - 1
        source = path.graph.adjacency
        if all(map_bits(nbrs, perm) == self.adj[perm[u]]
               for u, nbrs in enumerate(source)):
            return tuple(perm)
        return None


class _UnionFind:

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)

    def size(self, x):
        root = self.find(x)
        return sum(1 for y in range(len(self.parent)) if self.find(y) == root)


def automorphism_group(graph, colouring=None):
    """
    The automorphism group of a graph.

    Parameters
    ----------
    graph : `~circstab.graph.Graph`
    colouring : sequence, optional
        One sortable label per vertex; automorphisms must preserve the
        colour classes.

    Returns
    -------
    `~circstab.permgroup.PermGroup`
        Generators of the full group, with its exact order. The generators
        depend only on the graph and the colouring.

    Raises
    ------
    SizeLimitError
        If the graph has more than ``conf.max_vertices`` vertices.
    """
    check_size(graph.n, conf.max_vertices)
    tree = _SearchTree(graph, colouring)
    path = tree.first_path()
    classes = _UnionFind(graph.n)
    generators = []
    orbit_sizes = []

    for level in reversed(range(path.depth)):
        cells = path.cells[level]
        b = path.base[level]
        for v in iter_bits(cells[path.targets[level]]):
            if classes.find(v) == classes.find(b):
                continue
            gamma = tree.descend(path, cells, level, v)
            if gamma is not None:
                generators.append(gamma)
                for x, y in enumerate(gamma):
                    classes.union(x, y)
        orbit_sizes.append(classes.size(b))

    order = math.prod(orbit_sizes)
    log.debug("Automorphism search on {} vertices: base {}, {} nodes, "
              "{} generators, order {}".format(graph.n, path.base, tree.nodes,
                                               len(generators), order))
    return PermGroup(graph.n, generators, order=order, base=path.base,
                     graph=graph)


def isomorphism(first, second):
    """
    An isomorphism from ``first`` to ``second`` as a tuple of images, or
    None when the graphs are not isomorphic.
    """
    check_size(max(first.n, second.n), conf.max_isomorphism_vertices)
    if first.n != second.n:
        return None
    path = _SearchTree(first).first_path()
    tree = _SearchTree(second)
    cells, trace = tree.root()
    if trace != path.traces[0]:
        return None
    if path.depth == 0:
        return tree._leaf_map(path, cells)
    for v in iter_bits(cells[path.targets[0]]):
        found = tree.descend(path, cells, 0, v)
        if found is not None:
            return found
    return None


def _orbit_partition(items, image, generators):
    index = {item: i for i, item in enumerate(items)}
    classes = _UnionFind(len(items))
    for g in generators:
        for i, item in enumerate(items):
            classes.union(i, index[image(item, g)])
    grouped = {}
    for i, item in enumerate(items):
        grouped.setdefault(classes.find(i), []).append(item)
    return [grouped[root] for root in sorted(grouped)]


def orbits(group, domain='vertices', graph=None):
    """
    Orbits of a permutation group on the vertices, edges or arcs of a graph.

    Parameters
    ----------
    group : `~circstab.permgroup.PermGroup`
    domain : {'vertices', 'edges', 'arcs'}
    graph : `~circstab.graph.Graph`, optional
        Needed for edges and arcs unless ``group`` came from
        `automorphism_group`.

    Returns
    -------
    list of list
        Orbits ordered by their smallest member. Edges are (u, v) with
        u < v; arcs are ordered pairs.
    """
    if domain == 'vertices':
        return group.orbits()
    graph = graph or group.graph
    if graph is None:
        raise ParameterError("Orbits on {} need a graph".format(domain))
    if graph.n != group.degree:
        raise ParameterError("Group of degree {} does not act on a graph "
                             "with {} vertices".format(group.degree, graph.n))
    if domain == 'edges':
        return _orbit_partition(
            graph.edges(), lambda e, g: tuple(sorted((g[e[0]], g[e[1]]))),
            group.generators)
    if domain == 'arcs':
        return _orbit_partition(
            graph.arcs(), lambda a, g: (g[a[0]], g[a[1]]), group.generators)
    raise ParameterError("Unknown orbit domain '{}'".format(domain))


def _transitive_on(graph, domain):
    if graph.num_edges == 0:
        raise TransitivityError("Transitivity is undefined for a graph "
                                "without edges")
    return len(orbits(automorphism_group(graph), domain)) == 1


def is_arc_transitive(graph):
    return _transitive_on(graph, 'arcs')


def is_edge_transitive(graph):
    return _transitive_on(graph, 'edges')


def sufficient_arc_transitivity(G, S):
    """
    Whether the automorphisms of ``G`` fixing ``S`` are transitive on
    ``S``, which makes the Cayley graph arc-transitive.
    """
    members = G.connection_set(S)
    stabilizer = set_stabilizer(G, G.as_elements(members))
    images = {alpha(members[0]) for alpha in stabilizer}
    return images == set(members)


def is_normal_cayley(G, S):
    """
    Whether |Aut(Cay(G, S))| equals |G| times the number of automorphisms
    of ``G`` fixing ``S``.
    """
    elements = G.as_elements(G.connection_set(S))
    aut_order = automorphism_group(cayley_graph(G, elements)).order
    return aut_order == G.order * len(set_stabilizer(G, elements))
