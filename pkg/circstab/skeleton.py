"""
The Boolean square of a graph and its Cartesian skeleton.
"""

if __package__ == '':
    __package__ = 'circstab'
from .graph import Graph


def _proper_subset(a, b):
    return a & ~b == 0 and a != b


def boolean_square(graph):
    """
    The graph on the same vertices with u ~ v, u != v, iff u and v have a
    common neighbour. Loops are left out.
    """
    adj = graph.adjacency
    square = []
    for u, nu in enumerate(adj):
        row = 0
        for v, nv in enumerate(adj):
            if v != u and nu & nv:
                row |= 1 << v
        square.append(row)
    return Graph(graph.n, square, graph.labels)


def _clause(adj, u, v, w):
    nu, nv, nw = adj[u], adj[v], adj[w]
    return (_proper_subset(nu & nv, nu & nw) or
            (_proper_subset(nu, nw) and _proper_subset(nw, nv)))


def dispensable_edges(graph):
    """
    Edges {u, v} of the Boolean square for which some vertex w, possibly
    u or v, satisfies

    * N(u) & N(v) < N(u) & N(w), or N(u) < N(w) < N(v), and
    * N(v) & N(u) < N(v) & N(w), or N(v) < N(w) < N(u),

    with < the proper subset relation.

    Returns
    -------
    list of tuple
        Edges (u, v) with u < v, in lexicographic order.
    """
    adj = graph.adjacency
    vertices = range(graph.n)
    return [(u, v) for u, v in boolean_square(graph).edges()
            if any(_clause(adj, u, v, w) and _clause(adj, v, u, w)
                   for w in vertices)]


def cartesian_skeleton(graph):
    """
    The Boolean square with every dispensable edge removed.
    """
    return boolean_square(graph).without_edges(dispensable_edges(graph))
