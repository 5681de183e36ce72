import math
import itertools

import numpy as np
import pytest

from .. import conf
from ..abelian import (make_cyclic, make_product, crt_product_set,
                       set_stabilizer)
from ..autgroup import (automorphism_group, isomorphism, orbits,
                        is_arc_transitive, is_edge_transitive,
                        sufficient_arc_transitivity, is_normal_cayley)
from ..graph import (Graph, circulant, cayley_graph, complete, cycle,
                     edgeless, complete_bipartite, disjoint_union)
from ..permgroup import PermGroup
from ..survey import enumerate_connection_sets, enumerate_abelian_cayley
from ..utils import TransitivityError, SizeLimitError, ParameterError


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


def brute_force_order(graph):
    return sum(1 for p in itertools.permutations(range(graph.n))
               if graph.is_automorphism(p))


@pytest.mark.parametrize(('graph', 'order'), [
    (complete(1), 1),
    (complete(2), 2),
    (complete(5), 120),
    (cycle(7), 14),
    (edgeless(4), 24),
    (complete_bipartite(3), 72),
    (complete_bipartite(2, 3), 12),
    (disjoint_union([complete(3), complete(3)]), 72),
    (petersen(), 120),
])
def test_known_orders(graph, order):
    group = automorphism_group(graph)
    assert group.order == order
    assert all(graph.is_automorphism(g) for g in group.generators)
    # Schreier-Sims on the generators alone gives the same order
    assert PermGroup(graph.n, group.generators).order == order


def test_order_matches_brute_force_small():
    rng = np.random.default_rng(1)
    for _ in range(40):
        graph = random_graph(rng, int(rng.integers(2, 7)))
        assert automorphism_group(graph).order == brute_force_order(graph)


@pytest.mark.slow
def test_order_matches_brute_force_corpus():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        graph = random_graph(rng, n, p=float(rng.uniform(0.2, 0.8)))
        assert automorphism_group(graph).order == brute_force_order(graph)


def test_generators_are_deterministic():
    graph = circulant(12, [1, 5, 7, 11])
    first = automorphism_group(graph).generators
    second = automorphism_group(graph).generators
    assert first == second


def test_colouring():
    assert automorphism_group(cycle(4), colouring=[0, 0, 1, 1]).order == 2
    assert automorphism_group(complete(4), colouring=[0, 1, 1, 1]).order == 6
    with pytest.raises(ParameterError):
        automorphism_group(cycle(4), colouring=[0, 1])


def test_vertex_cap():
    with conf.set_temp('max_vertices', 8):
        with pytest.raises(SizeLimitError):
            automorphism_group(cycle(9))


def test_isomorphism_is_explicit():
    rng = np.random.default_rng(7)
    graph = circulant(10, [1, 3, 7, 9])
    perm = [int(x) for x in rng.permutation(10)]
    relabelled = Graph.from_edges(10, [(perm[u], perm[v])
                                       for u, v in graph.edges()])
    found = isomorphism(graph, relabelled)
    assert found is not None
    assert all(relabelled.has_edge(found[u], found[v])
               for u, v in graph.edges())
    assert isomorphism(cycle(6), disjoint_union([complete(3),
                                                 complete(3)])) is None
    assert isomorphism(cycle(5), cycle(6)) is None


def test_orbits():
    group = automorphism_group(complete_bipartite(1, 3))
    assert orbits(group) == [[0], [1, 2, 3]]
    assert len(orbits(group, 'edges')) == 1
    assert len(orbits(group, 'arcs')) == 2
    with pytest.raises(ParameterError):
        orbits(group, 'faces')
    with pytest.raises(ParameterError):
        orbits(PermGroup(4, [(1, 0, 2, 3)]), 'edges')


def test_transitivity():
    assert is_arc_transitive(cycle(5))
    assert is_arc_transitive(petersen())
    star = complete_bipartite(1, 3)
    assert is_edge_transitive(star)
    assert not is_arc_transitive(star)
    assert not is_edge_transitive(circulant(8, [1, 2, 6, 7]))
    with pytest.raises(TransitivityError):
        is_arc_transitive(edgeless(3))


def test_sufficient_arc_transitivity():
    assert sufficient_arc_transitivity(make_cyclic(15), [1, 4, 11, 14])
    assert not sufficient_arc_transitivity(make_cyclic(8), [1, 2, 6, 7])
    G = make_product([4, 4])
    S = [(2, 2), (0, 2), (1, 3), (3, 1), (0, 1), (0, 3)]
    assert is_arc_transitive(cayley_graph(G, S))


def test_normal_cayley():
    assert is_normal_cayley(make_cyclic(5), [1, 4])
    assert not is_normal_cayley(make_cyclic(4), [1, 2, 3])
    n, S = crt_product_set(3, 5, [1, 2])
    assert not is_normal_cayley(make_cyclic(n), S)


def test_stabilizer_questions_on_product_groups():
    G = make_product([2, 2])
    S = [(0, 1), (1, 0), (1, 1)]
    assert sufficient_arc_transitivity(G, S)
    assert is_normal_cayley(G, S)
    assert not is_normal_cayley(make_product([3, 3]),
                                [(a, b) for a in range(3) for b in range(3)
                                 if a or b])


@pytest.mark.slow
def test_arc_and_edge_transitivity_agree_on_circulants():
    for n in range(3, 15):
        for S in enumerate_connection_sets(n):
            graph = circulant(n, S)
            group = automorphism_group(graph)
            arcs = len(orbits(group, 'arcs')) == 1
            edges = len(orbits(group, 'edges')) == 1
            assert arcs == edges, (n, S)


def test_factorial_orders_of_complete_graphs():
    for n in range(1, 9):
        assert automorphism_group(complete(n)).order == math.factorial(n)


@pytest.mark.parametrize('order', [6, 8, 9])
def test_cayley_graph_automorphism_bounds(order):
    for G, S in enumerate_abelian_cayley(order):
        group = automorphism_group(cayley_graph(G, S))
        assert orbits(group) == [list(range(G.order))], (G, S)
        # translations and the automorphisms of G fixing S
        regular = G.order * len(set_stabilizer(G, S))
        assert group.order >= regular
        assert group.order % regular == 0, (G, S)


def test_orders_match_networkx_matcher():
    nx = pytest.importorskip('networkx')
    for n in range(3, 8):
        for S in enumerate_connection_sets(n):
            graph = circulant(n, S)
            g = nx.from_numpy_array(graph.adjacency_matrix())
            matcher = nx.algorithms.isomorphism.GraphMatcher(g, g)
            count = sum(1 for _ in matcher.isomorphisms_iter())
            assert automorphism_group(graph).order == count, (n, S)


def test_orders_match_sympy():
    combinatorics = pytest.importorskip('sympy.combinatorics')
    graphs = [petersen(), complete_bipartite(3)]
    graphs += [circulant(12, S) for S in enumerate_connection_sets(12)]
    for graph in graphs:
        group = automorphism_group(graph)
        sympy_group = combinatorics.PermutationGroup(
            [combinatorics.Permutation(list(g)) for g in group.generators])
        assert sympy_group.order() == group.order
