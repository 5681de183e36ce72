import math

import pytest

from ..abelian import make_product
from ..compat import verify_compatible
from ..graph import (circulant, cayley_graph, complete, cycle,
                     disjoint_union, is_connected, is_bipartite)
from ..permgroup import identity_perm
from ..skeleton import boolean_square, cartesian_skeleton
from ..stability import (Status, classify, is_stable, tf_witness,
                         verify_tf_pair, compatible_from_tf)
from ..survey import enumerate_connection_sets
from ..utils import DegreeMismatchError, ParameterError

S24 = [2, 3, 8, 9, 10, 14, 15, 16, 21, 22]
ARC_TRANSITIVE_4X4_SET = [(2, 2), (0, 2), (1, 3), (3, 1), (0, 1), (0, 3)]


@pytest.mark.parametrize('n', range(3, 9))
def test_complete_graphs_are_stable(n):
    verdict = classify(complete(n))
    assert verdict.stable
    assert verdict.aut_order == math.factorial(n)
    assert verdict.dcover_aut_order == 2 * math.factorial(n)
    assert verdict.trivial_reasons == []
    assert verdict.tf_witness is None


def test_is_stable():
    assert not is_stable(cycle(4))
    assert is_stable(cycle(5))
    assert is_stable(circulant(12, [3, 4, 8, 9]))


def test_nontrivially_unstable_circulant():
    verdict = classify(circulant(24, S24))
    assert verdict.status == Status.NONTRIVIALLY_UNSTABLE
    assert verdict.nontrivially_unstable
    assert verdict.connected and not verdict.bipartite
    assert verdict.vertex_determining
    assert verdict.dcover_aut_order > 2 * verdict.aut_order
    alpha, beta = verdict.tf_witness
    assert alpha != beta
    assert verify_tf_pair(circulant(24, S24), alpha, beta)


def test_arc_transitive_product_group_graph():
    graph = cayley_graph(make_product([4, 4]), ARC_TRANSITIVE_4X4_SET)
    assert classify(graph).status == Status.NONTRIVIALLY_UNSTABLE


def test_trivially_unstable_reasons():
    verdict = classify(disjoint_union([complete(3), complete(3)]))
    assert verdict.status == Status.TRIVIALLY_UNSTABLE
    assert verdict.trivial_reasons == ['disconnected']

    verdict = classify(cycle(4))
    assert verdict.status == Status.TRIVIALLY_UNSTABLE
    assert 'bipartite' in verdict.trivial_reasons
    assert 'not_vertex_determining' in verdict.trivial_reasons

    verdict = classify(circulant(8, [1, 3, 5, 7]))
    assert verdict.status == Status.TRIVIALLY_UNSTABLE
    assert 'bipartite' in verdict.trivial_reasons


def test_verdict_to_dict():
    d = classify(cycle(4)).to_dict()
    assert d['status'] == 'trivially_unstable'
    assert d['autOrder'] == '8'
    assert d['dcoverAutOrder'] == '128'
    assert d['bipartite'] is True
    assert len(d['tfWitness']) == 2


def test_tf_pairs_by_hand():
    c4 = cycle(4)
    shift = (2, 3, 0, 1)
    assert verify_tf_pair(c4, identity_perm(4), shift)
    assert verify_tf_pair(c4, shift, shift)
    assert not verify_tf_pair(complete(3), (0, 1, 2), (1, 0, 2))
    with pytest.raises(DegreeMismatchError):
        verify_tf_pair(c4, (0, 1, 2), (0, 1, 2))
    with pytest.raises(ParameterError):
        verify_tf_pair(c4, (0, 0, 1, 2), shift)


def test_tf_witness():
    assert tf_witness(complete(3)) is None
    alpha, beta = tf_witness(cycle(4))
    assert alpha != beta
    assert verify_tf_pair(cycle(4), alpha, beta)


def test_compatible_from_tf():
    c4 = cycle(4)
    sigma = compatible_from_tf(identity_perm(4), (2, 3, 0, 1))
    assert sigma == (2, 3, 0, 1)
    assert verify_compatible(c4, sigma)


def _neighbourhoods_follow(graph, alpha, beta):
    # N(w^alpha) = N(w)^beta and N(w^beta) = N(w)^alpha
    for w in range(graph.n):
        nbrs = graph.neighbours(w)
        if sorted(graph.neighbours(alpha[w])) != sorted(beta[v] for v in nbrs):
            return False
        if sorted(graph.neighbours(beta[w])) != sorted(alpha[v] for v in nbrs):
            return False
    return True


def test_tf_pairs_move_neighbourhoods():
    for graph in [cycle(4), circulant(24, S24),
                  cayley_graph(make_product([4, 4]), ARC_TRANSITIVE_4X4_SET)]:
        alpha, beta = tf_witness(graph)
        assert _neighbourhoods_follow(graph, alpha, beta)
    assert not _neighbourhoods_follow(complete(3), (0, 1, 2), (1, 0, 2))


def test_double_cover_order_is_a_multiple():
    graphs = [circulant(n, S) for n in range(2, 11)
              for S in enumerate_connection_sets(n)]
    graphs += [cycle(4), disjoint_union([complete(3), complete(3)]),
               cayley_graph(make_product([2, 4]), [(0, 1), (0, 3), (1, 0)])]
    for graph in graphs:
        verdict = classify(graph)
        assert verdict.dcover_aut_order % (2 * verdict.aut_order) == 0


@pytest.mark.slow
def test_instability_matches_tf_witness_on_circulants():
    for n in range(3, 15):
        for S in enumerate_connection_sets(n):
            graph = circulant(n, S)
            if not is_connected(graph) or is_bipartite(graph):
                continue
            verdict = classify(graph)
            witness = tf_witness(graph)
            assert verdict.stable == (witness is None), (n, S)
            if witness is None:
                continue
            alpha, beta = witness
            assert verify_tf_pair(graph, alpha, beta)
            assert _neighbourhoods_follow(graph, alpha, beta)
            assert verify_compatible(graph, compatible_from_tf(alpha, beta))
            # both halves of the pair act on the Boolean square and skeleton
            square = boolean_square(graph)
            skeleton = cartesian_skeleton(graph)
            for perm in witness:
                assert square.is_automorphism(perm)
                assert skeleton.is_automorphism(perm)


@pytest.mark.slow
@pytest.mark.parametrize('p', [3, 5, 7, 11, 13])
def test_prime_order_circulants_are_stable(p):
    for S in enumerate_connection_sets(p):
        assert is_stable(circulant(p, S)), S


def test_status_is_a_string():
    assert Status('stable') is Status.STABLE
    assert Status.NONTRIVIALLY_UNSTABLE == 'nontrivially_unstable'
