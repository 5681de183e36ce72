import pytest

from .. import conf
from ..abelian import (AbelianGroup, GroupElement, make_cyclic, make_product,
                       units_mod, divisors, crt_solve, automorphisms,
                       set_stabilizer, subgroups_cyclic, abelian_groups,
                       crt_product_set)
from ..survey import enumerate_abelian_cayley
from ..utils import (InvalidGroupError, CoprimalityError, ConnectionSetError,
                     SizeLimitError)


def test_cyclic_group():
    G = make_cyclic(12)
    assert G.order == 12
    assert G.is_cyclic
    assert G.descriptor == '12'
    assert G.add(7, 9) == 4
    assert G.neg(5) == 7
    assert G.sub(3, 5) == 10
    assert G.element_order(4) == 3
    assert make_cyclic(1).order == 1


@pytest.mark.parametrize('n', [0, -3])
def test_cyclic_invalid(n):
    with pytest.raises(InvalidGroupError):
        make_cyclic(n)


def test_product_group():
    G = make_product([4, 4])
    assert G.order == 16
    assert G.rank == 2
    assert not G.is_cyclic
    i = G.index((1, 3))
    j = G.index((3, 2))
    assert G.element(G.add(i, j)).coordinates == (0, 1)
    assert G.label(G.neg(i)) == '(3,1)'
    assert G.element_order(G.index((2, 2))) == 2
    with pytest.raises(InvalidGroupError):
        make_product([4, 1])


def test_group_elements():
    G = make_product([2, 3])
    x = G.element(G.index((1, 2)))
    assert isinstance(x, GroupElement)
    assert (x + x).coordinates == (0, 1)
    assert (-x).coordinates == (1, 1)
    assert (x - x).is_zero()
    assert len(G.elements()) == 6


def test_units_and_divisors():
    assert units_mod(12) == [1, 5, 7, 11]
    assert units_mod(2) == [1]
    with pytest.raises(InvalidGroupError):
        units_mod(1)
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize(('l', 'm', 't'), [(3, 5, 11), (3, 7, 8), (5, 7, 29)])
def test_crt_solve(l, m, t):
    assert crt_solve(-1 % l, l, 1, m) == t


def test_crt_not_coprime():
    with pytest.raises(CoprimalityError):
        crt_solve(1, 6, 1, 9)


def test_connection_set_validation():
    assert make_cyclic(12).connection_set([9, 3, 8, 4, 3]) == [3, 4, 8, 9]
    assert make_cyclic(15).connection_set([1, -1, 11, -11]) == [1, 4, 11, 14]
    with pytest.raises(ConnectionSetError) as exc:
        make_cyclic(5).connection_set([1])
    assert exc.value.element == '1'
    with pytest.raises(ConnectionSetError):
        make_cyclic(5).connection_set([0, 1, 4])
    with pytest.raises(ConnectionSetError):
        make_cyclic(5).connection_set([])


def test_product_needs_tuples():
    G = make_product([4, 4])
    with pytest.raises(ConnectionSetError):
        G.index(3)
    with pytest.raises(ConnectionSetError):
        G.index((1, 2, 3))


def test_inverse_orbits():
    assert make_cyclic(5).inverse_orbits() == [[1, 4], [2, 3]]
    assert make_cyclic(4).inverse_orbits() == [[1, 3], [2]]
    assert len(make_product([2, 2]).inverse_orbits()) == 3


def test_automorphisms_cyclic():
    autos = automorphisms(make_cyclic(12))
    assert sorted(a.multiplier for a in autos) == [1, 5, 7, 11]
    assert all(a.preserves_addition() for a in autos)


@pytest.mark.parametrize(('factors', 'count'),
                         [([2, 2], 6), ([2, 4], 8), ([3, 3], 48),
                          ([4, 4], 96)])
def test_automorphisms_product(factors, count):
    autos = automorphisms(make_product(factors))
    assert len(autos) == count
    assert len(set(autos)) == count
    assert all(a.preserves_addition() for a in autos)
    assert sum(a.is_identity() for a in autos) == 1


def test_automorphisms_cap():
    with conf.set_temp('max_group_order', 10):
        with pytest.raises(SizeLimitError):
            automorphisms(make_cyclic(12))


def test_set_stabilizer():
    stab = set_stabilizer(make_cyclic(15), [1, 4, 11, 14])
    assert sorted(a.multiplier for a in stab) == [1, 4, 11, 14]
    with pytest.raises(ConnectionSetError):
        set_stabilizer(make_cyclic(15), [0, 1, 14])


@pytest.mark.parametrize('order', [8, 9, 12])
def test_set_stabilizer_order_divides_group_automorphisms(order):
    total = {}
    for G, S in enumerate_abelian_cayley(order):
        if G not in total:
            total[G] = len(automorphisms(G))
        assert total[G] % len(set_stabilizer(G, S)) == 0, (G, S)


def test_as_elements():
    assert make_cyclic(5).as_elements([1, 4]) == [1, 4]
    G = make_product([2, 4])
    members = G.connection_set([(0, 1), (0, 3), (1, 0)])
    assert G.as_elements(members) == [(0, 1), (0, 3), (1, 0)]
    assert G.connection_set(G.as_elements(members)) == members


def test_subgroups_cyclic():
    subgroups = subgroups_cyclic(12)
    assert len(subgroups) == 6
    assert subgroups[0] == frozenset({0})
    assert subgroups[1] == frozenset({0, 6})
    assert subgroups[-1] == frozenset(range(12))


@pytest.mark.parametrize(('order', 'descriptors'), [
    (1, {'1'}),
    (9, {'9', '3x3'}),
    (12, {'12', '2x6'}),
    (16, {'16', '2x8', '4x4', '2x2x4', '2x2x2x2'}),
])
def test_abelian_groups(order, descriptors):
    groups = abelian_groups(order)
    assert {G.descriptor for G in groups} == descriptors
    for G in groups:
        assert G.order == order
        factors = G.invariant_factors
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_crt_product_set():
    n, S = crt_product_set(3, 5, [1, 2])
    assert n == 15
    assert S == [1, 2, 4, 7, 8, 11, 13, 14]
    with pytest.raises(CoprimalityError):
        crt_product_set(3, 6, [1, 2])


def test_group_equality():
    assert make_cyclic(6) == AbelianGroup([6])
    assert make_cyclic(6) != make_product([2, 3])
    assert len({make_cyclic(6), AbelianGroup((6,))}) == 1
