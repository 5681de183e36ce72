import math
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

if __package__ == '':
    __package__ = 'circstab'
from . import conf
from .utils import (InvalidGroupError, CoprimalityError, ConnectionSetError,
                    check_size)


class AbelianGroup:
    """
    A finite abelian group given by its invariant factors.

    Elements are tuples of residues, one per factor, enumerated in
    lexicographic order. An element is addressed by its position in that
    order, so for a cyclic group the index of an element is its residue.
    """

    def __init__(self, invariant_factors):
        """
        Parameters
        ----------
        invariant_factors : sequence of int
            The orders of the cyclic factors, each at least 2. An empty
            sequence gives the trivial group.
        """
        factors = tuple(int(d) for d in invariant_factors)
        for d in factors:
            if d < 2:
                raise InvalidGroupError("Invalid factor {}: every factor "
                                        "must be at least 2".format(d))
        self.invariant_factors = factors
        self.order = math.prod(factors)

        # Last coordinate varies fastest.
        strides = []
        step = 1
        for d in reversed(factors):
            strides.append(step)
            step *= d
        self._strides = np.array(strides[::-1], dtype=np.int64)
        self._moduli = np.array(factors, dtype=np.int64)

    def __repr__(self):
        if not self.invariant_factors:
            return 'Z1'
        return 'x'.join('Z{}'.format(d) for d in self.invariant_factors)

    def __eq__(self, other):
        return (isinstance(other, AbelianGroup) and
                self.invariant_factors == other.invariant_factors)

    def __hash__(self):
        return hash(self.invariant_factors)

    def __len__(self):
        return self.order

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def is_cyclic(self):
        return self.rank <= 1

    @property
    def descriptor(self):
        """
        The group as typed on the command line, e.g. ``'12'`` or ``'4x4'``.
        """
        return 'x'.join(str(d) for d in self.invariant_factors) or '1'

    @cached_property
    def coordinates(self):
        """
        `~numpy.ndarray` of shape (order, rank) listing every element.
        """
        if not self.invariant_factors:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.invariant_factors).reshape(self.rank, -1)
        return grids.T.astype(np.int64)

    def _encode(self, coords):
        return (np.mod(coords, self._moduli) * self._strides).sum(axis=-1)

    @cached_property
    def add_table(self):
        """
        Cayley table of the group on element indices.
        """
        c = self.coordinates
        return self._encode(c[:, None, :] + c[None, :, :])

    @cached_property
    def neg_table(self):
        return self._encode(-self.coordinates)

    def add(self, i, j):
        return int(self.add_table[i, j])

    def neg(self, i):
        return int(self.neg_table[i])

    def sub(self, i, j):
        return int(self.add_table[i, self.neg_table[j]])

    def element_order(self, i):
        orders = [d // math.gcd(int(e), d)
                  for e, d in zip(self.coordinates[i], self.invariant_factors)]
        return math.lcm(*orders) if orders else 1

    def generators(self):
        """
        Indices of the canonical generators, one per invariant factor.
        """
        return [int(s) for s in self._strides]

    def elements(self):
        return [GroupElement(self, tuple(int(e) for e in row))
                for row in self.coordinates]

    def element(self, i):
        return GroupElement(self, tuple(int(e) for e in self.coordinates[i]))

    def index(self, x):
        """
        Index of an element given as an int, a tuple of residues or a
        `GroupElement`. Values are reduced modulo the factors; a bare int
        addresses the residue of a cyclic group.
        """
        if isinstance(x, GroupElement):
            x = x.coordinates
        if isinstance(x, (int, np.integer)):
            if self.rank > 1:
                raise ConnectionSetError("Element {} of {} must be a tuple "
                                         "of residues".format(x, self), x)
            return int(x) % self.order if self.order > 1 else 0
        x = tuple(int(e) for e in x)
        if len(x) != self.rank:
            raise ConnectionSetError("Element {} does not match the factors "
                                     "of {}".format(x, self), x)
        return int(self._encode(np.array(x, dtype=np.int64)))

    def label(self, i):
        if self.rank <= 1:
            return str(i)
        return '({})'.format(','.join(str(int(e))
                                      for e in self.coordinates[i]))

    def connection_set(self, S):
        """
        Validate a connection set and return its sorted element indices.

        Raises
        ------
        ConnectionSetError
            If ``S`` is empty, contains zero or is not inverse-closed.
        """
        indices = sorted({self.index(s) for s in S})
        if not indices:
            raise ConnectionSetError("Empty connection set")
        if indices[0] == 0:
            raise ConnectionSetError("Connection set contains the identity",
                                     self.label(0))
        members = set(indices)
        for s in indices:
            if self.neg(s) not in members:
                raise ConnectionSetError(
                    "Connection set is not inverse-closed: the inverse of {} "
                    "is missing".format(self.label(s)), self.label(s))
        return indices

    def as_elements(self, indices):
        """
        The elements at the given indices in the form `index` accepts:
        residues for a cyclic group, coordinate tuples otherwise.
        """
        if self.rank <= 1:
            return [int(i) for i in indices]
        return [tuple(int(e) for e in self.coordinates[i]) for i in indices]

    def inverse_orbits(self):
        """
        The orbits {x, -x} of negation on the nonzero elements, ordered by
        their smallest index.
        """
        seen = set()
        result = []
        for x in range(1, self.order):
            if x in seen:
                continue
            orbit = sorted({x, self.neg(x)})
            seen.update(orbit)
            result.append(orbit)
        return result


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coordinates: tuple

    def __post_init__(self):
        reduced = tuple(int(e) % d for e, d in
                        zip(self.coordinates, self.group.invariant_factors))
        object.__setattr__(self, 'coordinates', reduced)

    @property
    def index(self):
        return self.group.index(self.coordinates)

    def __add__(self, other):
        return GroupElement(self.group, tuple(
            a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coordinates))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(self.coordinates)

    def __repr__(self):
        return self.group.label(self.index)


class GroupAutomorphism:
    """
    An automorphism of an `AbelianGroup`, stored as the images of the
    canonical generators together with the induced permutation of element
    indices.
    """

    def __init__(self, group, images, permutation):
        self.group = group
        self.images = tuple(images)
        self.permutation = tuple(permutation)

    def __call__(self, i):
        return self.permutation[i]

    def __eq__(self, other):
        return (isinstance(other, GroupAutomorphism) and
                self.group == other.group and
                self.permutation == other.permutation)

    def __hash__(self):
        return hash(self.permutation)

    def __repr__(self):
        return 'GroupAutomorphism({}, {})'.format(
            self.group, [self.group.label(i) for i in self.images])

    @property
    def multiplier(self):
        """
        For a cyclic group, the unit g with x -> g x.
        """
        if self.group.rank != 1:
            raise InvalidGroupError("Multipliers are defined for cyclic "
                                    "groups only")
        return self.images[0]

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.permutation))

    def apply_to_set(self, S):
        return {self.permutation[s] for s in S}

    def preserves_addition(self):
        table = self.group.add_table
        perm = np.array(self.permutation)
        return bool((perm[table] == table[perm][:, perm]).all())


def make_cyclic(n):
    """
    The cyclic group Z_n; Z_1 is the trivial group.
    """
    if n <= 0:
        raise InvalidGroupError("Invalid order {}: must be positive"
                                .format(n))
    return AbelianGroup(() if n == 1 else (n,))


def make_product(factors):
    """
    The direct product of cyclic groups of the given orders.
    """
    for d in factors:
        if d < 2:
            raise InvalidGroupError("Invalid factor {}: every factor must "
                                    "be at least 2".format(d))
    return AbelianGroup(factors)


def units_mod(n):
    """
    Sorted multiplicative units modulo ``n``.
    """
    if n < 2:
        raise InvalidGroupError("units_mod requires n >= 2, got {}".format(n))
    return [g for g in range(1, n) if math.gcd(g, n) == 1]


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def crt_solve(r1, m1, r2, m2):
    """
    The unique t in 0..m1*m2-1 with t = r1 (mod m1) and t = r2 (mod m2).

    Raises
    ------
    CoprimalityError
        If the moduli are not coprime.
    """
    if math.gcd(m1, m2) != 1:
        raise CoprimalityError("Moduli {} and {} are not coprime"
                               .format(m1, m2))
    if m2 == 1:
        return r1 % m1
    k = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return (r1 + m1 * k) % (m1 * m2)


def automorphisms(G):
    """
    All automorphisms of ``G``.

    Cyclic groups are handled through their units; other groups by trying
    every choice of generator images whose orders divide the factors.

    Raises
    ------
    SizeLimitError
        If ``G`` is larger than ``conf.max_group_order`` or the candidate
        count exceeds ``conf.max_automorphism_candidates``.
    """
    check_size(G.order, conf.max_group_order, 'group')
    if G.rank == 0:
        return [GroupAutomorphism(G, (), (0,))]
    if G.rank == 1:
        n = G.order
        return [GroupAutomorphism(G, (g,), [(g * x) % n for x in range(n)])
                for g in units_mod(n)]

    factors = G.invariant_factors
    candidates = [[x for x in range(G.order) if d % G.element_order(x) == 0]
                  for d in factors]
    check_size(math.prod(len(c) for c in candidates),
               conf.max_automorphism_candidates, 'automorphism candidate set')

    coords = G.coordinates
    result = []
    for images in itertools.product(*candidates):
        image_coords = coords[list(images)]
        perm = G._encode(coords @ image_coords)
        if len(np.unique(perm)) != G.order:
            continue
        result.append(GroupAutomorphism(G, images, perm.tolist()))
    return result


def set_stabilizer(G, S):
    """
    Automorphisms of ``G`` fixing the connection set ``S`` setwise.

    Parameters
    ----------
    G : `AbelianGroup`
    S : iterable
        Elements of ``G`` other than zero.
    """
    members = {G.index(s) for s in S}
    if 0 in members:
        raise ConnectionSetError("Connection set contains the identity",
                                 G.label(0))
    return [alpha for alpha in automorphisms(G)
            if alpha.apply_to_set(members) == members]


def subgroups_cyclic(n):
    """
    Every subgroup of Z_n, one per divisor, smallest first.
    """
    if n < 1:
        raise InvalidGroupError("Invalid order {}".format(n))
    return [frozenset(range(0, n, d)) for d in reversed(divisors(n))]


def _factorize(n):
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _partitions(e, largest=None):
    if e == 0:
        yield []
        return
    if largest is None or largest > e:
        largest = e
    for first in range(largest, 0, -1):
        for rest in _partitions(e - first, first):
            yield [first] + rest


def abelian_groups(order):
    """
    One group per isomorphism class of abelian groups of the given order,
    written with invariant factors d1 | d2 | ... | dk.
    """
    if order < 1:
        raise InvalidGroupError("Invalid order {}".format(order))
    primes = sorted(_factorize(order).items())
    choices = [list(_partitions(e)) for _, e in primes]
    groups = []
    for combo in itertools.product(*choices):
        length = max((len(part) for part in combo), default=0)
        factors = [1] * length
        for (p, _), part in zip(primes, combo):
            for i, exponent in enumerate(part):
                factors[length - 1 - i] *= p ** exponent
        groups.append(AbelianGroup(factors))
    return groups


def crt_product_set(h, k, T):
    """
    The connection set T x (Z_k minus 0) of Z_h x Z_k, carried to Z_hk by
    x -> (x mod h, x mod k).

    Returns
    -------
    n : int
        The order h * k.
    S : list of int
    """
    if math.gcd(h, k) != 1:
        raise CoprimalityError("Orders {} and {} are not coprime"
                               .format(h, k))
    T = {t % h for t in T}
    n = h * k
    return n, [x for x in range(1, n) if x % h in T and x % k != 0]
