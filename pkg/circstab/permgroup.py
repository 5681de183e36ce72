"""
Permutations of 0..n-1 and permutation groups held as a stabilizer chain
built with the deterministic Schreier-Sims algorithm.

A permutation is a tuple ``p`` with ``p[i]`` the image of ``i``. Products
act left to right: ``compose(p, q)`` applies ``p`` first, then ``q``.
"""

from collections import deque
from functools import cached_property

if __package__ == '':
    __package__ = 'circstab'
from .utils import DegreeMismatchError, ParameterError


def check_perm(p):
    """
    Raise `ParameterError` if ``p`` is not a permutation of 0..len(p)-1.
    """
    if sorted(p) != list(range(len(p))):
        raise ParameterError('not a permutation: {}'.format(list(p)))


def identity_perm(n):
    return tuple(range(n))


def is_identity(p):
    return all(i == j for i, j in enumerate(p))


def compose(p, q):
    return tuple(q[i] for i in p)


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_from_cycles(n, cycles):
    """
    Build a permutation of 0..n-1 from disjoint cycles.
    """
    p = list(range(n))
    for cyc in cycles:
        for i, j in zip(cyc, cyc[1:] + cyc[:1]):
            p[i] = j
    return tuple(p)


def cycles(p):
    """
    Nontrivial cycles of ``p``, each starting from its smallest point.
    """
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def fmt_perm(p):
    return ''.join('({})'.format(' '.join(str(i) for i in cyc))
                   for cyc in cycles(p)) or '()'


class _StabilizerChain:
    """
    One level of a stabilizer chain: the group generated by ``gens`` plus
    the generators of ``stab``, the stabilizer of ``basepoint``.
    """

    def __init__(self, degree, base_hint=()):
        self.degree = degree
        self.base_hint = list(base_hint)
        self.basepoint = None
        self.gens = []
        # point -> coset representative u with u[basepoint] == point
        self.transversal = {}
        self.stab = None
        self._done = set()

    def generators(self):
        if self.stab is None:
            return list(self.gens)
        return self.stab.generators() + self.gens

    def order(self):
        if self.basepoint is None:
            return 1
        return len(self.transversal) * self.stab.order()

    def levels(self):
        level = self
        while level.basepoint is not None:
            yield level
            level = level.stab

    def sift(self, p):
        if self.basepoint is None:
            return p
        u = self.transversal.get(p[self.basepoint])
        if u is None:
            return p
        return self.stab.sift(compose(p, inverse(u)))

    def add_gen(self, gen):
        residue = self.sift(gen)
        if not is_identity(residue):
            self.add_nonmember_gen(residue)

    def add_nonmember_gen(self, gen):
        if self.basepoint is None:
            moved = [i for i in range(self.degree) if gen[i] != i]
            hinted = [b for b in self.base_hint if gen[b] != b]
            self.basepoint = hinted[0] if hinted else moved[0]
            rest = [b for b in self.base_hint if b != self.basepoint]
            self.transversal = {self.basepoint: identity_perm(self.degree)}
            self.stab = _StabilizerChain(self.degree, rest)

        if gen[self.basepoint] == self.basepoint:
            self.stab.add_nonmember_gen(gen)
        else:
            self.gens.append(gen)

        self._extend_orbit()
        self._add_schreier_gens()

    def _extend_orbit(self):
        gens = self.generators()
        queue = deque(sorted(self.transversal))
        while queue:
            a = queue.popleft()
            u = self.transversal[a]
            for g in gens:
                b = g[a]
                if b not in self.transversal:
                    self.transversal[b] = compose(u, g)
                    queue.append(b)

    def _add_schreier_gens(self):
        # The transversal only grows, so processed pairs stay valid.
        for g in self.generators():
            for a in sorted(self.transversal):
                if (g, a) in self._done:
                    continue
                self._done.add((g, a))
                u = self.transversal[a]
                v = self.transversal[g[a]]
                self.stab.add_gen(compose(compose(u, g), inverse(v)))


class PermGroup:
    """
    A permutation group of a given degree, described by generators.

    The stabilizer chain is built on first use. When the order is already
    known, for instance from the automorphism search, it can be passed in
    and questions about the order are answered without the chain.
    """

    def __init__(self, degree, generators=(), order=None, base=(), graph=None):
        """
        Parameters
        ----------
        degree : int
            The permutations act on 0..degree-1.
        generators : iterable of sequences
        order : int, optional
            The group order, if known.
        base : sequence of int, optional
            Preferred prefix of the base.
        graph : `~circstab.graph.Graph`, optional
            The graph the group acts on, used for orbits on edges and arcs.

        Raises
        ------
        DegreeMismatchError
            If a generator acts on a different number of points.
        """
        gens = []
        for g in generators:
            g = tuple(int(i) for i in g)
            if len(g) != degree:
                raise DegreeMismatchError(
                    "Generator of degree {} in a group of degree {}"
                    .format(len(g), degree))
            check_perm(g)
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = gens
        self._order = order
        self._base_hint = list(base)
        self.graph = graph

    def __repr__(self):
        return '<PermGroup degree={} generators={} order={}>'.format(
            self.degree, len(self.generators), self.order)

    @cached_property
    def chain(self):
        chain = _StabilizerChain(self.degree, self._base_hint)
        for g in self.generators:
            chain.add_gen(g)
        return chain

    @property
    def order(self):
        if self._order is None:
            self._order = self.chain.order()
        return self._order

    @property
    def base(self):
        return [level.basepoint for level in self.chain.levels()]

    @property
    def transversal_sizes(self):
        return [len(level.transversal) for level in self.chain.levels()]

    def strong_generators(self):
        return self.chain.generators()

    def contains(self, p):
        p = tuple(p)
        if len(p) != self.degree:
            return False
        return is_identity(self.chain.sift(p))

    __contains__ = contains

    def orbit(self, point):
        seen = {point}
        queue = deque([point])
        while queue:
            a = queue.popleft()
            for g in self.generators:
                b = g[a]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def orbits(self):
        """
        Orbits on 0..degree-1, ordered by their smallest point.
        """
        seen = set()
        out = []
        for point in range(self.degree):
            if point not in seen:
                orbit = self.orbit(point)
                seen.update(orbit)
                out.append(orbit)
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree if self.degree else True

    def elements(self, limit=10**6):
        """
        Every element of the group by closure under the generators.

        Raises
        ------
        ParameterError
            If more than ``limit`` elements are found.
        """
        start = identity_perm(self.degree)
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = compose(p, g)
                if q not in seen:
                    if len(seen) >= limit:
                        raise ParameterError("Group has more than {} "
                                             "elements".format(limit))
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def to_dict(self):
        return {'degree': self.degree,
                'generators': [list(g) for g in self.generators],
                'order': str(self.order)}


def group_order(generators, degree=None):
    """
    Order of the group generated by the given permutations.

    Raises
    ------
    DegreeMismatchError
        If the permutations do not share a degree.
    """
    generators = [tuple(g) for g in generators]
    if degree is None:
        degree = len(generators[0]) if generators else 0
    return PermGroup(degree, generators).order
