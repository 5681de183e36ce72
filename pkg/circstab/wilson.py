"""
Wilson's arithmetic conditions on a circulant Cay(Z_n, S) that were put
forward as sufficient for instability, and the corrected form of the
second one.

All arithmetic uses residues 0..n-1; the parity of an element is the
parity of its residue.
"""

import math
from dataclasses import dataclass, field

if __package__ == '':
    __package__ = 'circstab'
from .abelian import make_cyclic, divisors, units_mod


@dataclass
class ConditionResult:
    """
    One condition: whether it holds, every parameter value that satisfies
    it, and whether it holds only because its quantifier ranges over
    nothing.
    """
    name: str
    parameter: str
    holds: bool = False
    witnesses: list = field(default_factory=list)
    vacuous: bool = False
    details: dict = field(default_factory=dict)

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self):
        result = {'holds': self.holds, self.parameter: self.witness,
                  'vacuous': self.vacuous, 'witnesses': list(self.witnesses)}
        if self.details:
            result['details'] = {str(k): v for k, v in self.details.items()}
        return result


@dataclass
class ConditionReport:
    n: int
    connection_set: list
    c1: ConditionResult
    c2: ConditionResult
    c2prime: ConditionResult
    c3: ConditionResult
    c4: ConditionResult

    @property
    def any(self):
        return self.c1.holds or self.c2.holds or self.c3.holds or self.c4.holds

    @property
    def any_corrected(self):
        return (self.c1.holds or self.c2prime.holds or self.c3.holds or
                self.c4.holds)

    def results(self):
        return [self.c1, self.c2, self.c2prime, self.c3, self.c4]

    def to_dict(self):
        report = {r.name: r.to_dict() for r in self.results()}
        report['any'] = self.any
        report['anyCorrected'] = self.any_corrected
        return report


def _members(n, S):
    return make_cyclic(n).connection_set(S)


def check_c1(n, S):
    """
    n is even and some even divisor a of n with 2 <= a < n satisfies
    s + a in S for every even s in S.
    """
    members = _members(n, S)
    result = ConditionResult('c1', 'a')
    if n % 2:
        return result
    present = set(members)
    evens = [s for s in members if s % 2 == 0]
    result.witnesses = [a for a in divisors(n) if a % 2 == 0 and a < n
                        and all((s + a) % n in present for s in evens)]
    result.holds = bool(result.witnesses)
    result.vacuous = result.holds and not evens
    return result


def _c2_divisors(n, members):
    present = set(members)
    odds = [s for s in members if s % 2]
    return odds, [b for b in divisors(n) if b % 2 and
                  all((s + 2 * b) % n in present for s in odds)]


def check_c2(n, S):
    """
    4 divides n and some odd divisor b of n satisfies s + 2b in S for
    every odd s in S.
    """
    members = _members(n, S)
    result = ConditionResult('c2', 'b')
    if n % 4:
        return result
    odds, result.witnesses = _c2_divisors(n, members)
    result.holds = bool(result.witnesses)
    result.vacuous = result.holds and not odds
    return result


def check_c2prime(n, S):
    """
    The second condition with the extra clause: for the same b, s + b is in
    S for every s in S with s = 0 or s = -b modulo 4.
    """
    members = _members(n, S)
    result = ConditionResult('c2prime', 'b')
    if n % 4:
        return result
    present = set(members)
    odds, candidates = _c2_divisors(n, members)
    result.witnesses = [
        b for b in candidates
        if all((s + b) % n in present for s in members
               if s % 4 == 0 or s % 4 == (-b) % 4)]
    result.holds = bool(result.witnesses)
    result.vacuous = result.holds and not odds
    return result


def _c3_data(n, members, d):
    present = set(members)
    subgroup = range(0, n, d)
    R = [j for j in members if any((j + h) % n not in present
                                   for h in subgroup)]
    D = math.gcd(*R) if R else 0
    return R, D


def check_c3(n, S):
    """
    n is even and some subgroup H of Z_n makes R = {j in S : j + H not
    contained in S} nonempty, with D = gcd(R) > 1 and j / D odd for every
    j in R.

    Witnesses are the generators d of the subgroups H = <d>.
    """
    members = _members(n, S)
    result = ConditionResult('c3', 'h')
    if n % 2:
        return result
    for d in reversed(divisors(n)):
        R, D = _c3_data(n, members, d)
        if R and D > 1 and all((j // D) % 2 for j in R):
            result.witnesses.append(d)
            result.details[d] = {'R': R, 'D': D}
    result.holds = bool(result.witnesses)
    return result


def check_c4(n, S):
    """
    n is even and some unit g modulo n satisfies g s + n/2 in S for every
    s in S.
    """
    members = _members(n, S)
    result = ConditionResult('c4', 'g')
    if n % 2:
        return result
    present = set(members)
    half = n // 2
    result.witnesses = [g for g in units_mod(n)
                        if all((g * s + half) % n in present
                               for s in members)]
    result.holds = bool(result.witnesses)
    return result


def check_all(n, S):
    """
    Evaluate every condition for Cay(Z_n, S).

    Returns
    -------
    `ConditionReport`
    """
    members = _members(n, S)
    return ConditionReport(n, members, check_c1(n, members),
                           check_c2(n, members), check_c2prime(n, members),
                           check_c3(n, members), check_c4(n, members))


def recheck(n, S, result):
    """
    Re-run the defining check of ``result`` with each of its witnesses
    alone. Returns True when every witness satisfies the definition.
    """
    members = _members(n, S)
    present = set(members)
    for w in result.witnesses:
        if result.name == 'c1':
            ok = (n % w == 0 and w % 2 == 0 and w < n and
                  all((s + w) % n in present for s in members if s % 2 == 0))
        elif result.name in ('c2', 'c2prime'):
            ok = (n % 4 == 0 and n % w == 0 and w % 2 == 1 and
                  all((s + 2 * w) % n in present for s in members if s % 2))
            if result.name == 'c2prime':
                ok = ok and all((s + w) % n in present for s in members
                                if s % 4 == 0 or s % 4 == (-w) % 4)
        elif result.name == 'c3':
            R, D = _c3_data(n, members, w)
            ok = bool(R) and D > 1 and all((j // D) % 2 for j in R)
        else:
            ok = (math.gcd(w, n) == 1 and
                  all((w * s + n // 2) % n in present for s in members))
        if not ok:
            return False
    return True
