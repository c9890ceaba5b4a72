"""Ideals, primes, radicals and localization of finite partial rings."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import config
from .core import UNDEF, Homomorphism, Kind, PartialRing, checked, require
from .errors import BudgetExceeded, CrossCheckFailure, StructureError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ideal:
    ring: PartialRing = field(compare=False, repr=False)
    members: frozenset[int]

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "Ideal") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Ideal") -> bool:
        return self.members < other.members

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.ring.size

    def names(self) -> list[str]:
        return [self.ring.names[a] for a in sorted(self.members)]

    def __str__(self):
        return "{" + ",".join(self.names()) + "}"

    def sort_key(self):
        return (len(self.members), sorted(self.members))


def _sum_closure(A: PartialRing, seed: Iterable[int]) -> frozenset[int]:
    """Close ``seed ∪ {0}`` under the defined sums of A."""
    have = {A.zero, *seed}
    queue = deque(have)
    while queue:
        x = queue.popleft()
        for y in list(have):
            s = A.add[x][y]
            if s != UNDEF and s not in have:
                have.add(s)
                queue.append(s)
    return frozenset(have)


def is_ideal(A: PartialRing, members: Iterable[int]) -> bool:
    I = set(members)
    if A.zero not in I:
        return False
    for x in I:
        for y in I:
            s = A.add[x][y]
            if s != UNDEF and s not in I:
                return False
        if any(A.mul[a][x] not in I for a in A.elements):
            return False
    return True


def ideal(A: PartialRing, members: Iterable[int]) -> Ideal:
    members = frozenset(members)
    if not is_ideal(A, members):
        raise StructureError(f"{sorted(A.names[a] for a in members)} is not an ideal")
    return Ideal(A, members)


def ideal_generated(A: PartialRing, T: Iterable[int]) -> Ideal:
    """All defined sums ``a_1 t_1 + ... + a_r t_r``."""
    prods = {A.mul[a][t] for t in T for a in A.elements}
    return Ideal(A, _sum_closure(A, prods))


def zero_ideal(A: PartialRing) -> Ideal:
    return Ideal(A, frozenset({A.zero}))


def unit_ideal(A: PartialRing) -> Ideal:
    return Ideal(A, frozenset(A.elements))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return ideal_generated(I.ring, I.members | J.members)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    A = I.ring
    return Ideal(A, _sum_closure(A, {A.mul[a][b] for a in I.members for b in J.members}))


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, I.members & J.members)


def pullback_ideal(phi: Homomorphism, J: Ideal) -> Ideal:
    return Ideal(phi.source, frozenset(a for a in phi.source.elements if phi(a) in J))


def pushforward_ideal(phi: Homomorphism, I: Ideal) -> Ideal:
    return ideal_generated(phi.target, {phi(a) for a in I.members})


def all_ideals(A: PartialRing) -> list[Ideal]:
    """Every ideal, found by walking the lattice upward from (0).

    Any ideal J containing I also contains the ideal generated by I and one
    element of J outside I, so the walk reaches every ideal.
    """
    start = ideal_generated(A, ())
    seen = {start.members}
    queue = deque([start.members])
    while queue:
        I = queue.popleft()
        for a in A.elements:
            if a in I:
                continue
            J = ideal_generated(A, I | {a}).members
            if J not in seen:
                seen.add(J)
                if len(seen) > config.MAX_CANDIDATES:
                    raise BudgetExceeded("too many ideals", used=len(seen), limit=config.MAX_CANDIDATES)
                queue.append(J)
    return sorted((Ideal(A, m) for m in seen), key=Ideal.sort_key)


def is_prime(A: PartialRing, I: Ideal) -> bool:
    if I.is_whole:
        return False
    for a in A.elements:
        if a in I:
            continue
        for b in A.elements:
            if b not in I and A.mul[a][b] in I:
                return False
    return True


def primes(A: PartialRing) -> list[Ideal]:
    return [I for I in all_ideals(A) if is_prime(A, I)]


def maximal_ideals(A: PartialRing) -> list[Ideal]:
    proper = [I for I in all_ideals(A) if not I.is_whole]
    return [I for I in proper if not any(I < J for J in proper)]


def radical(A: PartialRing, I: Ideal) -> Ideal:
    """``{a : a^r ∈ I for some r ≥ 1}``."""
    out = set()
    for a in A.elements:
        x, seen = a, set()
        while x not in seen:
            if x in I:
                out.add(a)
                break
            seen.add(x)
            x = A.mul[x][a]
    return Ideal(A, frozenset(out))


def radical_by_primes(A: PartialRing, I: Ideal) -> Ideal:
    """Intersection of the primes containing I (the whole ring if there are none)."""
    members = frozenset(A.elements)
    for P in primes(A):
        if I <= P:
            members &= P.members
    return Ideal(A, members)


# --------------------------------------------------------------------------
# localization


def is_multiplicative(A: PartialRing, S: Iterable[int]) -> bool:
    S = set(S)
    return A.one in S and all(A.mul[s][t] in S for s in S for t in S)


def multiplicative_closure(A: PartialRing, gens: Iterable[int]) -> frozenset[int]:
    S = {A.one, *gens}
    changed = True
    while changed:
        new = {A.mul[s][t] for s in S for t in S} - S
        S |= new
        changed = bool(new)
    return frozenset(S)


def multiplicative_subsets(A: PartialRing) -> list[frozenset[int]]:
    """All multiplicatively closed subsets containing 1."""
    others = [a for a in A.elements if a != A.one]
    if 2 ** len(others) > config.MAX_CANDIDATES:
        raise BudgetExceeded("too many subsets", used=2 ** len(others), limit=config.MAX_CANDIDATES)
    out = set()
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            S = frozenset((A.one, *combo))
            if is_multiplicative(A, S):
                out.add(S)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass
class LocalizedRing:
    ring: PartialRing
    lam: Homomorphism
    S: frozenset[int]
    fraction: dict[tuple[int, int], int]   # (a, s) -> class index

    def frac(self, a: int, s: int) -> int:
        return self.fraction[(a, s)]


def localize(A: PartialRing, S: Iterable[int], *, label: str | None = None) -> LocalizedRing:
    """``S^{-1}A`` with ``λ(a) = a/1``.

    ``a/s = b/t`` iff ``uta = usb`` for some u in S; a pair of fractions is
    summable when some representatives and some u make ``(uta, usb)``
    summable, and the sum is ``(uta + usb)/(ust)``.
    """
    require(A, Kind.RING, "localization base")
    S = frozenset(S)
    if not is_multiplicative(A, S):
        raise StructureError("localizing set must contain 1 and be closed under products")
    m = A.mul
    Ss = sorted(S)
    pairs = [(a, s) for a in A.elements for s in Ss]
    pos = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (a, s), (b, t) in itertools.combinations(pairs, 2):
        if any(m[m[u][t]][a] == m[m[u][s]][b] for u in Ss):
            ri, rj = find(pos[(a, s)]), find(pos[(b, t)])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = sorted({find(i) for i in range(len(pairs))})
    cls = {r: k for k, r in enumerate(roots)}
    fraction = {p: cls[find(pos[p])] for p in pairs}
    k = len(roots)
    reps: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for p in pairs:
        reps[fraction[p]].append(p)

    add = [[UNDEF] * k for _ in range(k)]
    for (a, s), (b, t) in itertools.product(pairs, repeat=2):
        p, q = fraction[(a, s)], fraction[(b, t)]
        for u in Ss:
            x, y = m[m[u][t]][a], m[m[u][s]][b]
            xy = A.add[x][y]
            if xy == UNDEF:
                continue
            r = fraction[(xy, m[m[u][s]][t])]
            if add[p][q] == UNDEF:
                add[p][q] = r
            elif add[p][q] != r:
                raise CrossCheckFailure(f"fraction sum not well defined at {a}/{s} + {b}/{t}")
    mul = [[fraction[(m[reps[p][0][0]][reps[q][0][0]], m[reps[p][0][1]][reps[q][0][1]])]
            for q in range(k)] for p in range(k)]

    def name(i):
        for a, s in reps[i]:
            if s == A.one:
                return A.names[a]
        a, s = reps[i][0]
        return f"{A.names[a]}/{A.names[s]}"

    names = [name(i) for i in range(k)]
    if label is None:
        label = f"{A.label or 'A'}[S^-1]"
    L = PartialRing(names, fraction[(A.zero, A.one)], add, one=fraction[(A.one, A.one)], mul=mul, label=label)
    checked(L, Kind.RING, "localization")
    lam = Homomorphism(A, L, tuple(fraction[(a, A.one)] for a in A.elements), Kind.RING)
    return LocalizedRing(L, lam, S, fraction)


def localize_at(A: PartialRing, P: Ideal) -> LocalizedRing:
    """``A_p``: localization at the complement of a prime."""
    return localize(A, [a for a in A.elements if a not in P], label=f"{A.label or 'A'}_p")


def localize_element(A: PartialRing, a: int) -> LocalizedRing:
    """``A_a``: invert the powers of ``a``."""
    return localize(A, multiplicative_closure(A, [a]), label=f"{A.label or 'A'}_{A.names[a]}")


# --------------------------------------------------------------------------
# predicates


def is_local(A: PartialRing) -> Ideal | None:
    """The unique maximal ideal, or None."""
    mx = maximal_ideals(A)
    return mx[0] if len(mx) == 1 else None


def is_partial_field(A: PartialRing) -> bool:
    if A.is_zero_ring():
        return False
    return all(A.inverse(a) is not None for a in A.nonzero())


def zero_ideal_is_maximal(A: PartialRing) -> bool:
    return any(I.members == {A.zero} for I in maximal_ideals(A))


def is_good(A: PartialRing, n: int) -> bool:
    from .linalg import strongly_summable, summable_tuples
    return summable_tuples(A, n) == strongly_summable(A, n)


def local_hom_check(phi: Homomorphism) -> bool:
    """``φ*(m_B) = m_A`` for a homomorphism of local rings."""
    mA, mB = is_local(phi.source), is_local(phi.target)
    if mA is None or mB is None:
        raise StructureError("both rings must be local")
    return pullback_ideal(phi, mB).members == mA.members


def inverts(phi: Homomorphism, S: Iterable[int]) -> bool:
    B = phi.target
    return all(B.inverse(phi(s)) is not None for s in S)


def ideals_as_names(ideals: Iterable[Ideal]) -> list[list[str]]:
    return [I.names() for I in ideals]
