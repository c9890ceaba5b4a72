"""Brute-force reference implementations used only by the tests.

Everything here works straight from the definitions by exhaustive search,
without going through the library's search or closure code.
"""

import itertools
from functools import lru_cache

from pring.core import UNDEF, PartialMagma, PartialRing


def bracket_sums(A: PartialMagma, ms) -> set:
    """Values of every bracketing of every ordering of ``ms`` (None for undefined)."""

    @lru_cache(maxsize=None)
    def go(t):
        if len(t) == 1:
            return frozenset([t[0]])
        out = set()
        idx = range(len(t))
        for r in range(1, len(t)):
            for left in itertools.combinations(idx, r):
                if 0 not in left:
                    continue   # each split once
                L = tuple(sorted(t[i] for i in left))
                R = tuple(sorted(t[i] for i in idx if i not in left))
                for x in go(L):
                    for y in go(R):
                        if x is None or y is None:
                            out.add(None)
                        else:
                            s = A.add[x][y]
                            out.add(None if s == UNDEF else s)
        return frozenset(out)

    ms = tuple(sorted(ms))
    if not ms:
        return {A.zero}
    return set(go(ms))


def is_ideal_brute(A: PartialRing, S) -> bool:
    S = set(S)
    if A.zero not in S:
        return False
    for a in S:
        for b in S:
            s = A.add[a][b]
            if s != UNDEF and s not in S:
                return False
        if any(A.mul[x][a] not in S for x in A.elements):
            return False
    return True


def ideals_brute(A: PartialRing) -> set[frozenset]:
    out = set()
    for bits in itertools.product((0, 1), repeat=A.size):
        S = frozenset(a for a in A.elements if bits[a])
        if is_ideal_brute(A, S):
            out.add(S)
    return out


def primes_brute(A: PartialRing) -> set[frozenset]:
    out = set()
    for I in ideals_brute(A):
        if len(I) == A.size:
            continue
        if all(a in I or b in I for a in A.elements for b in A.elements if A.mul[a][b] in I):
            out.add(I)
    return out


def radical_brute(A: PartialRing, I) -> frozenset:
    out = set()
    for a in A.elements:
        x = a
        for _ in range(A.size + 1):
            if x in I:
                out.add(a)
                break
            x = A.mul[x][a]
    return frozenset(out)


def is_hom_brute(A: PartialMagma, B: PartialMagma, f, ring=False) -> bool:
    if f[A.zero] != B.zero:
        return False
    for a in A.elements:
        for b in A.elements:
            s = A.add[a][b]
            if s != UNDEF and B.add[f[a]][f[b]] != f[s]:
                return False
    if ring:
        if f[A.one] != B.one:
            return False
        if any(f[A.mul[a][b]] != B.mul[f[a]][f[b]] for a in A.elements for b in A.elements):
            return False
    return True


def homs_brute(A: PartialMagma, B: PartialMagma, ring=False) -> list[tuple[int, ...]]:
    return [f for f in itertools.product(B.elements, repeat=A.size) if is_hom_brute(A, B, f, ring)]


def isomorphic_brute(A: PartialMagma, B: PartialMagma, ring=False) -> bool:
    if A.size != B.size:
        return False
    return any(is_hom_brute(A, B, p, ring) and is_hom_brute(B, A, _inverse(p), ring)
               for p in itertools.permutations(B.elements))


def _inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)
