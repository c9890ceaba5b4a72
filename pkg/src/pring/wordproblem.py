"""Bounded word problems in finitely presented commutative monoids.

Words are count vectors over the generators.  Equality is searched
bidirectionally through the rewrite graph with a word-length bound; the
answer is tri-state because the search is budgeted.  ``DISTINCT`` means the
bounded component of one side was exhausted without meeting the other.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from . import config
from .core import UNDEF, Kind, PartialMagma, checked
from .errors import BudgetExceeded, CrossCheckFailure

log = logging.getLogger(__name__)

Vec = tuple[int, ...]

LENGTH_SLACK = 4


class Verdict(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WordResult:
    verdict: Verdict
    states: int
    path: tuple[Vec, ...] = ()

    def __bool__(self):
        return self.verdict is Verdict.EQUAL


@dataclass(frozen=True)
class MonoidPresentation:
    """Commutative monoid on ``generators`` modulo ``rules`` (pairs of words)."""

    generators: tuple[str, ...]
    rules: tuple[tuple[Vec, Vec], ...]
    moves: tuple[tuple[Vec, Vec], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        moves = set()
        for lhs, rhs in self.rules:
            if lhs != rhs:
                moves.add((lhs, rhs))
                moves.add((rhs, lhs))
        object.__setattr__(self, "moves", tuple(sorted(moves)))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def unit(self, i: int) -> Vec:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def word(self, letters: Iterable[int]) -> Vec:
        v = [0] * self.rank
        for i in letters:
            v[i] += 1
        return tuple(v)

    def letters(self, w: Vec) -> list[int]:
        return [i for i, c in enumerate(w) for _ in range(c)]

    def show(self, w: Vec, zero="0", sep="+") -> str:
        parts = [self.generators[i] for i in self.letters(w)]
        return sep.join(parts) if parts else zero

    def neighbours(self, w: Vec, bound: int):
        n = sum(w)
        for take, give in self.moves:
            if n - sum(take) + sum(give) > bound:
                continue
            if all(x >= t for x, t in zip(w, take)):
                yield tuple(x - t + g for x, t, g in zip(w, take, give))


def add_vec(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def word_equal(P: MonoidPresentation, w1: Vec, w2: Vec, *, max_states: int | None = None,
               bound: int | None = None) -> WordResult:
    """Bidirectional breadth-first search for a rewrite path from w1 to w2."""
    max_states = config.MAX_STATES if max_states is None else max_states
    if w1 == w2:
        return WordResult(Verdict.EQUAL, 1, (w1,))
    if bound is None:
        bound = max(sum(w1), sum(w2)) + LENGTH_SLACK
    parents = ({w1: None}, {w2: None})
    queues = (deque([w1]), deque([w2]))
    states = 2
    while True:
        side = 0 if len(queues[0]) <= len(queues[1]) else 1
        if not queues[side]:
            return WordResult(Verdict.DISTINCT, states)
        mine, other = parents[side], parents[1 - side]
        for _ in range(len(queues[side])):
            w = queues[side].popleft()
            for u in P.neighbours(w, bound):
                if u in mine:
                    continue
                mine[u] = w
                if u in other:
                    return WordResult(Verdict.EQUAL, states, _join(parents, u, side))
                states += 1
                if states > max_states:
                    return WordResult(Verdict.UNKNOWN, states)
                queues[side].append(u)
        if not queues[side]:
            return WordResult(Verdict.DISTINCT, states)


def _join(parents, meet, side):
    def chain(par, w):
        out = []
        while w is not None:
            out.append(w)
            w = par[w]
        return out

    a = chain(parents[side], meet)
    b = chain(parents[1 - side], meet)
    path = list(reversed(a)) + b[1:]
    if side == 1:
        path.reverse()
    return tuple(path)


def bounded_component(P: MonoidPresentation, w: Vec, bound: int, max_states: int | None = None) -> set[Vec] | None:
    """All words reachable from ``w`` without exceeding ``bound``; ``None`` over budget."""
    max_states = config.MAX_STATES if max_states is None else max_states
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for u in P.neighbours(x, bound):
            if u not in seen:
                seen.add(u)
                if len(seen) > max_states:
                    return None
                queue.append(u)
    return seen


# --------------------------------------------------------------------------
# the monoid completion of a partial magma


def completion_presentation(A: PartialMagma) -> MonoidPresentation:
    """Generators are the non-zero elements; ``a + b`` rewrites to ``(a+b)``."""
    gens = A.nonzero()
    pos = {a: i for i, a in enumerate(gens)}
    k = len(gens)

    def vec(*elems):
        v = [0] * k
        for e in elems:
            if e != A.zero:
                v[pos[e]] += 1
        return tuple(v)

    rules = set()
    for a in gens:
        for b in gens:
            if a <= b and A.add[a][b] != UNDEF:
                rules.add((vec(a, b), vec(A.add[a][b])))
    return MonoidPresentation(tuple(A.names[a] for a in gens), tuple(sorted(rules)))


def element_word(A: PartialMagma, P: MonoidPresentation, elems: Iterable[int]) -> Vec:
    gens = A.nonzero()
    pos = {a: i for i, a in enumerate(gens)}
    v = [0] * P.rank
    for e in elems:
        if e != A.zero:
            v[pos[e]] += 1
    return tuple(v)


def amon_equal(A: PartialMagma, w1: Sequence[int], w2: Sequence[int], *, max_states: int | None = None) -> Verdict:
    """Compare two words of the free abelian monoid on A inside A_mon."""
    P = completion_presentation(A)
    return word_equal(P, element_word(A, P, w1), element_word(A, P, w2), max_states=max_states).verdict


# --------------------------------------------------------------------------
# saturation inside a presented monoid


class ElementPool:
    """Pairwise distinct elements of a presented monoid, identified by word search."""

    def __init__(self, P: MonoidPresentation, max_states=None, max_elements=None):
        self.P = P
        self.max_states = max_states
        self.max_elements = config.MAX_ELEMENTS if max_elements is None else max_elements
        self.words: list[Vec] = []
        self.exact: dict[Vec, int] = {}

    def __len__(self):
        return len(self.words)

    def find(self, w: Vec) -> int | None:
        if w in self.exact:
            return self.exact[w]
        hit = None
        for i, u in enumerate(self.words):
            res = word_equal(self.P, w, u, max_states=self.max_states)
            if res.verdict is Verdict.UNKNOWN:
                raise BudgetExceeded(
                    f"word problem {self.P.show(w)} = {self.P.show(u)} undecided within budget",
                    used=res.states, limit=self.max_states or config.MAX_STATES)
            if res.verdict is Verdict.EQUAL:
                hit = i
                break
        if hit is not None:
            self.exact[w] = hit
        return hit

    def intern(self, w: Vec) -> int:
        i = self.find(w)
        if i is not None:
            return i
        if len(self.words) >= self.max_elements:
            raise BudgetExceeded(f"saturation exceeded {self.max_elements} elements",
                                 used=len(self.words) + 1, limit=self.max_elements)
        self.words.append(w)
        self.exact[w] = len(self.words) - 1
        return len(self.words) - 1


@dataclass
class Saturation:
    monoid: PartialMagma
    pool: ElementPool
    rounds: int


def saturate(pool: ElementPool, sums: dict[tuple[int, int], int], *, names=None, label="") -> Saturation:
    """Smallest partial submonoid containing a partial submagma of the pool's monoid.

    ``sums`` maps summable index pairs to the index of their sum.  Each round
    adds ``b+c`` for every triple with ``(a+b)+c`` defined, together with the
    pairs ``(b, c)`` and ``(a, b+c)``, until nothing changes.
    """
    zero = pool.intern(tuple(0 for _ in range(pool.P.rank)))
    sums = dict(sums)
    rounds = 0
    while True:
        rounds += 1
        changed = False
        for x in range(len(pool)):
            for pair in ((zero, x), (x, zero)):
                if pair not in sums:
                    sums[pair] = x
                    changed = True
        snapshot = list(sums.items())
        by_left: dict[int, list[tuple[int, int]]] = {}
        for (p, q), s in snapshot:
            by_left.setdefault(p, []).append((q, s))
        for (a, b), ab in snapshot:
            for c, abc in by_left.get(ab, ()):
                bc = sums.get((b, c))
                if bc is None:
                    bc = pool.intern(add_vec(pool.words[b], pool.words[c]))
                    sums[(b, c)] = sums[(c, b)] = bc
                    changed = True
                prev = sums.get((a, bc))
                if prev is None:
                    sums[(a, bc)] = sums[(bc, a)] = abc
                    changed = True
                elif prev != abc:
                    raise CrossCheckFailure(
                        f"inconsistent sums for {pool.P.show(pool.words[a])} + {pool.P.show(pool.words[bc])}")
        if not changed:
            break
    n = len(pool)
    add = [[UNDEF] * n for _ in range(n)]
    for (p, q), s in sums.items():
        add[p][q] = s
    if names is None:
        names = [pool.P.show(w) for w in pool.words]
    names = list(names) + [pool.P.show(w) for w in pool.words[len(names):]]
    names = _dedupe(names)
    M = PartialMagma(names, zero, add, label=label)
    return Saturation(checked(M, Kind.MONOID, "saturated closure"), pool, rounds)


def _dedupe(names):
    seen = {}
    out = []
    for nm in names:
        if nm in seen:
            seen[nm] += 1
            nm = f"{nm}#{seen[nm]}"
        else:
            seen[nm] = 0
        out.append(nm)
    return out
