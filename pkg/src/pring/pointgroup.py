"""Finite partial groups given by an element list and a partial product table."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence


@dataclass
class PointGroup:
    """Elements with a partial product; ``table[g][h]`` is an index or None."""

    elements: list[Hashable]
    labels: list[str]
    table: list[list[int | None]]
    unit: int
    inverses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    escapes: int = 0   # defined products that left the element set
    label: str = ""

    @classmethod
    def build(cls, elements: Sequence[Hashable], product: Callable[[Hashable, Hashable], Hashable | None],
              unit: Hashable, *, labels=None, inverse: Callable[[Hashable], Hashable] | None = None,
              label: str = "") -> "PointGroup":
        elements = list(elements)
        pos = {e: i for i, e in enumerate(elements)}
        escapes = 0
        table: list[list[int | None]] = []
        for g in elements:
            row = []
            for h in elements:
                p = product(g, h)
                if p is not None and p not in pos:
                    escapes += 1
                    p = None
                row.append(None if p is None else pos[p])
            table.append(row)
        labels = list(labels) if labels is not None else [str(e) for e in elements]
        G = cls(elements, labels, table, pos[unit], escapes=escapes, label=label)
        if inverse is not None:
            G.inverses = {i: (pos[inverse(e)],) for i, e in enumerate(elements) if inverse(e) in pos}
        else:
            G.inverses = G.inverse_witnesses()
        return G

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, g: int, h: int) -> int | None:
        return self.table[g][h]

    def inverse_witnesses(self) -> dict[int, tuple[int, ...]]:
        u = self.unit
        return {g: tuple(h for h in range(self.order) if self.table[g][h] == u and self.table[h][g] == u)
                for g in range(self.order)}

    def defined_fraction(self) -> float:
        n = self.order
        if n == 0:
            return 1.0
        return sum(x is not None for row in self.table for x in row) / (n * n)

    def is_total(self) -> bool:
        return all(x is not None for row in self.table for x in row)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[g][h] == self.table[h][g] for g in range(n) for h in range(n))

    def cayley(self) -> list[list[str]]:
        return [["-" if x is None else self.labels[x] for x in row] for row in self.table]


@dataclass(frozen=True)
class GroupCheck:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


def is_partial_group(G: PointGroup) -> GroupCheck:
    """Unit multiplies with everything and every element has a two-sided inverse."""
    u = G.unit
    for g in range(G.order):
        if G.table[g][u] != g or G.table[u][g] != g:
            return GroupCheck(False, f"unit fails at {G.labels[g]}")
    for g in range(G.order):
        if not any(G.table[g][h] == u and G.table[h][g] == u for h in range(G.order)):
            return GroupCheck(False, f"{G.labels[g]} has no inverse")
    return GroupCheck(True)


def is_group(G: PointGroup) -> GroupCheck:
    chk = is_partial_group(G)
    if not chk:
        return chk
    n = G.order
    t = G.table
    for g in range(n):
        for h in range(n):
            if t[g][h] is None:
                return GroupCheck(False, f"{G.labels[g]}*{G.labels[h]} undefined")
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    return GroupCheck(False, f"associativity fails at {G.labels[a]},{G.labels[b]},{G.labels[c]}")
    return GroupCheck(True)


def isomorphic_groups(G: PointGroup, H: PointGroup) -> dict[int, int] | None:
    """A bijection preserving the (total) product, by backtracking; None if none exists."""
    n = G.order
    if n != H.order:
        return None
    f = {G.unit: H.unit}
    used = {H.unit}
    order = [g for g in range(n) if g != G.unit]

    def consistent():
        for a, fa in f.items():
            for b, fb in f.items():
                ab = G.table[a][b]
                hab = H.table[fa][fb]
                if (ab is None) != (hab is None):
                    return False
                if ab is not None and ab in f and f[ab] != hab:
                    return False
        return True

    def rec(i):
        if i == len(order):
            return True
        g = order[i]
        for h in range(n):
            if h in used:
                continue
            f[g] = h
            used.add(h)
            if consistent() and rec(i + 1):
                return True
            del f[g]
            used.discard(h)
        return False

    return dict(f) if rec(0) else None
