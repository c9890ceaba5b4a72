"""Built-in partial rings, test corpora and exhaustive enumerators."""

from __future__ import annotations

import itertools
import random
import re
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .core import UNDEF, Kind, PartialMagma, PartialRing, canonical_key, product
from .errors import StructureError


def ring_from_ops(names: Sequence[str], add: Callable[[int, int], int | None],
                  mul: Callable[[int, int], int], *, zero=0, one=1, label="") -> PartialRing:
    n = len(names)
    add_t = [[UNDEF if (v := add(a, b)) is None else v for b in range(n)] for a in range(n)]
    mul_t = [[mul(a, b) for b in range(n)] for a in range(n)]
    return PartialRing(names, zero, add_t, one=one, mul=mul_t, label=label)


def zmod(k: int) -> PartialRing:
    if k < 1:
        raise StructureError("ZMOD needs k >= 1")
    if k == 1:
        return zero_ring()
    return ring_from_ops([str(i) for i in range(k)], lambda a, b: (a + b) % k,
                         lambda a, b: a * b % k, label=f"Z/{k}")


def zero_ring() -> PartialRing:
    return PartialRing(["0"], 0, [[0]], one=0, mul=[[0]], label="0")


def f1() -> PartialRing:
    return ring_from_ops(["0", "1"], lambda a, b: None if a and b else a + b,
                         lambda a, b: a * b, label="F1")


def boolean() -> PartialRing:
    return ring_from_ops(["0", "1"], lambda a, b: a | b, lambda a, b: a & b, label="BOOL")


def pointed_monoid_ring(names: Sequence[str], mul: Callable[[int, int], int], *, label="") -> PartialRing:
    """A multiplicative monoid with absorbing zero (index 0) and only trivial sums."""
    return ring_from_ops(names, lambda a, b: b if a == 0 else (a if b == 0 else None), mul, label=label)


def f1_squared() -> PartialRing:
    """{0, 1, -1} with trivial addition; a partial field with two units."""
    sign = {0: 0, 1: 1, 2: -1}
    back = {0: 0, 1: 1, -1: 2}
    return pointed_monoid_ring(["0", "1", "-1"], lambda a, b: back[sign[a] * sign[b]], label="F1SQ")


def dual_numbers() -> PartialRing:
    """{0, 1, e} with e*e = 0 and trivial addition."""
    def mul(a, b):
        if a == 1:
            return b
        if b == 1:
            return a
        return 0

    return pointed_monoid_ring(["0", "1", "e"], mul, label="DUAL")


def chain3() -> PartialRing:
    """The distributive lattice 0 < h < 1 with max as sum and min as product."""
    order = [0, 2, 1]  # rank of index: 0 -> 0, 1 -> 2 (top), 2 -> 1 (middle)
    by_rank = {r: i for i, r in enumerate(order)}
    return ring_from_ops(["0", "1", "h"], lambda a, b: by_rank[max(order[a], order[b])],
                         lambda a, b: by_rank[min(order[a], order[b])], label="CHAIN3")


_BUILTINS: dict[str, Callable[[], PartialRing]] = {
    "F1": f1,
    "F2": lambda: zmod(2),
    "BOOL": boolean,
    "ZERO": zero_ring,
    "F1SQ": f1_squared,
    "DUAL": dual_numbers,
    "CHAIN3": chain3,
}

_ZMOD = re.compile(r"^(?:ZMOD\((\d+)\)|Z/?(\d+))$", re.IGNORECASE)


def builtin(name: str) -> PartialRing:
    """Resolve a built-in ring name; ``A*B`` builds products."""
    name = name.strip()
    if "*" in name:
        parts = [builtin(p) for p in name.split("*")]
        R = parts[0]
        for P in parts[1:]:
            R = product(R, P, Kind.RING)
        return R
    key = name.upper()
    if key in _BUILTINS:
        return _BUILTINS[key]()
    m = _ZMOD.match(name)
    if m:
        return zmod(int(m.group(1) or m.group(2)))
    raise StructureError(f"unknown built-in ring {name!r}")


def builtin_names() -> list[str]:
    return sorted(_BUILTINS) + ["ZMOD(k)"]


# --------------------------------------------------------------------------
# corpora


def ring_corpus(max_size: int = 6) -> list[PartialRing]:
    names = ["ZERO", "F1", "F2", "BOOL", "Z3", "Z4", "Z5", "Z6", "F1SQ", "DUAL", "CHAIN3",
             "F1*F1", "F1*F2", "F1*BOOL", "F2*F2", "BOOL*BOOL", "F1*Z3", "BOOL*Z3", "F1*F1SQ",
             "F1*DUAL"]
    out = []
    for nm in names:
        R = builtin(nm)
        if R.size <= max_size:
            object.__setattr__(R, "label", nm)
            out.append(R)
    return out


def small_ring_corpus() -> list[PartialRing]:
    """Corpus rings with at most three elements."""
    return [R for R in ring_corpus(3)]


def partial_fields() -> list[PartialRing]:
    return [builtin(n) for n in ("F1", "F2", "Z3", "F1SQ", "Z5")]


def _assoc_ok(add, n) -> bool:
    for a in range(1, n):
        ra = add[a]
        for b in range(1, n):
            ab = ra[b]
            for c in range(1, n):
                bc = add[b][c]
                left = add[ab][c] if ab != UNDEF else UNDEF
                right = ra[bc] if bc != UNDEF else UNDEF
                if left != right:
                    return False
    return True


@lru_cache(maxsize=None)
def all_partial_monoids(size: int) -> tuple[PartialMagma, ...]:
    """Every partial monoid on ``size`` elements up to isomorphism (zero = 0)."""
    if size < 1:
        return ()
    names = [str(i) for i in range(size)]
    slots = [(i, j) for i in range(1, size) for j in range(i, size)]
    seen: dict = {}
    for vals in itertools.product(range(UNDEF, size), repeat=len(slots)):
        add = [[UNDEF] * size for _ in range(size)]
        for a in range(size):
            add[0][a] = add[a][0] = a
        for (i, j), v in zip(slots, vals):
            add[i][j] = add[j][i] = v
        if not _assoc_ok(add, size):
            continue
        M = PartialMagma(names, 0, add, label=f"M{size}")
        key = canonical_key(M)
        if key not in seen:
            seen[key] = M
    out = []
    for k, M in enumerate(sorted(seen.values(), key=canonical_key)):
        object.__setattr__(M, "label", f"M{size}.{k}")
        out.append(M)
    return tuple(out)


def all_two_element_tables() -> Iterator[PartialMagma]:
    """All 3^4 addition tables on {0, 1} with 0 as the designated zero."""
    for vals in itertools.product((UNDEF, 0, 1), repeat=4):
        add = [list(vals[:2]), list(vals[2:])]
        yield PartialMagma(["0", "1"], 0, add)


def _random_downset(rng: random.Random, dim: int, size: int) -> list[tuple[int, ...]]:
    origin = (0,) * dim
    cells = [origin]
    have = {origin}
    while len(cells) < size:
        frontier = set()
        for v in cells:
            for i in range(dim):
                w = v[:i] + (v[i] + 1,) + v[i + 1:]
                if w in have:
                    continue
                if all(w[k] == 0 or (w[:k] + (w[k] - 1,) + w[k + 1:]) in have for k in range(dim)):
                    frontier.add(w)
        cells.append(rng.choice(sorted(frontier)))
        have.add(cells[-1])
    return cells


def random_partial_monoid(rng: random.Random, size: int) -> PartialMagma:
    """A down-set of N^k times a cyclic group, summable when the sum stays inside.

    ``x <= x + y`` makes every down-set closed under sub-sums, so axiom (c)
    holds by construction.
    """
    divisors = [m for m in (1, 2, 3) if size % m == 0]
    m = rng.choice(divisors)
    dim = rng.choice((1, 2, 3))
    cells = _random_downset(rng, dim, size // m)
    elems = [(v, g) for v in cells for g in range(m)]
    pos = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    add = [[UNDEF] * n for _ in range(n)]
    for i, (v, g) in enumerate(elems):
        for j, (w, h) in enumerate(elems):
            s = (tuple(x + y for x, y in zip(v, w)), (g + h) % m)
            if s in pos:
                add[i][j] = pos[s]
    names = ["".join(map(str, v)) + (f"g{g}" if m > 1 else "") for v, g in elems]
    return PartialMagma(names, 0, add, label=f"rand{size}")
