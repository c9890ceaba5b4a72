"""Counting the points of projective n-space over finite partial fields.

Three independent routes: the chart formula with inclusion-exclusion, orbits
of summable tuples under unit scaling, and gluing the n+1 affine charts.
"""

from __future__ import annotations

import itertools
from math import comb

from . import config
from .commalg import is_partial_field
from .core import PartialRing, sum_multiset
from .errors import BudgetExceeded, NotAPartialField


def kappa(F: PartialRing) -> int:
    """Number of elements summable with 1."""
    return sum(F.summable(F.one, x) for x in F.elements)


def chart_count(F: PartialRing, n: int, r: int) -> int:
    """Closed form for the points of the chart intersection over r indices."""
    if not 1 <= r <= n + 1:
        raise ValueError("need 1 <= r <= n+1")
    k = kappa(F)
    return (k - 1) ** (r - 1) * k ** (n - r + 1)


def chart_points(F: PartialRing, n: int, r: int = 1) -> list[tuple[int, ...]]:
    """``(x_1..x_n)`` with ``1 + x_1 + ... + x_n`` calculable and ``x_1..x_{r-1}`` non-zero."""
    _guard(F.size ** n)
    out = []
    for xs in itertools.product(F.elements, repeat=n):
        if any(x == F.zero for x in xs[: r - 1]):
            continue
        if sum_multiset(F, (F.one, *xs)) is not None:
            out.append(xs)
    return out


def point_count_formula(F: PartialRing, n: int) -> int:
    """Inclusion-exclusion over chart intersections, checked against the geometric sum."""
    k = kappa(F)
    total = sum((-1) ** (i - 1) * comb(n + 1, i) * (k - 1) ** (i - 1) * k ** (n - i + 1)
                for i in range(1, n + 2))
    closed = n + 1 if k == 1 else (k ** (n + 1) - 1) // (k - 1)
    if total != closed:
        raise AssertionError(f"inclusion-exclusion {total} disagrees with the geometric sum {closed}")
    return total


def _guard(count):
    if count > config.MAX_CANDIDATES:
        raise BudgetExceeded(f"{count} tuples", used=count, limit=config.MAX_CANDIDATES)


def _require_field(F: PartialRing):
    if not is_partial_field(F):
        raise NotAPartialField(f"{F.label or 'ring'} is not a partial field")


def canonical(F: PartialRing, t: tuple[int, ...]) -> tuple[int, ...]:
    """Scale so the first non-zero coordinate is 1."""
    for x in t:
        if x != F.zero:
            inv = F.inverse(x)
            return tuple(F.mul[inv][y] for y in t)
    raise ValueError("zero tuple has no projective point")


def enumerate_points(F: PartialRing, n: int) -> list[tuple[int, ...]]:
    """Non-zero summable (n+1)-tuples modulo scaling by units, as canonical representatives."""
    _require_field(F)
    _guard(F.size ** (n + 1))
    pts = set()
    for t in itertools.product(F.elements, repeat=n + 1):
        if all(x == F.zero for x in t) or sum_multiset(F, t) is None:
            continue
        pts.add(canonical(F, t))
    return sorted(pts)


def chart_glue_check(F: PartialRing, n: int) -> int:
    """Glue the charts ``A_i(F)`` and return the number of glued points.

    A point of chart i is a tuple with a 1 in position i and the rest
    making ``1 + Σ x_j`` calculable.  Points v of chart i and w of chart j
    are identified when v_j is invertible and ``w = v / v_j``; this is the
    F-point form of the chart overlap maps.
    """
    _require_field(F)
    charts = []
    for i in range(n + 1):
        for xs in chart_points(F, n, 1):
            v = xs[:i] + (F.one,) + xs[i:]
            charts.append((i, v))
    pos = {c: k for k, c in enumerate(charts)}
    parent = list(range(len(charts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k, (i, v) in enumerate(charts):
        for j in range(n + 1):
            if j == i or v[j] == F.zero:
                continue
            inv = F.inverse(v[j])
            w = tuple(F.mul[inv][x] for x in v)
            other = pos.get((j, w))
            if other is None:
                raise AssertionError(f"overlap image of {v} is missing from chart {j}")
            ra, rb = find(k), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return len({find(k) for k in range(len(charts))})


def projective_report(F: PartialRing, n: int) -> dict:
    k = kappa(F)
    formula = point_count_formula(F, n)
    pts = enumerate_points(F, n)
    glued = chart_glue_check(F, n)
    return {"kappa": k, "formula": formula, "enumerated": len(pts), "glued": glued,
            "points": pts, "agree": formula == len(pts) == glued}
