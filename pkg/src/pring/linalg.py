"""Summable tuples and matrices over a finite partial ring.

``A_n`` are the n-tuples whose entries can be added up; ``A_(n)`` are those
that stay summable after scaling each entry by an arbitrary ring element.
``M'_n(A)`` holds the square matrices with rows in ``A_n``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from . import config
from .core import PartialRing, sum_multiset
from .errors import BudgetExceeded
from .pointgroup import PointGroup

Matrix = tuple[tuple[int, ...], ...]


def _guard(count: int, what: str):
    if count > config.MAX_CANDIDATES:
        raise BudgetExceeded(f"{what}: {count} candidates", used=count, limit=config.MAX_CANDIDATES)


def summable_tuples(A: PartialRing, n: int) -> frozenset[tuple[int, ...]]:
    """``A_n``."""
    if n < 1:
        raise ValueError("arity must be at least 1")
    _guard(A.size ** n, "summable tuples")
    return frozenset(t for t in itertools.product(A.elements, repeat=n) if sum_multiset(A, t) is not None)


def strongly_summable(A: PartialRing, n: int) -> frozenset[tuple[int, ...]]:
    """``A_(n)``: tuples c with ``(a_1 c_1, ..., a_n c_n)`` summable for all a."""
    base = summable_tuples(A, n)
    multiples = [sorted({A.mul[a][c] for a in A.elements}) for c in A.elements]
    out = set()
    for c in base:
        if all(s in base for s in itertools.product(*(multiples[x] for x in c))):
            out.add(c)
    return frozenset(out)


def identity(A: PartialRing, n: int) -> Matrix:
    return tuple(tuple(A.one if i == j else A.zero for j in range(n)) for i in range(n))


def in_m_prime(A: PartialRing, C: Matrix) -> bool:
    return all(sum_multiset(A, row) is not None for row in C)


def mat_mul(A: PartialRing, C: Matrix, D: Matrix) -> Matrix | None:
    """``CD`` if every entry can be calculated and the rows stay in A_n, else None."""
    m, k = len(C), len(D)
    if any(len(row) != k for row in C):
        raise ValueError("shape mismatch")
    p = len(D[0]) if D else 0
    mul = A.mul
    out = []
    for i in range(m):
        row = []
        for j in range(p):
            s = sum_multiset(A, [mul[C[i][t]][D[t][j]] for t in range(k)])
            if s is None:
                return None
            row.append(s)
        if sum_multiset(A, row) is None:
            return None
        out.append(tuple(row))
    return tuple(out)


def m_prime(A: PartialRing, n: int) -> list[Matrix]:
    rows = sorted(summable_tuples(A, n))
    _guard(len(rows) ** n, "M'_n")
    return [tuple(r) for r in itertools.product(rows, repeat=n)]


def gl_prime(A: PartialRing, n: int) -> PointGroup:
    """``GL'_n(A)``: matrices in M'_n with a two-sided inverse whose products can be formed.

    Inverses are not assumed unique; every witness is kept.
    """
    mats = m_prime(A, n)
    _guard(len(mats) ** 2, "GL'_n inverse search")
    I = identity(A, n)
    one = A.one
    mul = A.mul

    def right_inverse_candidate(C, D):
        # cheap diagonal test before the full product
        for i in range(n):
            s = sum_multiset(A, [mul[C[i][t]][D[t][i]] for t in range(n)])
            if s != one:
                return False
        return True

    witnesses: dict[Matrix, list[Matrix]] = {}
    for C in mats:
        for D in mats:
            if not right_inverse_candidate(C, D):
                continue
            if mat_mul(A, C, D) == I and mat_mul(A, D, C) == I:
                witnesses.setdefault(C, []).append(D)
    elems = sorted(witnesses)
    G = PointGroup.build(elems, lambda X, Y: mat_mul(A, X, Y), I,
                         labels=[show_matrix(A, X) for X in elems], label=f"GL'_{n}({A.label})")
    pos = {X: i for i, X in enumerate(elems)}
    G.inverses = {pos[X]: tuple(pos[D] for D in ws) for X, ws in witnesses.items()}
    return G


def show_matrix(A: PartialRing, X: Sequence[Sequence[int]]) -> str:
    return "[" + "; ".join(" ".join(A.names[x] for x in row) for row in X) + "]"


def is_permutation_matrix(A: PartialRing, X: Matrix) -> bool:
    n = len(X)
    ones = [[j for j in range(n) if X[i][j] == A.one] for i in range(n)]
    if any(len(r) != 1 for r in ones):
        return False
    if any(X[i][j] not in (A.zero, A.one) for i in range(n) for j in range(n)):
        return False
    return sorted(r[0] for r in ones) == list(range(n))


def permutation_of(A: PartialRing, X: Matrix) -> tuple[int, ...]:
    """σ with ``σ(j) = i`` where ``x_ij = 1`` (so X e_j = e_σ(j))."""
    n = len(X)
    sigma = [0] * n
    for i in range(n):
        for j in range(n):
            if X[i][j] == A.one:
                sigma[j] = i
    return tuple(sigma)
