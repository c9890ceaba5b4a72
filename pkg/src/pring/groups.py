"""The group presentations G_a, G_m, GL_n and their evaluated point groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import PartialRing, sum_multiset
from .linalg import Matrix, gl_prime, identity, is_permutation_matrix, permutation_of, show_matrix
from .pointgroup import PointGroup
from .presentations import NatPoly, Presentation, is_point, solve_homs

PolyMatrix = list[list[NatPoly]]


def _var_matrix(nvars: int, offset: int, n: int) -> PolyMatrix:
    return [[NatPoly.var(nvars, offset + i * n + j) for j in range(n)] for i in range(n)]


def _poly_mat_mul(X: PolyMatrix, Y: PolyMatrix) -> PolyMatrix:
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = NatPoly(X[0][0].nvars)
            for k in range(n):
                acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _row_sums(M: PolyMatrix) -> list[NatPoly]:
    out = []
    for row in M:
        acc = NatPoly(row[0].nvars)
        for p in row:
            acc = acc + p
        out.append(acc)
    return out


def _delta_pairs(M: PolyMatrix) -> list[tuple[NatPoly, NatPoly]]:
    n = len(M)
    nv = M[0][0].nvars
    return [(M[i][j], NatPoly.const(nv, 1 if i == j else 0)) for i in range(n) for j in range(n)]


def _names(prefix: str, n: int) -> list[str]:
    sep = "_" if n > 9 else ""
    return [f"{prefix}{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]


def ga_presentation() -> Presentation:
    return Presentation.parse(["x", "y"], ["x+y"], [("x+y", "0")], label="G_a")


def gm_presentation() -> Presentation:
    return Presentation.parse(["x", "y"], [], [("x*y", "1")], label="G_m")


def gln_presentation(n: int) -> Presentation:
    """Generators x_ij, y_ij; rows of X, Y, Z = XY, W = YX summable; Z = W = I."""
    if n < 1:
        raise ValueError("n must be at least 1")
    gens = _names("x", n) + _names("y", n)
    nv = len(gens)
    X, Y = _var_matrix(nv, 0, n), _var_matrix(nv, n * n, n)
    Z, W = _poly_mat_mul(X, Y), _poly_mat_mul(Y, X)
    S = _row_sums(X) + _row_sums(Y) + _row_sums(Z) + _row_sums(W)
    Q = _delta_pairs(Z) + _delta_pairs(W)
    return Presentation(tuple(gens), tuple(S), tuple(Q), label=f"GL_{n}")


def gln_pair_presentation(n: int) -> Presentation:
    """The presentation H deciding when two GL_n points can be multiplied.

    Generators x, y, x', y'; with S = XX', T = Y'Y, U = ST, V = TS every row
    of X, Y, Z, W, X', Y', Z', W', S, T, U, V is summable and
    Z, W, Z', W', U, V all equal the unit matrix.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    gens = _names("x", n) + _names("y", n) + _names("xp", n) + _names("yp", n)
    nv = len(gens)
    X, Y = _var_matrix(nv, 0, n), _var_matrix(nv, n * n, n)
    Xp, Yp = _var_matrix(nv, 2 * n * n, n), _var_matrix(nv, 3 * n * n, n)
    Z, W = _poly_mat_mul(X, Y), _poly_mat_mul(Y, X)
    Zp, Wp = _poly_mat_mul(Xp, Yp), _poly_mat_mul(Yp, Xp)
    Sm, Tm = _poly_mat_mul(X, Xp), _poly_mat_mul(Yp, Y)
    U, V = _poly_mat_mul(Sm, Tm), _poly_mat_mul(Tm, Sm)
    L = []
    for M in (X, Y, Z, W, Xp, Yp, Zp, Wp, Sm, Tm, U, V):
        L += _row_sums(M)
    R = []
    for M in (Z, W, Zp, Wp, U, V):
        R += _delta_pairs(M)
    return Presentation(tuple(gens), tuple(L), tuple(R), label=f"H_{n}")


def normalize_presentation(P: Presentation) -> tuple:
    """Comparison key up to generator order: drop singleton summability lists, unorder pairs."""
    S = sorted({p.terms for p in P.summable if sum(c for _, c in p.terms) > 1})
    Q = sorted({tuple(sorted((u.terms, v.terms))) for u, v in P.relations})
    return (P.ngens, tuple(S), tuple(Q))


# --------------------------------------------------------------------------
# evaluation


def _split(asg: Sequence[int], n: int) -> tuple[Matrix, Matrix]:
    X = tuple(tuple(asg[i * n + j] for j in range(n)) for i in range(n))
    Y = tuple(tuple(asg[n * n + i * n + j] for j in range(n)) for i in range(n))
    return X, Y


def _plain_product(A: PartialRing, C: Matrix, D: Matrix) -> Matrix | None:
    n = len(C)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = sum_multiset(A, [A.mul[C[i][k]][D[k][j]] for k in range(n)])
            if s is None:
                return None
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def evaluate_group(kind: str, A: PartialRing, n: int = 1, *, max_nodes: int | None = None) -> PointGroup:
    """``Hom(G, A)`` with the group law induced by the cogroup structure maps."""
    kind = kind.lower()
    if kind == "ga":
        pts = solve_homs(ga_presentation(), A, max_nodes=max_nodes)
        pset = set(pts)

        def prod(p, q):
            x, y = A.plus(p[0], q[0]), A.plus(p[1], q[1])
            if x is None or y is None or (x, y) not in pset:
                return None
            return (x, y)

        return PointGroup.build(pts, prod, (A.zero, A.zero), labels=[A.names[p[0]] for p in pts],
                                inverse=lambda p: (p[1], p[0]), label=f"G_a({A.label})")
    if kind == "gm":
        pts = solve_homs(gm_presentation(), A, max_nodes=max_nodes)
        return PointGroup.build(pts, lambda p, q: (A.mul[p[0]][q[0]], A.mul[p[1]][q[1]]), (A.one, A.one),
                                labels=[A.names[p[0]] for p in pts], inverse=lambda p: (p[1], p[0]),
                                label=f"G_m({A.label})")
    if kind == "gln":
        P = gln_presentation(n)
        H = gln_pair_presentation(n)
        pts = [_split(a, n) for a in solve_homs(P, A, max_nodes=max_nodes)]

        def prod(g, h):
            (X, Y), (Xp, Yp) = g, h
            flat = [v for M in (X, Y, Xp, Yp) for row in M for v in row]
            if not is_point(H, A, flat):
                return None
            return (_plain_product(A, X, Xp), _plain_product(A, Yp, Y))

        I = identity(A, n)
        return PointGroup.build(pts, prod, (I, I), labels=[show_matrix(A, X) for X, _ in pts],
                                inverse=lambda g: (g[1], g[0]), label=f"GL_{n}({A.label})")
    raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class Agreement:
    ok: bool
    functor_order: int
    matrix_order: int
    mismatch: str | None = None

    def __bool__(self):
        return self.ok


def functor_matrix_agreement(A: PartialRing, n: int, *, G: PointGroup | None = None,
                             M: PointGroup | None = None) -> Agreement:
    """``(X, Y) -> X`` is a bijection onto GL'_n(A) carrying defined products to products."""
    G = G or evaluate_group("gln", A, n)
    M = M or gl_prime(A, n)
    posM = {X: i for i, X in enumerate(M.elements)}
    image = []
    for X, _ in G.elements:
        if X not in posM:
            return Agreement(False, G.order, M.order, f"{show_matrix(A, X)} is not in GL'_n")
        image.append(posM[X])
    if len(set(image)) != len(image):
        return Agreement(False, G.order, M.order, "two points share the same X")
    if len(image) != M.order:
        return Agreement(False, G.order, M.order, "map is not surjective")
    for g in range(G.order):
        for h in range(G.order):
            gh = G.table[g][h]
            if gh is None:
                continue
            mh = M.table[image[g]][image[h]]
            if mh != image[gh]:
                return Agreement(False, G.order, M.order,
                                 f"product {G.labels[g]}*{G.labels[h]} differs between the routes")
    return Agreement(True, G.order, M.order)


@dataclass(frozen=True)
class SymmetricLabeling:
    ok: bool
    perms: tuple[tuple[int, ...], ...] = ()
    failure: str | None = None

    def __bool__(self):
        return self.ok


def _compose(s, t):
    return tuple(s[t[j]] for j in range(len(t)))


def symmetric_group_iso(G: PointGroup, A: PartialRing, n: int) -> SymmetricLabeling:
    """Label each element by its permutation and check products compose."""
    import math

    if G.order != math.factorial(n):
        return SymmetricLabeling(False, failure=f"order {G.order} is not {n}!")
    perms = []
    for e in G.elements:
        X = e[0] if isinstance(e[0][0], tuple) else e
        if not is_permutation_matrix(A, X):
            return SymmetricLabeling(False, failure=f"{show_matrix(A, X)} is not a permutation matrix")
        perms.append(permutation_of(A, X))
    if len(set(perms)) != len(perms):
        return SymmetricLabeling(False, failure="two elements give the same permutation")
    for g in range(G.order):
        for h in range(G.order):
            gh = G.table[g][h]
            if gh is None:
                return SymmetricLabeling(False, failure=f"{G.labels[g]}*{G.labels[h]} undefined")
            if perms[gh] != _compose(perms[g], perms[h]):
                return SymmetricLabeling(False, failure=f"{G.labels[g]}*{G.labels[h]} is not the composite")
    return SymmetricLabeling(True, tuple(perms))


def cycle_notation(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "id"
