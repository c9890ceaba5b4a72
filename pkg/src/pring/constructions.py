"""Quotients, effectiveness, congruences, associative closure and tensor products."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import config
from .core import (
    UNDEF,
    Homomorphism,
    Kind,
    PartialMagma,
    PartialRing,
    checked,
    require,
)
from .errors import AxiomError, BudgetExceeded, CrossCheckFailure
from .wordproblem import (
    ElementPool,
    MonoidPresentation,
    Vec,
    Verdict,
    completion_presentation,
    element_word,
    saturate,
    word_equal,
)

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# equivalence relations as partitions


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class EquivRelation:
    """An equivalence relation on ``range(size)`` stored as a class label per element.

    Labels are canonical: classes are numbered by their smallest member.
    """

    labels: tuple[int, ...]

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]] = ()) -> "EquivRelation":
        uf = _UnionFind(size)
        for a, b in pairs:
            uf.union(a, b)
        return cls.from_roots([uf.find(a) for a in range(size)])

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "EquivRelation":
        first: dict[int, int] = {}
        labels = []
        for r in roots:
            labels.append(first.setdefault(r, len(first)))
        return cls(tuple(labels))

    @classmethod
    def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> "EquivRelation":
        pairs = []
        for blk in blocks:
            blk = list(blk)
            pairs += [(blk[0], b) for b in blk[1:]]
        return cls.from_pairs(size, pairs)

    @classmethod
    def diagonal(cls, size):
        return cls(tuple(range(size)))

    @classmethod
    def total(cls, size):
        return cls((0,) * size)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def num_classes(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for a, k in enumerate(self.labels):
            out[k].append(a)
        return out

    def pairs(self) -> set[tuple[int, int]]:
        return {(a, b) for blk in self.classes() for a in blk for b in blk}

    def is_total(self) -> bool:
        return self.num_classes <= 1

    def is_diagonal(self) -> bool:
        return self.num_classes == self.size

    def meet(self, other: "EquivRelation") -> "EquivRelation":
        return EquivRelation.from_roots(list(zip(self.labels, other.labels)))

    def refines(self, other: "EquivRelation") -> bool:
        return all(other.related(a, b) for blk in self.classes() for a in blk for b in blk)

    def describe(self, A: PartialMagma) -> str:
        return " | ".join("{" + ",".join(A.names[a] for a in blk) + "}" for blk in self.classes())


def all_partitions(size: int):
    """Every equivalence relation on ``range(size)`` (restricted growth strings)."""
    def rec(prefix, top):
        if len(prefix) == size:
            yield EquivRelation(tuple(prefix))
            return
        for k in range(top + 2):
            yield from rec(prefix + [k], max(top, k))

    if size == 0:
        yield EquivRelation(())
        return
    yield from rec([0], 0)


# --------------------------------------------------------------------------
# additivity and the coequalizer in pmag


def additivity_witness(A: PartialMagma, R: EquivRelation) -> tuple[int, int, int, int] | None:
    """A witness ``(a1, a2, b1, b2)`` with a_i R b_i, both pairs summable, sums unrelated."""
    groups: dict[tuple[int, int], tuple[int, int, int]] = {}
    for a1, a2 in A.summable_pairs():
        key = (R.labels[a1], R.labels[a2])
        s = A.add[a1][a2]
        if key in groups:
            b1, b2, t = groups[key]
            if not R.related(s, t):
                return (a1, a2, b1, b2)
        else:
            groups[key] = (a1, a2, s)
    return None


def is_additive(A: PartialMagma, R: EquivRelation) -> bool:
    return additivity_witness(A, R) is None


def quotient_magma(A: PartialMagma, R: EquivRelation) -> tuple[PartialMagma, Homomorphism]:
    """``A//R``: classes, summable when some representatives are, with the projection."""
    w = additivity_witness(A, R)
    if w is not None:
        nm = [A.names[x] for x in w]
        raise AxiomError(f"relation is not additive: {nm[0]}~{nm[2]}, {nm[1]}~{nm[3]} "
                         f"but {nm[0]}+{nm[1]} and {nm[2]}+{nm[3]} are unrelated")
    k = R.num_classes
    blocks = R.classes()
    add = [[UNDEF] * k for _ in range(k)]
    for a1, a2 in A.summable_pairs():
        add[R.labels[a1]][R.labels[a2]] = R.labels[A.add[a1][a2]]
    names = [A.names[blk[0]] if len(blk) == 1 else "[" + ",".join(A.names[a] for a in blk) + "]"
             for blk in blocks]
    zero = R.labels[A.zero]
    if isinstance(A, PartialRing):
        mul = [[R.labels[A.mul[p[0]][q[0]]] for q in blocks] for p in blocks]
        M = PartialRing(names, zero, add, one=R.labels[A.one], mul=mul, label=f"{A.label}//R")
    else:
        M = PartialMagma(names, zero, add, label=f"{A.label}//R")
    checked(M, Kind.MAGMA, "quotient magma")
    return M, Homomorphism(A, M, R.labels, Kind.MAGMA)


# --------------------------------------------------------------------------
# effectiveness


@dataclass(frozen=True)
class EffectivenessResult:
    effective: bool
    witness: tuple[int, ...] | None = None   # (a, a', b, b', c, c', x, x')

    def __bool__(self):
        return self.effective


def _condition_violations(A: PartialMagma, R: EquivRelation):
    blocks = R.classes()
    lab = R.labels
    add = A.add
    right: dict[int, list[tuple[int, int]]] = {}
    for b, c in A.summable_pairs():
        right.setdefault(b, []).append((c, add[b][c]))
    for a, b in A.summable_pairs():
        ab = add[a][b]
        for b2 in blocks[lab[b]]:
            for c2, bc2 in right.get(b2, ()):
                for x in blocks[lab[ab]]:
                    for c in blocks[lab[c2]]:
                        xc = add[x][c]
                        if xc == UNDEF:
                            continue
                        for a2 in blocks[lab[a]]:
                            for x2 in blocks[lab[bc2]]:
                                ax = add[a2][x2]
                                if ax != UNDEF and lab[ax] != lab[xc]:
                                    yield (a, a2, b, b2, c, c2, x, x2), (xc, ax)


def is_effective(A: PartialMagma, R: EquivRelation) -> EffectivenessResult:
    """Check the associativity-transfer condition that characterises effectiveness.

    If aRa', bRb', cRc', a+b R x, b'+c' R x' and both x+c and a'+x' are
    defined, they must be related.  ``R`` must be additive.
    """
    if not is_additive(A, R):
        raise AxiomError("effectiveness is only defined here for additive relations")
    for witness, _ in _condition_violations(A, R):
        return EffectivenessResult(False, witness)
    return EffectivenessResult(True)


def kernel_pair_oracle(A: PartialMagma, R: EquivRelation, *, max_states: int | None = None) -> bool:
    """Effectiveness through the canonical map ``A//R -> A/R`` being injective.

    ``A/R`` sits inside the monoid completion of ``A//R`` and α is the
    restriction of μ, so injectivity is decided by word problems between
    classes.  This avoids saturating, which diverges when the closure is
    infinite (e.g. a quotient whose completion is Z).
    """
    M, _ = quotient_magma(A, R)
    P = completion_presentation(M)
    words = [element_word(M, P, [a]) for a in M.elements]
    for p, q in itertools.combinations(M.elements, 2):
        res = word_equal(P, words[p], words[q], max_states=max_states)
        if res.verdict is Verdict.UNKNOWN:
            raise BudgetExceeded(f"cannot separate {M.names[p]} and {M.names[q]} in the completion",
                                 used=res.states, limit=max_states or config.MAX_STATES)
        if res.verdict is Verdict.EQUAL:
            return False
    return True


# --------------------------------------------------------------------------
# associative closure


@dataclass
class Closure:
    monoid: PartialMagma
    alpha: Homomorphism
    pool: ElementPool
    presentation: MonoidPresentation

    def word_of(self, i: int) -> Vec:
        return self.pool.words[i]


def associative_closure(A: PartialMagma, *, max_elements: int | None = None,
                        max_states: int | None = None) -> Closure:
    """Smallest partial submonoid of the monoid completion containing the image of A."""
    P = completion_presentation(A)
    pool = ElementPool(P, max_states=max_states, max_elements=max_elements)
    alpha = [pool.intern(element_word(A, P, [a])) for a in A.elements]
    sums = {}
    for a1, a2 in A.summable_pairs():
        sums[(alpha[a1], alpha[a2])] = alpha[A.add[a1][a2]]
    names = []
    for i in range(len(pool)):
        a = alpha.index(i)
        names.append(A.names[a])
    sat = saturate(pool, sums, names=names, label=f"{A.label}_ass" if A.label else "")
    M = sat.monoid
    return Closure(M, Homomorphism(A, M, tuple(alpha), Kind.MAGMA), pool, P)


# --------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class Congruence:
    ring: PartialRing
    relation: EquivRelation
    rounds: int = 0

    @property
    def is_total(self) -> bool:
        return self.relation.is_total()

    def related(self, a, b):
        return self.relation.related(a, b)


def is_multiplicative(A: PartialRing, R: EquivRelation) -> bool:
    for blk in R.classes():
        r = blk[0]
        for m in blk[1:]:
            for c in A.elements:
                if not R.related(A.mul[r][c], A.mul[m][c]):
                    return False
    return True


def is_congruence(A: PartialRing, R: EquivRelation) -> bool:
    return is_additive(A, R) and is_multiplicative(A, R) and bool(is_effective(A, R))


def congruence_closure(A: PartialRing, S: Iterable[tuple[int, int]] = ()) -> Congruence:
    """Least congruence containing the pairs ``S``.

    Equivalence, multiplicative and additive closure are iterated to a
    fixpoint; each failure of the effectiveness condition then contributes
    the pair it demands and the iteration resumes.  Every rule is monotone,
    so the result is the least relation closed under all of them.
    """
    require(A, Kind.RING, "congruence base")
    uf = _UnionFind(A.size)
    for a, b in S:
        uf.union(a, b)
    rounds = 0
    while True:
        rounds += 1
        changed = True
        while changed:
            changed = False
            roots = [uf.find(a) for a in A.elements]
            for a in A.elements:
                r = roots[a]
                if r == a:
                    continue
                for c in A.elements:
                    changed |= uf.union(A.mul[r][c], A.mul[a][c])
            groups: dict[tuple[int, int], int] = {}
            for a1, a2 in A.summable_pairs():
                key = (uf.find(a1), uf.find(a2))
                s = A.add[a1][a2]
                if key in groups:
                    changed |= uf.union(groups[key], s)
                else:
                    groups[key] = s
        R = EquivRelation.from_roots([uf.find(a) for a in A.elements])
        repaired = False
        for _, (u, v) in _condition_violations(A, R):
            uf.union(u, v)
            repaired = True
        if not repaired:
            break
    C = Congruence(A, R, rounds)
    if C.is_total and A.size > 1:
        log.warning("congruence closure on %s is the total relation (degenerate quotient)", A.label or "ring")
    return C


def quotient_ring(A: PartialRing, C: Congruence | EquivRelation) -> tuple[PartialRing, Homomorphism]:
    """``A/C``: the associative closure of ``A//C`` with the induced product."""
    R = C.relation if isinstance(C, Congruence) else C
    if not is_multiplicative(A, R):
        raise AxiomError("relation is not closed under multiplication")
    M, proj = quotient_magma(A, R)
    cl = associative_closure(M)
    if not cl.alpha.is_injective():
        raise AxiomError("relation is not effective: A//R -> A/R is not injective")
    Q = cl.monoid
    gens = M.nonzero()
    pool = cl.pool

    def prod_word(u: Vec, v: Vec) -> Vec:
        letters = []
        for i in cl.presentation.letters(u):
            for j in cl.presentation.letters(v):
                letters.append(M.mul[gens[i]][gens[j]])
        return element_word(M, cl.presentation, letters)

    mul = []
    for p in Q.elements:
        row = []
        for q in Q.elements:
            k = pool.find(prod_word(pool.words[p], pool.words[q]))
            if k is None:
                raise CrossCheckFailure("product of closure elements left the closure")
            row.append(k)
        mul.append(row)
    one = cl.alpha.values[M.one]
    label = f"{A.label}/C" if A.label else ""
    Qr = PartialRing(Q.names, Q.zero, Q.add, one=one, mul=mul, label=label)
    checked(Qr, Kind.RING, "quotient ring")
    pi = Homomorphism(A, Qr, tuple(cl.alpha.values[proj.values[a]] for a in A.elements), Kind.RING)
    return Qr, pi


def least_congruence_brute_force(A: PartialRing, S: Iterable[tuple[int, int]] = ()) -> EquivRelation:
    """Meet of all congruences containing ``S``, found by enumerating partitions."""
    S = list(S)
    best = EquivRelation.total(A.size)
    for R in all_partitions(A.size):
        if all(R.related(a, b) for a, b in S) and is_additive(A, R) and is_multiplicative(A, R):
            if kernel_pair_oracle(A, R):
                best = best.meet(R)
    return best


# --------------------------------------------------------------------------
# tensor product


@dataclass
class TensorProduct:
    monoid: PartialMagma
    pure: dict[tuple[int, int], int]   # (a, b) -> index of a⊗b
    presentation: MonoidPresentation
    pool: ElementPool

    def bilinear_map(self) -> dict[tuple[int, int], int]:
        return dict(self.pure)


def tensor_presentation(A: PartialMagma, B: PartialMagma) -> tuple[MonoidPresentation, dict[tuple[int, int], int]]:
    gens = [(a, b) for a in A.nonzero() for b in B.nonzero()]
    pos = {g: i for i, g in enumerate(gens)}
    k = len(gens)

    def vec(*pairs):
        v = [0] * k
        for a, b in pairs:
            if a != A.zero and b != B.zero:
                v[pos[(a, b)]] += 1
        return tuple(v)

    rules = set()
    for a1, a2 in A.summable_pairs():
        if a1 == A.zero or a2 == A.zero or a1 > a2:
            continue
        for b in B.nonzero():
            rules.add((vec((a1, b), (a2, b)), vec((A.add[a1][a2], b))))
    for b1, b2 in B.summable_pairs():
        if b1 == B.zero or b2 == B.zero or b1 > b2:
            continue
        for a in A.nonzero():
            rules.add((vec((a, b1), (a, b2)), vec((a, B.add[b1][b2]))))
    names = tuple(f"{A.names[a]}⊗{B.names[b]}" for a, b in gens)
    P = MonoidPresentation(names, tuple(sorted(rules)))
    return P, pos


def tensor(A: PartialMagma, B: PartialMagma, *, max_elements: int | None = None,
           max_states: int | None = None) -> TensorProduct:
    """Associative closure of the pure tensors inside ``T(A, B)``."""
    require(A, Kind.MONOID, "tensor factor")
    require(B, Kind.MONOID, "tensor factor")
    P, pos = tensor_presentation(A, B)
    pool = ElementPool(P, max_states=max_states, max_elements=max_elements)
    zero = tuple(0 for _ in range(P.rank))
    pool.intern(zero)
    pure = {}
    for a in A.elements:
        for b in B.elements:
            w = zero if (a, b) not in pos else P.unit(pos[(a, b)])
            pure[(a, b)] = pool.intern(w)
    base = len(pool)
    # maximal magma structure on the pure tensors: summable when the sum is pure
    sums = {}
    for p in range(base):
        for q in range(base):
            w = tuple(x + y for x, y in zip(pool.words[p], pool.words[q]))
            r = pool.find(w)
            if r is not None and r < base:
                sums[(p, q)] = r
    names = []
    for i in range(base):
        a, b = min(k for k, v in pure.items() if v == i)
        names.append("0" if i == pool.find(zero) else f"{A.names[a]}⊗{B.names[b]}")
    sat = saturate(pool, sums, names=names, label=f"{A.label or '?'}⊗{B.label or '?'}")
    return TensorProduct(sat.monoid, pure, P, pool)


def is_bilinear(A: PartialMagma, B: PartialMagma, C: PartialMagma, f: dict[tuple[int, int], int]) -> bool:
    from .core import is_homomorphism
    for a in A.elements:
        if not is_homomorphism(B, C, [f[(a, b)] for b in B.elements], Kind.MAGMA):
            return False
    for b in B.elements:
        if not is_homomorphism(A, C, [f[(a, b)] for a in A.elements], Kind.MAGMA):
            return False
    return True


def bilinear_maps(A: PartialMagma, B: PartialMagma, C: PartialMagma):
    """All bilinear maps ``A x B -> C`` by brute force over the non-zero cells."""
    cells = [(a, b) for a in A.nonzero() for b in B.nonzero()]
    for vals in itertools.product(C.elements, repeat=len(cells)):
        f = {(a, b): C.zero for a in A.elements for b in B.elements}
        f.update(zip(cells, vals))
        if is_bilinear(A, B, C, f):
            yield f


def tensor_ring(A: PartialRing, B: PartialRing, **budget) -> tuple[PartialRing, TensorProduct]:
    """``A ⊗ B`` with ``(a⊗b)(a'⊗b') = aa'⊗bb'`` extended bilinearly to the closure."""
    T = tensor(A, B, **budget)
    P, pool = T.presentation, T.pool
    gens = [(a, b) for a in A.nonzero() for b in B.nonzero()]
    pos = {g: i for i, g in enumerate(gens)}

    def prod_word(u: Vec, v: Vec) -> Vec:
        w = [0] * P.rank
        for i in P.letters(u):
            for j in P.letters(v):
                a, b = gens[i][0], gens[i][1]
                c, d = gens[j][0], gens[j][1]
                key = (A.mul[a][c], B.mul[b][d])
                if key in pos:
                    w[pos[key]] += 1
        return tuple(w)

    M = T.monoid
    mul = []
    for p in M.elements:
        row = []
        for q in M.elements:
            k = pool.find(prod_word(pool.words[p], pool.words[q]))
            if k is None:
                raise CrossCheckFailure("product of tensors left the associative closure")
            row.append(k)
        mul.append(row)
    one = T.pure[(A.one, B.one)]
    R = PartialRing(M.names, M.zero, M.add, one=one, mul=mul, label=M.label)
    checked(R, Kind.RING, "tensor ring")
    return R, T
