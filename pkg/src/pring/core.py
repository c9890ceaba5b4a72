"""Finite partial magmas, monoids and rings stored as explicit tables.

Elements are the integers ``0 .. n-1``; ``names`` only matters for display
and for the document format.  The addition table holds ``UNDEF`` where a
pair is not summable, so the summability relation and the sum live in one
dense matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import AxiomError, BudgetExceeded, StructureError

UNDEF = -1

Table = tuple[tuple[int, ...], ...]


class Kind(str, Enum):
    MAGMA = "magma"
    MONOID = "monoid"
    RING = "ring"


def _as_table(rows, size, allow_undef, what) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{what}: not an integer table") from exc
    if len(table) != size or any(len(row) != size for row in table):
        raise StructureError(f"{what}: expected a {size}x{size} table")
    lo = UNDEF if allow_undef else 0
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not lo <= v < size:
                raise StructureError(f"{what}: entry ({i},{j}) = {v} out of range")
    return table


@dataclass(frozen=True)
class PartialMagma:
    """A carrier with a zero and a partially defined addition table.

    Nothing about the axioms is enforced here; use :func:`validate`.
    """

    names: tuple[str, ...]
    zero: int
    add: Table
    label: str = field(default="", compare=False, kw_only=True)

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise StructureError("element names must be unique")
        if not names:
            raise StructureError("carrier must contain at least the zero element")
        if not 0 <= self.zero < len(names):
            raise StructureError(f"zero index {self.zero} out of range")
        object.__setattr__(self, "add", _as_table(self.add, len(names), True, "add"))

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructureError(f"unknown element {name!r}") from None

    def summable(self, a: int, b: int) -> bool:
        return self.add[a][b] != UNDEF

    def plus(self, a: int, b: int) -> int | None:
        v = self.add[a][b]
        return None if v == UNDEF else v

    def summable_pairs(self) -> Iterator[tuple[int, int]]:
        for a in self.elements:
            for b in self.elements:
                if self.add[a][b] != UNDEF:
                    yield a, b

    def nonzero(self) -> list[int]:
        return [a for a in self.elements if a != self.zero]

    def is_total(self) -> bool:
        return all(v != UNDEF for row in self.add for v in row)

    def fmt(self, a: int) -> str:
        return self.names[a]

    def __repr__(self):
        tag = self.label or type(self).__name__
        return f"<{tag} |{self.size}|>"


@dataclass(frozen=True)
class PartialRing(PartialMagma):
    one: int = field(default=0, kw_only=True)
    mul: Table = field(default=(), kw_only=True)

    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.one < self.size:
            raise StructureError(f"one index {self.one} out of range")
        object.__setattr__(self, "mul", _as_table(self.mul, self.size, False, "mul"))

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, r: int) -> int:
        x = self.one
        for _ in range(r):
            x = self.mul[x][a]
        return x

    def units(self) -> list[int]:
        return [a for a in self.elements if any(self.mul[a][b] == self.one for b in self.elements)]

    def inverse(self, a: int) -> int | None:
        for b in self.elements:
            if self.mul[a][b] == self.one:
                return b
        return None

    def is_zero_ring(self) -> bool:
        return self.zero == self.one

    def as_magma(self) -> PartialMagma:
        return PartialMagma(self.names, self.zero, self.add, label=self.label)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ",".join(str(x) for x in self.witness)
        tail = f": {self.detail}" if self.detail else ""
        return f"axiom {self.axiom} violated at ({w}){tail}"


@dataclass
class ValidationReport:
    level: Kind
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __str__(self):
        if self.ok:
            return f"valid {self.level.value}"
        lines = [f"not a valid {self.level.value}:"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def validate(A: PartialMagma, level: Kind | str = Kind.MONOID, *, first_only: bool = False) -> ValidationReport:
    """Check the axioms of ``level`` exhaustively and collect witnesses.

    Witnesses are element names.  With ``first_only`` the search stops at
    the first violation of each axiom.
    """
    level = Kind(level)
    rep = ValidationReport(level)
    n = A.size
    z = A.zero
    add = A.add
    nm = A.names

    def bad(axiom, witness, detail=""):
        if first_only and axiom in rep.axioms():
            return
        rep.violations.append(Violation(axiom, tuple(nm[w] for w in witness), detail))

    for a in range(n):
        if add[z][a] != a:
            bad("(a)", (z, a), "0+a must be defined and equal a")
        if add[a][z] != a:
            bad("(a)", (a, z), "a+0 must be defined and equal a")
    for a in range(n):
        for b in range(a, n):
            if add[a][b] != add[b][a]:
                bad("(b)", (a, b) if add[a][b] != UNDEF else (b, a), "a+b and b+a differ")

    if level in (Kind.MONOID, Kind.RING):
        for a in range(n):
            ra = add[a]
            for b in range(n):
                ab = ra[b]
                for c in range(n):
                    bc = add[b][c]
                    left = add[ab][c] if ab != UNDEF else UNDEF
                    right = ra[bc] if bc != UNDEF else UNDEF
                    if (left == UNDEF) != (right == UNDEF):
                        bad("(c)", (a, b, c), "(a+b)+c defined iff a+(b+c) defined")
                    elif left != right:
                        bad("(c)", (a, b, c), "(a+b)+c != a+(b+c)")

    if level is Kind.RING:
        if not isinstance(A, PartialRing):
            raise StructureError("ring validation needs a multiplication table")
        mul = A.mul
        one = A.one
        for a in range(n):
            if mul[one][a] != a:
                bad("unit", (one, a), "1*a != a")
            if mul[z][a] != z:
                bad("zero", (z, a), "0*a != 0")
            for b in range(a + 1, n):
                if mul[a][b] != mul[b][a]:
                    bad("commutative", (a, b))
        for a, b, c in itertools.product(range(n), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                bad("associative", (a, b, c))
        for a1 in range(n):
            for a2 in range(n):
                s = add[a1][a2]
                if s == UNDEF:
                    continue
                for x in range(n):
                    p = add[mul[a1][x]][mul[a2][x]]
                    if p == UNDEF:
                        bad("bilinear", (a1, a2, x), "a1*x + a2*x undefined")
                    elif p != mul[s][x]:
                        bad("bilinear", (a1, a2, x), "a1*x + a2*x != (a1+a2)*x")
    return rep


def require(A: PartialMagma, level: Kind | str, what: str = "structure"):
    rep = validate(A, level, first_only=True)
    if not rep.ok:
        raise AxiomError(f"{what} is {rep}", rep)
    return A


def checked(A, level, what="derived structure", check=None):
    """Re-validate a freshly built structure when debug validation is on."""
    if check is None:
        check = config.DEBUG_VALIDATE
    if check:
        require(A, level, what)
    return A


# --------------------------------------------------------------------------
# n-ary summability


def sum_multiset(A: PartialMagma, ms: Iterable[int]) -> int | None:
    """Left-fold sum of a multiset in sorted order, ``None`` if undefined.

    For partial monoids the result does not depend on the order (the
    property suite checks this exhaustively), so the multiset is summable
    exactly when this returns a value.
    """
    acc = A.zero
    add = A.add
    for x in sorted(ms):
        acc = add[acc][x]
        if acc == UNDEF:
            return None
    return acc


def sum_sequence(A: PartialMagma, seq: Sequence[int]) -> int | None:
    acc = A.zero
    for x in seq:
        acc = A.add[acc][x]
        if acc == UNDEF:
            return None
    return acc


def is_summable(A: PartialMagma, ms: Iterable[int]) -> bool:
    return sum_multiset(A, ms) is not None


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    source: PartialMagma
    target: PartialMagma
    values: tuple[int, ...]
    kind: Kind = Kind.MONOID

    def __call__(self, a: int) -> int:
        return self.values[a]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(self.target.elements)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """``other ∘ self``."""
        kind = self.kind if self.kind == other.kind else Kind.MONOID
        return Homomorphism(self.source, other.target, tuple(other.values[v] for v in self.values), kind)

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def describe(self) -> str:
        s, t = self.source, self.target
        return "{" + ", ".join(f"{s.names[a]}->{t.names[v]}" for a, v in enumerate(self.values)) + "}"


def is_homomorphism(A: PartialMagma, B: PartialMagma, values: Sequence[int], kind: Kind | str = Kind.MONOID) -> bool:
    kind = Kind(kind)
    f = values
    if f[A.zero] != B.zero:
        return False
    for a1, a2 in A.summable_pairs():
        s = B.add[f[a1]][f[a2]]
        if s == UNDEF or s != f[A.add[a1][a2]]:
            return False
    if kind is Kind.RING:
        if f[A.one] != B.one:
            return False
        for a in A.elements:
            for b in A.elements:
                if f[A.mul[a][b]] != B.mul[f[a]][f[b]]:
                    return False
    return True


def _hom_constraints(A: PartialMagma, kind: Kind, order: list[int]):
    """Group the hom conditions by the last element (in ``order``) they mention."""
    pos = {a: i for i, a in enumerate(order)}
    adds: list[list[tuple[int, int, int]]] = [[] for _ in order]
    muls: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for a1, a2 in A.summable_pairs():
        s = A.add[a1][a2]
        adds[max(pos[a1], pos[a2], pos[s])].append((a1, a2, s))
    if kind is Kind.RING:
        for a in A.elements:
            for b in range(a, A.size):
                p = A.mul[a][b]
                muls[max(pos[a], pos[b], pos[p])].append((a, b, p))
    return adds, muls


def _search_maps(A, B, kind: Kind, injective=False) -> Iterator[tuple[int, ...]]:
    order = [A.zero]
    fixed = {A.zero: B.zero}
    if kind is Kind.RING and A.one != A.zero:
        order.append(A.one)
        fixed[A.one] = B.one
    elif kind is Kind.RING and B.one != B.zero:
        return
    order += [a for a in A.elements if a not in fixed]
    adds, muls = _hom_constraints(A, kind, order)
    f = [UNDEF] * A.size
    used = [False] * B.size
    badd, bmul = B.add, getattr(B, "mul", None)

    def ok(i):
        for a1, a2, s in adds[i]:
            v = badd[f[a1]][f[a2]]
            if v == UNDEF or v != f[s]:
                return False
        for a, b, p in muls[i]:
            if bmul[f[a]][f[b]] != f[p]:
                return False
        return True

    def rec(i):
        if i == len(order):
            yield tuple(f)
            return
        a = order[i]
        cands = [fixed[a]] if a in fixed else B.elements
        for v in cands:
            if injective and used[v]:
                continue
            f[a] = v
            used[v] = True
            if ok(i):
                yield from rec(i + 1)
            used[v] = False
        f[a] = UNDEF

    yield from rec(0)


def enumerate_homs(A: PartialMagma, B: PartialMagma, kind: Kind | str = Kind.MONOID, *, limit: int | None = None) -> list[Homomorphism]:
    """All homomorphisms ``A -> B`` of the given kind, in lexicographic order."""
    kind = Kind(kind)
    limit = config.MAX_CANDIDATES if limit is None else limit
    if B.size ** A.size > limit:
        raise BudgetExceeded(f"|B|^|A| = {B.size}^{A.size} exceeds the map budget {limit}",
                             used=B.size ** A.size, limit=limit)
    if kind is Kind.RING and not (isinstance(A, PartialRing) and isinstance(B, PartialRing)):
        raise StructureError("ring homomorphisms need partial rings on both sides")
    homs = sorted(_search_maps(A, B, kind))
    return [Homomorphism(A, B, v, kind) for v in homs]


def identity_hom(A: PartialMagma, kind: Kind | str = Kind.MONOID) -> Homomorphism:
    return Homomorphism(A, A, tuple(A.elements), Kind(kind))


def is_monomorphism_by_cancellation(f: Homomorphism, sources: Iterable[PartialMagma]) -> bool:
    """Left-cancellability of ``f`` tested against all hom pairs from ``sources``."""
    for X in sources:
        homs = enumerate_homs(X, f.source, f.kind)
        images = {}
        for g in homs:
            key = tuple(f.values[v] for v in g.values)
            if key in images and images[key] != g.values:
                return False
            images[key] = g.values
    return True


def find_isomorphism(A: PartialMagma, B: PartialMagma, kind: Kind | str = Kind.MONOID) -> Homomorphism | None:
    """A bijective hom whose inverse is also a hom, or ``None``."""
    kind = Kind(kind)
    if A.size != B.size:
        return None
    if kind is Kind.RING and not (isinstance(A, PartialRing) and isinstance(B, PartialRing)):
        return None
    if sum(v != UNDEF for r in A.add for v in r) != sum(v != UNDEF for r in B.add for v in r):
        return None
    for values in _search_maps(A, B, kind, injective=True):
        inv = [0] * A.size
        for a, v in enumerate(values):
            inv[v] = a
        if is_homomorphism(B, A, inv, kind):
            return Homomorphism(A, B, values, kind)
    return None


def is_isomorphic(A, B, kind: Kind | str = Kind.MONOID) -> bool:
    return find_isomorphism(A, B, kind) is not None


# --------------------------------------------------------------------------
# products and Hom-objects


def product(A: PartialMagma, B: PartialMagma, kind: Kind | str | None = None) -> PartialMagma:
    """Componentwise structure on ``A x B``; pair index is ``a * |B| + b``."""
    if kind is None:
        kind = Kind.RING if isinstance(A, PartialRing) and isinstance(B, PartialRing) else Kind.MONOID
    kind = Kind(kind)
    m = B.size
    pairs = [(a, b) for a in A.elements for b in B.elements]
    names = [f"({A.names[a]},{B.names[b]})" for a, b in pairs]

    def idx(a, b):
        return a * m + b

    add = []
    for a1, b1 in pairs:
        row = []
        for a2, b2 in pairs:
            sa, sb = A.add[a1][a2], B.add[b1][b2]
            row.append(UNDEF if sa == UNDEF or sb == UNDEF else idx(sa, sb))
        add.append(row)
    label = f"{A.label or '?'}x{B.label or '?'}"
    if kind is Kind.RING:
        mul = [[idx(A.mul[a1][a2], B.mul[b1][b2]) for a2, b2 in pairs] for a1, b1 in pairs]
        return PartialRing(names, idx(A.zero, B.zero), add, one=idx(A.one, B.one), mul=mul, label=label)
    return PartialMagma(names, idx(A.zero, B.zero), add, label=label)


def projections(A, B, P=None) -> tuple[Homomorphism, Homomorphism]:
    P = product(A, B) if P is None else P
    m = B.size
    kind = Kind.RING if isinstance(P, PartialRing) else Kind.MONOID
    p1 = Homomorphism(P, A, tuple(i // m for i in P.elements), kind)
    p2 = Homomorphism(P, B, tuple(i % m for i in P.elements), kind)
    return p1, p2


def pairing(f: Homomorphism, g: Homomorphism, P: PartialMagma) -> Homomorphism:
    """The map ``x -> (f x, g x)`` into a product ``P`` of the two targets."""
    m = g.target.size
    return Homomorphism(f.source, P, tuple(f.values[x] * m + g.values[x] for x in f.source.elements), f.kind)


def hom_object(A: PartialMagma, B: PartialMagma, *, limit: int | None = None) -> tuple[PartialMagma, list[Homomorphism]]:
    """``Hom(A, B)`` with pointwise summability and pointwise sums.

    ``B`` must be a partial monoid: otherwise the pointwise sum of two
    homs need not be a hom.
    """
    require(B, Kind.MONOID, "Hom target")
    homs = enumerate_homs(A, B, Kind.MAGMA, limit=limit)
    index = {h.values: i for i, h in enumerate(homs)}
    names = ["(" + ",".join(B.names[v] for v in h.values) + ")" for h in homs]
    add = []
    for f in homs:
        row = []
        for g in homs:
            vals = []
            for a in A.elements:
                s = B.add[f.values[a]][g.values[a]]
                if s == UNDEF:
                    break
                vals.append(s)
            else:
                row.append(index[tuple(vals)])
                continue
            row.append(UNDEF)
        add.append(row)
    zero = index[tuple(B.zero for _ in A.elements)]
    H = PartialMagma(names, zero, add, label=f"Hom({A.label or '?'},{B.label or '?'})")
    return checked(H, Kind.MONOID, "Hom object"), homs


def relabel(A: PartialMagma, perm: Sequence[int]) -> PartialMagma:
    """Move element ``a`` to position ``perm[a]``."""
    n = A.size
    inv = [0] * n
    for a, p in enumerate(perm):
        inv[p] = a
    names = [A.names[inv[i]] for i in range(n)]

    def tr(v):
        return UNDEF if v == UNDEF else perm[v]

    add = [[tr(A.add[inv[i]][inv[j]]) for j in range(n)] for i in range(n)]
    if isinstance(A, PartialRing):
        mul = [[perm[A.mul[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
        return PartialRing(names, perm[A.zero], add, one=perm[A.one], mul=mul, label=A.label)
    return PartialMagma(names, perm[A.zero], add, label=A.label)


def canonical_key(A: PartialMagma) -> tuple:
    """An isomorphism invariant key: minimum relabelled table with zero first."""
    others = A.nonzero()
    best = None
    for p in itertools.permutations(range(1, A.size)):
        perm = [0] * A.size
        perm[A.zero] = 0
        for a, q in zip(others, p):
            perm[a] = q
        add = [[UNDEF] * A.size for _ in A.elements]
        for a in A.elements:
            for b in A.elements:
                v = A.add[a][b]
                add[perm[a]][perm[b]] = UNDEF if v == UNDEF else perm[v]
        key = tuple(map(tuple, add))
        if isinstance(A, PartialRing):
            mul = [[0] * A.size for _ in A.elements]
            for a in A.elements:
                for b in A.elements:
                    mul[perm[a]][perm[b]] = perm[A.mul[a][b]]
            key = (key, perm[A.one], tuple(map(tuple, mul)))
        if best is None or key < best:
            best = key
    return best
