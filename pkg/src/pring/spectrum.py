"""Prime spectra of finite partial rings with their structure sheaves.

The space is finite, so every point p has a smallest open neighbourhood
U_p (the points q ⊆ p), and U_p is the basic open D(s) for s the product
of everything outside p.  A family of germs over U is a section of the
sheafified structure sheaf exactly when, around every point p, it comes
from one presheaf section on U_p; any smaller neighbourhood would contain
U_p anyway.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

from . import config
from .commalg import (
    Ideal,
    LocalizedRing,
    is_local,
    localize,
    primes,
    pullback_ideal,
)
from .core import UNDEF, Homomorphism, Kind, PartialRing, checked, enumerate_homs, find_isomorphism
from .errors import BudgetExceeded

log = logging.getLogger(__name__)

Open = frozenset  # of point indices


@dataclass
class Spectrum:
    ring: PartialRing
    points: list[Ideal]
    basis: list[Open]                  # basis[a] = D(a)
    _stalks: dict = field(default_factory=dict, repr=False)
    _presheaf: dict = field(default_factory=dict, repr=False)
    _sections: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def whole(self) -> Open:
        return frozenset(range(self.size))

    def D(self, a: int) -> Open:
        return self.basis[a]

    def V(self, I: Ideal) -> Open:
        return frozenset(i for i, p in enumerate(self.points) if I <= p)

    def minimal_open(self, i: int) -> Open:
        U = self.whole
        for a in self.ring.elements:
            if i in self.basis[a]:
                U &= self.basis[a]
        return U

    @cached_property
    def opens(self) -> list[Open]:
        """Every open set: unions of basic opens."""
        found = {frozenset()}
        for B in set(self.basis):
            found |= {U | B for U in found}
        return sorted(found, key=lambda U: (len(U), sorted(U)))

    def is_open(self, U) -> bool:
        return frozenset(U) in set(self.opens)

    def closure(self, i: int) -> Open:
        return frozenset(j for j, q in enumerate(self.points) if self.points[i] <= q)

    def point_names(self) -> list[str]:
        return [str(p) for p in self.points]

    # sheaf data ---------------------------------------------------------------

    def stalk(self, i: int) -> LocalizedRing:
        if i not in self._stalks:
            A = self.ring
            p = self.points[i]
            self._stalks[i] = localize(A, [a for a in A.elements if a not in p], label=f"{A.label or 'A'}_p{i}")
        return self._stalks[i]

    def S_of(self, U: Open) -> frozenset[int]:
        A = self.ring
        return frozenset(a for a in A.elements if all(a not in self.points[i] for i in U))

    def presheaf(self, U: Open) -> LocalizedRing:
        U = frozenset(U)
        if U not in self._presheaf:
            self._presheaf[U] = localize(self.ring, self.S_of(U), label=f"O'({sorted(U)})")
        return self._presheaf[U]

    def germ(self, U: Open, c: int, i: int) -> int:
        """Image of presheaf section ``c`` on U in the stalk at point i."""
        L = self.presheaf(U)
        for (a, s), k in L.fraction.items():
            if k == c:
                return self.stalk(i).fraction[(a, s)]
        raise KeyError(c)


def spec(A: PartialRing) -> Spectrum:
    pts = primes(A)
    basis = [frozenset(i for i, p in enumerate(pts) if a not in p) for a in A.elements]
    return Spectrum(A, pts, basis)


def stalk(A: PartialRing, p: Ideal) -> LocalizedRing:
    L = localize(A, [a for a in A.elements if a not in p], label=f"{A.label or 'A'}_p")
    if is_local(L.ring) is None:
        raise AssertionError("localization at a prime is not local")
    return L


def presheaf_sections(X: Spectrum, U) -> LocalizedRing:
    return X.presheaf(frozenset(U))


# --------------------------------------------------------------------------
# sheaf sections


@dataclass
class Sections:
    """Sections of the structure sheaf over an open set, as a partial ring of germ families."""

    space: Spectrum
    U: tuple[int, ...]             # points, sorted
    families: list[tuple[int, ...]]
    ring: PartialRing

    def index(self, family) -> int:
        return self.families.index(tuple(family))

    def restrict_to(self, V) -> list[int]:
        """Restriction map to an open V ⊆ U, as indices into the sections over V."""
        target = sheaf_sections(self.space, V)
        pos = [self.U.index(i) for i in target.U]
        return [target.index(tuple(f[k] for k in pos)) for f in self.families]


def _family_options(X: Spectrum, U: tuple[int, ...]) -> list[set[tuple[int, ...]]]:
    """For each point p of U: the germ families on U_p coming from one presheaf section."""
    out = []
    for i in U:
        Ui = X.minimal_open(i)
        L = X.presheaf(Ui)
        pts = sorted(Ui)
        reps: dict[int, tuple[int, int]] = {}
        for (a, s), k in L.fraction.items():
            reps.setdefault(k, (a, s))
        fams = set()
        for k, (a, s) in reps.items():
            fams.add(tuple(X.stalk(j).fraction[(a, s)] for j in pts))
        out.append((pts, fams))
    return out


def sheaf_sections(X: Spectrum, U) -> Sections:
    U = tuple(sorted(U))
    cache = X._sections
    if U in cache:
        return cache[U]
    if not X.is_open(U):
        raise ValueError(f"{list(U)} is not open")
    options = _family_options(X, U)
    stalks = [X.stalk(i).ring for i in U]
    budget = 1
    for S in stalks:
        budget *= S.size
    if budget > config.MAX_CANDIDATES:
        raise BudgetExceeded("too many germ families", used=budget, limit=config.MAX_CANDIDATES)
    pos = {p: k for k, p in enumerate(U)}
    families = []
    for fam in itertools.product(*(S.elements for S in stalks)):
        if all(tuple(fam[pos[j]] for j in pts) in fams for pts, fams in options):
            families.append(fam)
    families.sort()
    idx = {f: k for k, f in enumerate(families)}
    n = len(families)
    zero = idx[tuple(S.zero for S in stalks)]
    one = idx[tuple(S.one for S in stalks)]
    add = [[UNDEF] * n for _ in range(n)]
    mul = [[0] * n for _ in range(n)]
    for (p, f), (q, g) in itertools.product(enumerate(families), repeat=2):
        s = []
        for S, x, y in zip(stalks, f, g):
            v = S.add[x][y]
            if v == UNDEF:
                break
            s.append(v)
        else:
            add[p][q] = idx.get(tuple(s), UNDEF)
        mul[p][q] = idx[tuple(S.mul[x][y] for S, x, y in zip(stalks, f, g))]
    names = ["(" + ",".join(S.names[x] for S, x in zip(stalks, f)) + ")" for f in families]
    R = PartialRing(names, zero, add, one=one, mul=mul, label=f"O({list(U)})")
    checked(R, Kind.RING, "sheaf sections")
    out = Sections(X, U, families, R)
    cache[U] = out
    return out


def gamma(A: PartialRing, X: Spectrum | None = None) -> tuple[Sections, Homomorphism]:
    """Global sections and ``γ: A -> Γ``, ``a ↦ (a/1)_p``."""
    X = X or spec(A)
    G = sheaf_sections(X, X.whole)
    vals = []
    for a in A.elements:
        fam = tuple(X.stalk(i).lam(a) for i in G.U)
        vals.append(G.index(fam))
    return G, Homomorphism(A, G.ring, tuple(vals), Kind.RING)


def integrality_witness(A: PartialRing, G: Sections, g: Homomorphism) -> dict[int, int] | None:
    """For each global section σ some s with ``sσ ∈ γ(A)`` and s ∉ p for all p; None if missing."""
    image = set(g.values)
    out = {}
    for sigma in G.ring.elements:
        found = None
        for s in A.elements:
            if G.ring.mul[g(s)][sigma] in image and all(s not in p for p in G.space.points):
                found = s
                break
        if found is None:
            return None
        out[sigma] = found
    return out


# --------------------------------------------------------------------------
# Spec of Γ


def _induced_stalk_map(A: PartialRing, B: PartialRing, phi: Homomorphism, LA: LocalizedRing,
                       LB: LocalizedRing) -> list[int] | None:
    """``a/s ↦ φ(a)/φ(s)`` from a stalk of A to a stalk of B, or None if ill defined."""
    vals: list[int | None] = [None] * LA.ring.size
    for (a, s), k in LA.fraction.items():
        key = (phi(a), phi(s))
        if key not in LB.fraction:
            return None
        v = LB.fraction[key]
        if vals[k] is None:
            vals[k] = v
        elif vals[k] != v:
            return None
    return vals  # type: ignore[return-value]


def _is_ring_iso(S: PartialRing, T: PartialRing, vals) -> bool:
    from .core import is_homomorphism

    if vals is None or len(set(vals)) != T.size or S.size != T.size:
        return False
    inv = [0] * T.size
    for a, v in enumerate(vals):
        inv[v] = a
    return is_homomorphism(S, T, vals, Kind.RING) and is_homomorphism(T, S, inv, Kind.RING)


@dataclass
class IsoWitness:
    ok: bool
    point_map: dict[int, int] = field(default_factory=dict)   # point of Spec Γ -> point of Spec A
    failures: list[str] = field(default_factory=list)
    gamma_size: int = 0

    def __bool__(self):
        return self.ok


def spec_gamma_check(A: PartialRing) -> IsoWitness:
    """Compare ``Spec A`` with ``Spec Γ(Spec A)``: homeomorphism plus stalk isomorphisms."""
    X = spec(A)
    G, g = gamma(A, X)
    B = G.ring
    Y = spec(B)
    fails = []
    pmap = {}
    for j, q in enumerate(Y.points):
        back = pullback_ideal(g, q)
        if back.members not in [p.members for p in X.points]:
            fails.append(f"γ*({q}) = {back} is not a point of Spec A")
            continue
        pmap[j] = [p.members for p in X.points].index(back.members)
    if not fails:
        if sorted(pmap.values()) != list(range(X.size)):
            fails.append("point map is not a bijection")
        for a in A.elements:
            pre = frozenset(j for j, i in pmap.items() if i in X.D(a))
            if pre != Y.D(g(a)):
                fails.append(f"preimage of D({A.names[a]}) is not D(γ({A.names[a]}))")
        for b in B.elements:
            img = frozenset(pmap[j] for j in Y.D(b))
            if not X.is_open(img):
                fails.append(f"image of D({B.names[b]}) is not open")
        for j, i in pmap.items():
            vals = _induced_stalk_map(A, B, g, X.stalk(i), Y.stalk(j))
            if not _is_ring_iso(X.stalk(i).ring, Y.stalk(j).ring, vals):
                fails.append(f"stalk map at {X.points[i]} is not an isomorphism")
    return IsoWitness(not fails, pmap, fails, B.size)


# --------------------------------------------------------------------------
# morphisms


@dataclass
class SpecMorphism:
    phi: Homomorphism
    point_map: list[int]           # point of Spec B -> point of Spec A
    continuous: bool
    local: bool


def spec_morphism(phi: Homomorphism, XA: Spectrum | None = None, XB: Spectrum | None = None) -> SpecMorphism:
    A, B = phi.source, phi.target
    XA = XA or spec(A)
    XB = XB or spec(B)
    keys = [p.members for p in XA.points]
    pm = [keys.index(pullback_ideal(phi, q).members) for q in XB.points]
    continuous = all(frozenset(j for j in range(XB.size) if pm[j] in XA.D(a)) == XB.D(phi(a))
                     for a in A.elements)
    local = True
    for j, i in enumerate(pm):
        LA, LB = XA.stalk(i), XB.stalk(j)
        vals = _induced_stalk_map(A, B, phi, LA, LB)
        if vals is None:
            local = False
            break
        mA, mB = is_local(LA.ring), is_local(LB.ring)
        back = frozenset(x for x in LA.ring.elements if vals[x] in mB)
        if back != mA.members:
            local = False
            break
    return SpecMorphism(phi, pm, continuous, local)


def _continuous_maps(X: Spectrum, Y: Spectrum):
    opensY = Y.opens
    setX = set(X.opens)
    for f in itertools.product(range(Y.size), repeat=X.size):
        if all(frozenset(i for i in range(X.size) if f[i] in V) in setX for V in opensY):
            yield f


def count_space_morphisms(XA: Spectrum, XB: Spectrum, *, limit: int | None = None) -> int:
    """Morphisms of locally pringed spaces ``Spec A -> Spec B``.

    A sheaf map ``O_B -> f_* O_A`` is a compatible family of ring maps on the
    minimal opens V_q of Spec B (they form a basis closed under the
    inclusions that matter), so the count enumerates such families and keeps
    those whose stalk maps are local.
    """
    total = 0
    for f in _continuous_maps(XA, XB):
        qs = list(range(XB.size))
        V = {q: XB.minimal_open(q) for q in qs}
        pre = {q: frozenset(i for i in range(XA.size) if f[i] in V[q]) for q in qs}
        src = {q: sheaf_sections(XB, V[q]) for q in qs}
        dst = {q: sheaf_sections(XA, pre[q]) for q in qs}
        choices = {q: enumerate_homs(src[q].ring, dst[q].ring, Kind.RING) for q in qs}
        # restriction data for inclusions V_r ⊆ V_q
        pairs = [(q, r) for q in qs for r in qs if r != q and V[r] <= V[q]]
        resB = {(q, r): src[q].restrict_to(V[r]) for q, r in pairs}
        resA = {(q, r): dst[q].restrict_to(pre[r]) for q, r in pairs}
        for combo in itertools.product(*(choices[q] for q in qs)):
            h = dict(zip(qs, combo))
            if any(any(resA[(q, r)][h[q](x)] != h[r](resB[(q, r)][x]) for x in src[q].ring.elements)
                   for q, r in pairs):
                continue
            if _locality(XA, f, src, dst, h):
                total += 1
                if limit is not None and total >= limit:
                    return total
    return total


def _locality(XA, f, src, dst, h) -> bool:
    for i in range(XA.size):
        q = f[i]
        # stalk of O_B at q is sections over V_q; stalk of O_A at i is sections over U_i
        Ui = XA.minimal_open(i)
        to_stalk = dst[q].restrict_to(Ui)
        SA = sheaf_sections(XA, Ui).ring
        SB = src[q].ring
        mA, mB = is_local(SA), is_local(SB)
        if mA is None or mB is None:
            return False
        back = frozenset(x for x in SB.elements if to_stalk[h[q](x)] in mA)
        if back != mB.members:
            return False
    return True


def correspondence_check(A: PartialRing, B: PartialRing) -> tuple[int, int]:
    """``(#morphisms Spec A -> Spec B, #Hom(B, Γ(Spec A)))``; equal when the correspondence holds."""
    XA, XB = spec(A), spec(B)
    G, _ = gamma(A, XA)
    return count_space_morphisms(XA, XB), len(enumerate_homs(B, G.ring, Kind.RING))


def is_global_field(F: PartialRing) -> bool:
    """``Γ(Spec F) ≅ F`` for a partial field."""
    G, g = gamma(F)
    return g.is_injective() and g.is_surjective() and find_isomorphism(F, G.ring, Kind.RING) is not None
