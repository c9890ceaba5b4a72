import itertools
import random

import pytest
from hypothesis import given, strategies as st

from pring.catalog import (all_partial_monoids, all_two_element_tables, boolean, f1, random_partial_monoid,
                           ring_corpus, zmod)
from pring.core import (UNDEF, Homomorphism, Kind, PartialMagma, PartialRing, canonical_key, enumerate_homs,
                        find_isomorphism, hom_object, is_homomorphism, pairing, product, projections,
                        sum_multiset, sum_sequence, validate)
from pring.errors import AxiomError, StructureError

from oracles import bracket_sums, homs_brute, isomorphic_brute

U = UNDEF


def test_builtin_rings_validate():
    for A in ring_corpus(6):
        assert validate(A, Kind.RING).ok, A.label


def test_f1_addition_table():
    F = f1()
    assert F.add[1][1] == U
    assert F.summable(0, 1) and not F.summable(1, 1)


def test_asymmetric_table_reports_axiom_b():
    M = PartialMagma(["0", "a"], 0, [[0, 1], [1, U]])
    assert validate(M).ok
    bad = PartialMagma(["0", "a", "b"], 0, [[0, 1, 2], [1, U, 2], [2, U, U]])
    rep = validate(bad, Kind.MAGMA)
    assert "(b)" in rep.axioms()
    w = next(v for v in rep.violations if v.axiom == "(b)").witness
    assert set(w) == {"a", "b"}


def test_zero_axiom():
    M = PartialMagma(["0", "a"], 0, [[0, U], [U, U]])
    assert "(a)" in validate(M, Kind.MAGMA).axioms() or "zero" in validate(M, Kind.MAGMA).axioms()


def test_non_bilinear_multiplication_rejected():
    # same multiplication, once with an addition it does not distribute over
    A = PartialRing(["0", "1", "x"], 0, [[0, 1, 2], [1, U, U], [2, U, U]], one=1,
                    mul=[[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    assert validate(A, Kind.RING).ok
    B = PartialRing(["0", "1", "x"], 0, [[0, 1, 2], [1, U, 2], [2, 2, U]], one=1,
                    mul=[[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    assert not validate(B, Kind.RING).ok


def test_bad_table_shape():
    with pytest.raises(StructureError):
        PartialMagma(["0", "a"], 0, [[0, 1]])


def test_order_two_classification():
    valid = [M for M in all_two_element_tables() if validate(M, Kind.MONOID).ok]
    assert len(valid) == 3
    assert sorted(M.add[1][1] for M in valid) == [U, 0, 1]


def test_monoid_counts_small():
    # up to isomorphism, derived by exhaustive search with an isomorphism filter
    assert [len(all_partial_monoids(k)) for k in (1, 2, 3, 4)] == [1, 3, 11, 53]


def test_monoid_enumeration_is_iso_free():
    ms = all_partial_monoids(3)
    for M, N in itertools.combinations(ms, 2):
        assert not isomorphic_brute(M, N)
    assert len({canonical_key(M) for M in all_partial_monoids(4)}) == 53


def _monoid_universe():
    out = [M for k in (1, 2, 3, 4) for M in all_partial_monoids(k)]
    out += list(ring_corpus(6))
    rng = random.Random(7)
    out += [random_partial_monoid(rng, s) for s in (5, 6) for _ in range(12)]
    return out


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_summability_order_independent_exhaustive(k):
    for M in _monoid_universe():
        for ms in itertools.combinations_with_replacement(M.elements, k):
            vals = bracket_sums(M, ms)
            assert len(vals) == 1, (M.label, ms, vals)
            v = sum_multiset(M, ms)
            assert vals == {v}
            for perm in set(itertools.permutations(ms)):
                assert sum_sequence(M, perm) == v


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_sub_sums_defined(k):
    for M in _monoid_universe():
        for ms in itertools.combinations_with_replacement(M.elements, k):
            if sum_multiset(M, ms) is None:
                continue
            for r in range(k):
                for sub in itertools.combinations(ms, r):
                    assert sum_multiset(M, sub) is not None


@given(st.randoms(use_true_random=False), st.integers(2, 6),
       st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_random_monoids_order_independent(rng, size, picks):
    M = random_partial_monoid(rng, size)
    assert validate(M, Kind.MONOID).ok
    ms = [p % M.size for p in picks]
    v = sum_multiset(M, ms)
    assert bracket_sums(M, ms) == {v}


def test_enumerate_homs_matches_brute_force(small_corpus):
    for A in small_corpus[:8]:
        for B in small_corpus[:8]:
            got = sorted(h.values for h in enumerate_homs(A, B, Kind.RING))
            assert got == sorted(homs_brute(A, B, ring=True)), (A.label, B.label)
            got = sorted(h.values for h in enumerate_homs(A, B, Kind.MONOID))
            assert got == sorted(homs_brute(A, B)), (A.label, B.label)


def test_hom_composition_closed():
    objs = [M for k in (1, 2, 3) for M in all_partial_monoids(k)]
    for A, B, C in itertools.product(objs, repeat=3):
        for f in enumerate_homs(A, B):
            for g in enumerate_homs(B, C):
                assert is_homomorphism(A, C, f.then(g).values)


def test_ring_hom_composition_closed(small_corpus):
    objs = small_corpus[:10]
    for A, B, C in itertools.product(objs, repeat=3):
        for f in enumerate_homs(A, B, Kind.RING):
            for g in enumerate_homs(B, C, Kind.RING):
                assert is_homomorphism(A, C, f.then(g).values, Kind.RING)


def test_monomorphism_iff_injective():
    objs = [M for k in (1, 2, 3) for M in all_partial_monoids(k)]
    for A, B in itertools.product(objs, repeat=2):
        for f in enumerate_homs(A, B):
            cancellable = True
            for C in objs:
                hs = enumerate_homs(C, A)
                for g, h in itertools.combinations(hs, 2):
                    if g.then(f).values == h.then(f).values:
                        cancellable = False
                        break
                if not cancellable:
                    break
            assert cancellable == f.is_injective(), (A.label, B.label, f.values)


def test_product_projection_and_pairing(small_corpus):
    objs = small_corpus[:6]
    for A, B in itertools.product(objs, repeat=2):
        P = product(A, B)
        assert validate(P, Kind.RING).ok
        p1, p2 = projections(A, B, P)
        assert is_homomorphism(P, A, p1.values, Kind.RING)
        assert is_homomorphism(P, B, p2.values, Kind.RING)
        for C in objs[:4]:
            for f in enumerate_homs(C, A, Kind.RING):
                for g in enumerate_homs(C, B, Kind.RING):
                    h = pairing(f, g, P)
                    assert is_homomorphism(C, P, h.values, Kind.RING)
                    assert h.then(p1).values == f.values and h.then(p2).values == g.values
                    factor = [k for k in enumerate_homs(C, P, Kind.RING)
                              if k.then(p1).values == f.values and k.then(p2).values == g.values]
                    assert [k.values for k in factor] == [h.values]


def test_product_summability_componentwise():
    P = product(f1(), f1())
    pos = {nm: i for i, nm in enumerate(P.names)}
    assert P.summable(pos["(1,0)"], pos["(0,1)"])
    assert not P.summable(pos["(1,0)"], pos["(1,1)"])
    Z = product(zmod(2), boolean())
    assert all(Z.summable(a, b) for a in Z.elements for b in Z.elements)


def test_product_with_zero_ring():
    from pring.catalog import zero_ring
    for A in ring_corpus(4):
        assert find_isomorphism(product(A, zero_ring()), A, Kind.RING) is not None


def test_hom_object_f1_z2():
    H, homs = hom_object(f1(), zmod(2))
    assert len(homs) == 2
    assert find_isomorphism(H, zmod(2)) is not None


def test_homomorphism_helpers():
    A = zmod(4)
    B = zmod(2)
    f = Homomorphism(A, B, (0, 1, 0, 1), Kind.RING)
    assert is_homomorphism(A, B, f.values, Kind.RING)
    assert f.is_surjective() and not f.is_injective()
    assert f.describe() == "{0->0, 1->1, 2->0, 3->1}"


def test_require_raises_axiom_error():
    from pring.core import require
    bad = PartialMagma(["0", "a", "b"], 0, [[0, 1, 2], [1, 2, U], [2, U, 2]])
    with pytest.raises(AxiomError) as exc:
        require(bad, Kind.MONOID)
    assert "(c)" in exc.value.report.axioms()
