import math

import pytest

from pring.catalog import boolean, builtin, f1, ring_corpus, zmod
from pring.commalg import is_good
from pring.core import UNDEF, PartialRing, validate
from pring.groups import (cycle_notation, evaluate_group, functor_matrix_agreement, ga_presentation,
                          gln_pair_presentation, gln_presentation, gm_presentation, normalize_presentation,
                          symmetric_group_iso)
from pring.linalg import gl_prime, identity, mat_mul, permutation_of, summable_tuples
from pring.pointgroup import PointGroup, is_group, is_partial_group, isomorphic_groups

U = UNDEF


def test_presentation_shapes():
    for n in (1, 2, 3):
        P = gln_presentation(n)
        assert P.ngens == 2 * n * n
        assert len(P.summable) == 4 * n
        assert len(P.relations) == 2 * n * n
        H = gln_pair_presentation(n)
        assert H.ngens == 4 * n * n
        assert len(H.summable) == 12 * n
        assert len(H.relations) == 6 * n * n


def test_gl1_is_gm():
    assert normalize_presentation(gln_presentation(1)) == normalize_presentation(gm_presentation())


def test_additive_group():
    G = evaluate_group("ga", zmod(2))
    assert G.order == 2 and is_group(G)
    assert evaluate_group("ga", f1()).order == 1
    assert evaluate_group("ga", boolean()).order == 1
    G = evaluate_group("ga", zmod(3))
    assert G.order == 3 and G.is_abelian()


def test_multiplicative_group():
    G = evaluate_group("gm", zmod(4))
    assert G.labels == ["1", "3"]
    assert evaluate_group("gm", f1()).order == 1
    assert evaluate_group("gm", zmod(5)).order == 4
    assert evaluate_group("gm", builtin("F1SQ")).order == 2


@pytest.mark.parametrize("A", ring_corpus(6), ids=lambda A: A.label)
def test_gm_is_units(A):
    G = evaluate_group("gm", A)
    assert sorted(p[0] for p in G.elements) == sorted(A.units())
    assert is_group(G)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gln_f1_symmetric(n):
    G = evaluate_group("gln", f1(), n)
    assert G.order == math.factorial(n)
    assert is_group(G)
    assert symmetric_group_iso(G, f1(), n)
    assert functor_matrix_agreement(f1(), n, G=G)


def test_gl2_over_z2():
    G = evaluate_group("gln", zmod(2), 2)
    assert G.order == 6 and is_group(G) and not G.is_abelian()
    assert functor_matrix_agreement(zmod(2), 2, G=G)
    S3 = evaluate_group("gln", f1(), 3)
    assert isomorphic_groups(G, S3) is not None


@pytest.mark.parametrize("label,order", [("BOOL", 2), ("Z3", 48), ("F1SQ", 8), ("F1*F1", 4), ("F1*F2", 12),
                                         ("F2*F2", 36), ("DUAL", 2), ("CHAIN3", 2)])
def test_gl2_orders(label, order):
    A = builtin(label)
    G = evaluate_group("gln", A, 2)
    assert G.order == order
    assert is_group(G)
    assert functor_matrix_agreement(A, 2, G=G)


def test_non_good_ring():
    # 1+1 = 1, e+e = e, 1+e undefined: (1,1) is summable but (1,e) is not
    A = PartialRing(["0", "1", "e"], 0, [[0, 1, 2], [1, 1, U], [2, U, 2]], one=1,
                    mul=[[0, 0, 0], [0, 1, 2], [0, 2, 2]], label="NG")
    assert validate(A, "ring").ok
    assert not is_good(A, 2)
    G = evaluate_group("gln", A, 2)
    assert G.order == 2 and is_partial_group(G)


@pytest.mark.parametrize("kind,label,n", [("ga", "Z3", 1), ("gm", "Z5", 1), ("gln", "F2", 2), ("gln", "F1SQ", 2)])
def test_inverse_and_unit_laws(kind, label, n):
    G = evaluate_group(kind, builtin(label), n)
    for g in range(G.order):
        assert G.mul(G.unit, g) == g and G.mul(g, G.unit) == g
        (h,) = G.inverses[g]
        assert G.inverses[h] == (g,)
        assert G.mul(g, h) == G.unit == G.mul(h, g)


def test_gl_prime_contains_identity_and_closed():
    A = zmod(3)
    M = gl_prime(A, 2)
    I = identity(A, 2)
    assert I in M.elements
    for X in M.elements[:8]:
        for Y in M.elements[:8]:
            P = mat_mul(A, X, Y)
            if P is not None:
                assert P in M.elements


def test_summable_tuples_f1():
    assert sorted(summable_tuples(f1(), 3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_permutation_labels():
    F = f1()
    X = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    p = permutation_of(F, X)
    assert sorted(p) == [0, 1, 2]
    assert cycle_notation((0, 1, 2)) == "id"
    assert cycle_notation((1, 0, 2)) == "(1 2)"


def test_partial_group_checks():
    G = PointGroup.build([0, 1], lambda a, b: (a + b) % 2, 0)
    assert is_group(G)
    H = PointGroup.build([0, 1, 2], lambda a, b: None if a and b else a + b, 0)
    assert not is_partial_group(H)
    assert "inverse" in is_partial_group(H).witness
