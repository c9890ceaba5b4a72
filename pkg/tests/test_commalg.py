import itertools

import pytest

from pring.catalog import boolean, builtin, f1, ring_corpus, zmod
from pring.commalg import (all_ideals, ideal, ideal_generated, ideal_intersection, ideal_product, ideal_sum,
                           is_local, is_partial_field, is_prime, localize, localize_at, localize_element,
                           maximal_ideals, multiplicative_closure, multiplicative_subsets, primes,
                           pullback_ideal, pushforward_ideal, radical, radical_by_primes, zero_ideal,
                           zero_ideal_is_maximal)
from pring.core import Kind, enumerate_homs, find_isomorphism, validate
from pring.errors import StructureError

from oracles import ideals_brute, primes_brute, radical_brute


def _members(ideals):
    return {I.members for I in ideals}


def test_ideals_match_brute_force(corpus):
    for A in corpus:
        assert _members(all_ideals(A)) == ideals_brute(A), A.label


def test_primes_match_brute_force(corpus):
    for A in corpus:
        assert _members(primes(A)) == primes_brute(A), A.label


def test_radical_matches_brute_force(corpus):
    for A in corpus:
        for I in all_ideals(A):
            assert radical(A, I).members == radical_brute(A, I.members)


def test_known_spectra():
    names = {A.label: sorted(str(p) for p in primes(A)) for A in ring_corpus(6)}
    assert names["ZERO"] == []
    assert names["F1"] == ["{0}"]
    assert names["Z4"] == ["{0,2}"]
    assert names["Z6"] == ["{0,2,4}", "{0,3}"]
    assert names["CHAIN3"] == ["{0,h}", "{0}"]
    assert names["F1*F1"] == ["{(0,0),(0,1)}", "{(0,0),(1,0)}"]


def test_ideal_operations():
    A = zmod(6)
    I = ideal_generated(A, [2])
    J = ideal_generated(A, [3])
    assert I.members == {0, 2, 4} and J.members == {0, 3}
    assert ideal_sum(I, J).is_whole
    assert ideal_intersection(I, J).members == {0}
    assert ideal_product(I, J).members == {0}
    with pytest.raises(StructureError):
        ideal(A, [0, 2])


def test_ideal_in_f1_product():
    A = builtin("F1*F1")
    pos = {nm: i for i, nm in enumerate(A.names)}
    # (1,0) + (0,1) is summable, so the ideal generated by both is the whole ring
    I = ideal_generated(A, [pos["(1,0)"], pos["(0,1)"]])
    assert I.is_whole


def test_local_and_fields():
    got = {A.label: (is_partial_field(A), is_local(A) is not None) for A in ring_corpus(6)}
    assert got["F1"] == (True, True)
    assert got["BOOL"] == (True, True)
    assert got["Z5"] == (True, True)
    assert got["Z4"] == (False, True)
    assert got["Z6"] == (False, False)
    assert got["ZERO"] == (False, False)
    for A in ring_corpus(6):
        if A.size > 1:
            assert is_partial_field(A) == zero_ideal_is_maximal(A)


def test_maximal_ideals_are_prime(corpus):
    for A in corpus:
        for m in maximal_ideals(A):
            assert is_prime(A, m)


def test_multiplicative_closure():
    A = zmod(6)
    assert multiplicative_closure(A, [5]) == {1, 5}
    assert multiplicative_closure(A, [2]) == {1, 2, 4}


def test_localization_z6():
    A = zmod(6)
    L = localize_element(A, 2)
    assert L.ring.size == 3
    assert find_isomorphism(L.ring, zmod(3), Kind.RING) is not None
    L = localize(A, [1, 3])
    assert L.ring.size == 2
    assert L.lam.values == (0, 1, 0, 1, 0, 1)


def test_localization_at_primes_is_local(corpus):
    for A in corpus:
        for p in primes(A):
            L = localize_at(A, p)
            assert validate(L.ring, Kind.RING).ok
            assert is_local(L.ring) is not None


def test_localization_outputs_validate(corpus):
    for A in corpus:
        for S in multiplicative_subsets(A):
            L = localize(A, S)
            assert validate(L.ring, Kind.RING).ok, (A.label, S)
            for s in S:
                assert L.ring.inverse(L.lam(s)) is not None


def test_localization_universal_property(small_corpus):
    targets = small_corpus[:8]
    for A in small_corpus[:10]:
        for S in multiplicative_subsets(A):
            L = localize(A, S)
            for B in targets:
                lifts = {}
                for g in enumerate_homs(L.ring, B, Kind.RING):
                    key = tuple(g.values[L.lam(a)] for a in A.elements)
                    lifts[key] = lifts.get(key, 0) + 1
                for f in enumerate_homs(A, B, Kind.RING):
                    inverts = all(B.inverse(f(s)) is not None for s in S)
                    assert lifts.get(f.values, 0) == (1 if inverts else 0), (A.label, sorted(S), B.label)


def test_extension_then_contraction_is_saturation(corpus):
    for A in corpus:
        ideals = all_ideals(A)
        for S in multiplicative_subsets(A):
            L = localize(A, S)
            for I in ideals:
                back = pullback_ideal(L.lam, pushforward_ideal(L.lam, I))
                sat = {a for a in A.elements if any(A.mul[s][a] in I for s in S)}
                assert back.members == sat


def test_contraction_then_extension_is_identity(corpus):
    for A in corpus:
        for S in multiplicative_subsets(A):
            L = localize(A, S)
            for J in all_ideals(L.ring):
                assert pushforward_ideal(L.lam, pullback_ideal(L.lam, J)).members == J.members


def test_primes_disjoint_from_s_survive(corpus):
    for A in corpus:
        for S in multiplicative_subsets(A):
            L = localize(A, S)
            for p in primes(A):
                if p.members.isdisjoint(S):
                    assert pullback_ideal(L.lam, pushforward_ideal(L.lam, p)).members == p.members


def test_pullback_identity_counterexamples():
    # the identity lambda^* lambda_* (I) = I needs I to be S-saturated
    A = zmod(6)
    L = localize(A, [1, 3])
    back = pullback_ideal(L.lam, pushforward_ideal(L.lam, zero_ideal(A)))
    assert back.members == {0, 2, 4}
    for F in (f1(), boolean()):
        L = localize(F, [0, 1])
        assert L.ring.size == 1
        assert pullback_ideal(L.lam, pushforward_ideal(L.lam, zero_ideal(F))).is_whole
    P = builtin("F1*F1")
    pos = {nm: i for i, nm in enumerate(P.names)}
    L = localize(P, [pos["(1,1)"], pos["(1,0)"]])
    back = pullback_ideal(L.lam, pushforward_ideal(L.lam, zero_ideal(P)))
    assert sorted(P.names[a] for a in back.members) == ["(0,0)", "(0,1)"]


def test_radical_by_primes_agrees(corpus):
    for A in corpus:
        for I in all_ideals(A):
            assert radical(A, I) == radical_by_primes(A, I)


def test_prime_pullbacks_are_prime(small_corpus):
    for A, B in itertools.product(small_corpus[:8], repeat=2):
        for f in enumerate_homs(A, B, Kind.RING):
            for q in primes(B):
                assert is_prime(A, pullback_ideal(f, q))
