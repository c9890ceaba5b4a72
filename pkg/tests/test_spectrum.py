import itertools

import pytest

from pring.catalog import builtin, f1, partial_fields, ring_corpus, zmod
from pring.core import Kind, enumerate_homs, find_isomorphism, validate
from pring.spectrum import (correspondence_check, gamma, is_global_field, sheaf_sections, spec, spec_gamma_check,
                            spec_morphism)


def test_point_counts(corpus):
    got = {A.label: spec(A).size for A in corpus}
    assert got["ZERO"] == 0
    assert got["F1"] == got["Z5"] == got["Z4"] == 1
    assert got["Z6"] == got["F1*F1"] == got["CHAIN3"] == 2


def test_basic_opens():
    X = spec(zmod(6))
    assert X.D(0) == frozenset()
    assert X.D(1) == X.whole
    # D(a) ∩ D(b) = D(ab)
    A = X.ring
    for a, b in itertools.product(A.elements, repeat=2):
        assert X.D(a) & X.D(b) == X.D(A.mul[a][b])


def test_chain_topology():
    X = spec(builtin("CHAIN3"))
    gen = [i for i, p in enumerate(X.points) if len(p) == 1][0]
    closed = 1 - gen
    assert X.closure(gen) == X.whole
    assert X.closure(closed) == {closed}
    assert X.minimal_open(closed) == X.whole
    assert X.minimal_open(gen) == {gen}
    assert len(X.opens) == 3


@pytest.mark.parametrize("A", ring_corpus(6), ids=lambda A: A.label)
def test_sections_validate(A):
    X = spec(A)
    for U in X.opens:
        S = sheaf_sections(X, U)
        assert validate(S.ring, Kind.RING).ok


@pytest.mark.parametrize("label", ["Z6", "F1*F1", "CHAIN3", "F1*Z3", "F1*DUAL", "BOOL*BOOL"])
def test_sheaf_locality_and_gluing(label):
    X = spec(builtin(label))
    opens = X.opens
    for U in opens:
        SU = sheaf_sections(X, U)
        for V, W in itertools.combinations_with_replacement([O for O in opens if O <= U], 2):
            if V | W != U:
                continue
            SV, SW = sheaf_sections(X, V), sheaf_sections(X, W)
            rV, rW = SU.restrict_to(V), SU.restrict_to(W)
            # locality: a section is determined by its restrictions
            assert len(set(zip(rV, rW))) == len(SU.families)
            # gluing: every compatible pair comes from a section
            VW = V & W
            compatible = 0
            for i, j in itertools.product(range(len(SV.families)), range(len(SW.families))):
                a = [SV.families[i][SV.U.index(p)] for p in sorted(VW)]
                b = [SW.families[j][SW.U.index(p)] for p in sorted(VW)]
                if a == b:
                    compatible += 1
                    assert (i, j) in set(zip(rV, rW))
            assert compatible == len(SU.families)


def test_gamma_injective_on_corpus(corpus):
    for A in corpus:
        _, g = gamma(A)
        assert g.is_injective(), A.label


@pytest.mark.parametrize("label", ["F1", "F2", "Z3", "Z4", "BOOL", "F1*F1", "Z6", "CHAIN3", "DUAL"])
def test_spec_gamma(label):
    assert spec_gamma_check(builtin(label)).ok


def test_global_sections_of_products():
    G, g = gamma(builtin("F1*F1"))
    assert G.ring.size == 4 and g.is_surjective()
    G, g = gamma(zmod(6))
    assert find_isomorphism(G.ring, zmod(6), Kind.RING) is not None


def test_partial_fields_are_global():
    for F in partial_fields():
        assert is_global_field(F), F.label


def test_spec_morphisms_continuous_and_local(small_corpus):
    for A, B in itertools.product(small_corpus[:10], repeat=2):
        for phi in enumerate_homs(A, B, Kind.RING):
            m = spec_morphism(phi)
            assert m.continuous and m.local


@pytest.mark.parametrize("a,b,expected", [("F1", "F1", 1), ("F1", "F1*F1", 2), ("F1*F1", "F1*F1", 4),
                                          ("Z6", "Z6", 1), ("F2", "F1", 1), ("F1", "F2", 0),
                                          ("CHAIN3", "F1", 1)])
def test_morphism_correspondence(a, b, expected):
    count, homs = correspondence_check(builtin(a), builtin(b))
    assert count == homs == expected
