import itertools

import pytest
import sympy

from pring.catalog import all_partial_monoids, f1, ring_corpus, zmod
from pring.wordproblem import (MonoidPresentation, Verdict, amon_equal, completion_presentation, element_word,
                               word_equal)


def groebner_equal(P: MonoidPresentation, u, v) -> bool:
    """u = v in the presented monoid iff x^u - x^v lies in the binomial ideal of the rules."""
    xs = sympy.symbols(f"x0:{max(P.rank, 1)}")

    def mono(w):
        return sympy.Mul(*[x ** e for x, e in zip(xs, w)])

    gens = [mono(a) - mono(b) for a, b in P.rules]
    if not gens:
        return u == v
    G = sympy.groebner(gens, *xs, order="grevlex")
    return G.contains(mono(u) - mono(v))


def test_f1_words():
    F = f1()
    assert amon_equal(F, [1, 1], [1]) is Verdict.DISTINCT
    assert amon_equal(F, [1, 0], [1]) is Verdict.EQUAL
    assert amon_equal(F, [1, 1], [1, 1]) is Verdict.EQUAL


def test_z2_words():
    Z = zmod(2)
    assert amon_equal(Z, [1, 1], []) is Verdict.EQUAL
    P = completion_presentation(Z)
    r = word_equal(P, element_word(Z, P, [1, 1]), element_word(Z, P, []))
    assert len(r.path) == 2


def test_budget_gives_unknown():
    Z = zmod(5)
    assert amon_equal(Z, [1, 1, 1, 1, 1], [], max_states=2) is Verdict.UNKNOWN
    assert amon_equal(Z, [1, 1, 1, 1, 1], []) is Verdict.EQUAL


def _small_words(rank, length):
    out = []
    for n in range(length + 1):
        for combo in itertools.combinations_with_replacement(range(rank), n):
            w = [0] * rank
            for i in combo:
                w[i] += 1
            out.append(tuple(w))
    return out


@pytest.mark.parametrize("A", list(all_partial_monoids(3)) + [zmod(3), zmod(4)] + ring_corpus(4)[9:12],
                         ids=lambda A: A.label)
def test_word_equality_matches_groebner(A):
    P = completion_presentation(A)
    words = _small_words(P.rank, 3)
    for u, v in itertools.combinations(words, 2):
        r = word_equal(P, u, v)
        assert r.verdict is not Verdict.UNKNOWN
        assert bool(r) == groebner_equal(P, u, v), (A.label, P.show(u), P.show(v))


def test_path_is_a_rewrite_chain():
    Z = zmod(4)
    P = completion_presentation(Z)
    r = word_equal(P, element_word(Z, P, [1, 1, 1, 1]), element_word(Z, P, [2, 2]))
    assert r
    for a, b in zip(r.path, r.path[1:]):
        assert b in set(P.neighbours(a, 10))
