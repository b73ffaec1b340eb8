import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kzhyperlog.errors import AlphabetError
from kzhyperlog.wordalg import (M05, ShufflePoly, Z1, Z2, Z11, Z12, Z22, concat,
                                last_letter_decompose, reconstruct, shuffle,
                                shuffle_words, words_of_degree)


def brute_shuffle(u, v):
    """Interleavings by choosing which positions hold the letters of u."""
    n = len(u) + len(v)
    out = {}
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        w = tuple(next(it_u) if i in pos else next(it_v) for i in range(n))
        out[w] = out.get(w, 0) + 1
    return out


def W(*letters, coeff=1):
    return ShufflePoly.word(M05, letters, coeff)


words = st.lists(st.sampled_from(M05), max_size=4).map(tuple)
polys = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(lambda d: ShufflePoly(M05, d))


def homogeneous(deg):
    w = st.lists(st.sampled_from(M05), min_size=deg, max_size=deg).map(tuple)
    return st.dictionaries(w, st.integers(-3, 3), max_size=3).map(lambda d: ShufflePoly(M05, d))


def test_letter_shuffle():
    assert shuffle(W(Z1), W(Z2)) == W(Z1, Z2) + W(Z2, Z1)


def test_unit():
    w = W(Z11, Z12)
    assert shuffle(w, ShufflePoly.one(M05)) == w
    assert shuffle(ShufflePoly.one(M05), w) == w


def test_three_interleavings():
    assert shuffle(W(Z1, Z2), W(Z22)) == W(Z1, Z2, Z22) + W(Z1, Z22, Z2) + W(Z22, Z1, Z2)


def test_concat_examples():
    assert concat(W(Z1), W(Z2)) == W(Z1, Z2)
    assert concat(ShufflePoly.one(M05), W(Z12)) == W(Z12)
    assert concat(W(Z1) + W(Z2), W(Z11)) == W(Z1, Z11) + W(Z2, Z11)


def test_decompose_examples():
    assert last_letter_decompose(W(Z1), Z1) == {1: ShufflePoly.one(M05)}
    assert last_letter_decompose(W(Z11, Z1), Z1) == {0: -W(Z1, Z11), 1: W(Z11)}
    assert last_letter_decompose(W(Z1, Z11), Z1) == {0: W(Z1, Z11)}


def test_decompose_square():
    # coefficients multiply the word z1.z1, and z1 sh z1 = 2 z1.z1
    assert shuffle(W(Z1), W(Z1)) == W(Z1, Z1) * 2
    parts = last_letter_decompose(W(Z1, Z1), Z1)
    assert parts == {2: ShufflePoly.one(M05)}
    assert reconstruct(parts, Z1, M05) == shuffle(W(Z1), W(Z1)) * Fraction(1, 2)


def test_decompose_rejects_foreign_letter():
    with pytest.raises(AlphabetError):
        last_letter_decompose(W(Z1), "x9")


def test_mixed_alphabets_rejected():
    with pytest.raises(AlphabetError):
        shuffle(W(Z1), ShufflePoly.word((Z1, Z11), (Z1,)))


@pytest.mark.parametrize("m,n", [(0, 3), (1, 1), (2, 3), (3, 3), (4, 2)])
def test_shuffle_matches_positions_oracle(m, n):
    u = tuple(M05[i % 5] for i in range(m))
    v = tuple(M05[(2 * i + 1) % 5] for i in range(n))
    got = shuffle_words(u, v)
    assert got == brute_shuffle(u, v)
    assert sum(got.values()) == math.comb(m + n, m)


@settings(max_examples=60, deadline=None)
@given(homogeneous(2), homogeneous(2))
def test_commutative(p, q):
    assert shuffle(p, q) == shuffle(q, p)


@settings(max_examples=40, deadline=None)
@given(homogeneous(2), homogeneous(2), homogeneous(2))
def test_associative(p, q, r):
    assert shuffle(shuffle(p, q), r) == shuffle(p, shuffle(q, r))


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_term_count(u, v):
    assert sum(shuffle_words(u, v).values()) == math.comb(len(u) + len(v), len(u))


@settings(max_examples=60, deadline=None)
@given(homogeneous(2), homogeneous(3))
def test_grading(p, q):
    assert all(len(w) == 5 for w, _ in shuffle(p, q).items())


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(M05), max_size=5).map(tuple), st.sampled_from([Z1, Z2]))
def test_decompose_roundtrip(word, x):
    p = W(*word)
    parts = last_letter_decompose(p, x)
    assert all(not q.ends_with_any((x,)) for q in parts.values())
    assert reconstruct(parts, x, M05) == p


@settings(max_examples=60, deadline=None)
@given(polys)
def test_serialization_roundtrip(p):
    assert ShufflePoly.from_text(M05, p.to_text()) == p
    assert ShufflePoly.from_json(p.to_json()) == p


def test_text_format():
    p = W(Z1, Z11, coeff=Fraction(3, 2)) - W(Z12, Z22)
    assert p.to_text() == "3/2*z1.z11 - 1*z12.z22"
    assert ShufflePoly.one(M05).to_text() == "1*1"


def test_words_of_degree():
    assert len(words_of_degree(M05, 3)) == 125
    assert words_of_degree(M05, 0) == [()]
