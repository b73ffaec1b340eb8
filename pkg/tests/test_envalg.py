import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kzhyperlog import linalg
from kzhyperlog.envalg import (G1, G11, G12, G2, G22, LEFT_GENS, M05_GENS, RIGHT_GENS,
                               U05, NCPoly, alpha_apply, bracket, check_w0,
                               derive_exchange_rules, free_algebra, free_gens,
                               normal_form, pbw_rank)
from kzhyperlog.errors import AlphabetError, PreconditionError


def N(*word, coeff=1):
    return NCPoly.word(M05_GENS, word, coeff)


def Zg(g):
    return NCPoly.gen(M05_GENS, g)


def ipbr_relations():
    # written out independently of the package's own relation list
    z1, z11, z2, z22, z12 = (Zg(g) for g in M05_GENS)
    c = bracket(z11, z22)
    return [bracket(z1, z2), bracket(z11, z2), bracket(z1, z22),
            c - bracket(-z11, z12), c - bracket(z22, z12), c - bracket(z2 - z1, z12)]


def all_words(n):
    return [tuple(w) for w in itertools.product(M05_GENS, repeat=n)]


class IdealOracle:
    """Degree-s part of the two-sided ideal, spanned by u r v."""

    def __init__(self, s):
        self.words = all_words(s)
        self.col = {w: i for i, w in enumerate(self.words)}
        self.ech = linalg.Echelon(track=False)
        for r in ipbr_relations():
            for a in range(s - 1):
                for u in all_words(a):
                    for v in all_words(s - 2 - a):
                        self.ech.add(self.vec(NCPoly.word(M05_GENS, u) * r * NCPoly.word(M05_GENS, v)))

    def vec(self, p):
        return {self.col[w]: c for w, c in p.items()}

    def contains(self, p):
        return self.ech.contains(self.vec(p))


@pytest.fixture(scope="module")
def oracles():
    return {s: IdealOracle(s) for s in (2, 3, 4)}


def test_rules():
    rules = derive_exchange_rules()
    assert rules[G2, G1] == N(G1, G2)
    assert rules[G2, G11] == N(G11, G2)
    assert rules[G22, G1] == N(G1, G22)
    assert rules[G22, G11] == N(G11, G22) + N(G11, G12) - N(G12, G11)
    assert rules[G22, G12] == N(G12, G22) + N(G12, G11) - N(G11, G12)
    assert rules[G2, G12] == N(G12, G2) + N(G1, G12) - N(G12, G1) + N(G12, G11) - N(G11, G12)
    assert len(rules) == 6


def test_normal_word_unchanged():
    assert normal_form(N(G1, G11)) == N(G1, G11)


@pytest.mark.parametrize("s", [2, 3, 4])
def test_normal_form_against_ideal(oracles, s):
    orc = oracles[s]
    for w in all_words(s):
        p = N(*w)
        nf = normal_form(p)
        assert all(U05.is_normal(v) for v, _ in nf.items())
        assert orc.contains(p - nf)


@pytest.mark.parametrize("s,count", [(0, 1), (1, 5), (2, 19), (3, 65), (4, 211)])
def test_pbw_count(oracles, s, count):
    assert len(U05.pbw_monomials(s)) == count
    assert count == sum(3 ** a * 2 ** (s - a) for a in range(s + 1))
    if s >= 2:
        # quotient dimension by the brute-force ideal
        assert 5 ** s - oracles[s].ech.rank == count


monomials = st.lists(st.sampled_from(M05_GENS), max_size=2).map(tuple)
ncpolys = st.dictionaries(monomials, st.integers(-2, 2), max_size=3).map(lambda d: NCPoly(M05_GENS, d))


@settings(max_examples=60, deadline=None)
@given(ncpolys, ncpolys)
def test_product_compatible(p, q):
    assert normal_form(p * q) == normal_form(normal_form(p) * normal_form(q))


@settings(max_examples=60, deadline=None)
@given(ncpolys)
def test_idempotent(p):
    assert normal_form(normal_form(p)) == normal_form(p)


def test_free_mode_identity():
    gens = free_gens(2)
    alg = free_algebra(gens)
    p = NCPoly.word(gens, ("X2", "X0", "X1")) + NCPoly.word(gens, ("X1", "X0"), 3)
    assert alg.normal_form(p) == p


def test_alpha_examples():
    assert alpha_apply((G11,)) == N(G11)
    assert alpha_apply((G1, G11)) == N(G1, G11) - N(G11, G1)
    assert alpha_apply((G1,)) == NCPoly(M05_GENS)


def test_pbw_rank_examples():
    assert pbw_rank([((G11,), ()), ((G12,), ()), ((), (G22,))]) == 3
    assert pbw_rank([]) == 0
    assert pbw_rank([((G11,), ())]) == 1


def test_pbw_rank_degree2_full():
    # alpha(W' W'') over W0 pairs of degree 2 are independent
    pairs = [(w1, w2) for a in range(3) for w1 in itertools.product(LEFT_GENS, repeat=a)
             for w2 in itertools.product(RIGHT_GENS, repeat=2 - a)
             if (not w1 or w1[-1] != G1) and (not w2 or w2[-1] != G2)]
    assert pbw_rank(pairs) == len(pairs)


def test_check_w0():
    assert check_w0((G11, G12), LEFT_GENS, G1) == (G11, G12)
    with pytest.raises(PreconditionError):
        check_w0((G11, G1), LEFT_GENS, G1)
    with pytest.raises(PreconditionError):
        check_w0((G22,), LEFT_GENS, G1)


def test_generator_mismatch():
    with pytest.raises(AlphabetError):
        normal_form(NCPoly.word(("X0", "X1"), ("X0",)))


@settings(max_examples=40, deadline=None)
@given(ncpolys)
def test_serialization(p):
    assert NCPoly.from_text(M05_GENS, p.to_text()) == p
    assert NCPoly.from_json(p.to_json()) == p
