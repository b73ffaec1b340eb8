import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kzhyperlog import osbar
from kzhyperlog.envalg import G1, G11, G12, G2, G22
from kzhyperlog.errors import DomainError, PreconditionError
from kzhyperlog.osbar import (OS2, TensorElement, b0_basis, bar_basis, cic_check, iota_12,
                              iota_12_inverse, iota_21, iota_21_inverse, phi, wedge)
from kzhyperlog.wordalg import (LEFT, LEFT21, M05, RIGHT, RIGHT21, ShufflePoly, Z1, Z11,
                                Z12, Z12_1, Z12_2, Z2, Z22, shuffle, words_of_degree)

x, y = sympy.symbols("z1 z2")
# (dz1, dz2) components of the five logarithmic forms
FORMS = {
    Z1: (1 / x, 0),
    Z11: (1 / (1 - x), 0),
    Z2: (0, 1 / y),
    Z22: (0, 1 / (1 - y)),
    Z12: (y / (1 - x * y), x / (1 - x * y)),
}


def wedge_fn(a, b):
    (a1, a2), (b1, b2) = FORMS[a], FORMS[b]
    return a1 * b2 - a2 * b1


WEDGE_AT = {(a, b): sympy.lambdify((x, y), wedge_fn(a, b), modules=[]) for a in M05 for b in M05}


def W(*letters):
    return ShufflePoly.word(M05, letters)


def sample_points(n, seed=3):
    rng = random.Random(seed)
    return [(Fraction(rng.randint(2, 97), 101), Fraction(rng.randint(2, 97), 103)) for _ in range(n)]


POINTS = sample_points(8)


def contraction_rows(indexed_words):
    """Exact values of every adjacent contraction at rational points."""
    rows = {}
    for j, w in indexed_words:
        for l in range(len(w) - 1):
            for k, (px, py) in enumerate(POINTS):
                val = Fraction(WEDGE_AT[w[l], w[l + 1]](px, py))
                if val:
                    row = rows.setdefault((l, w[:l], w[l + 2:], k), {})
                    row[j] = row.get(j, 0) + val
    return rows


def integrable_oracle(p):
    terms = p.items()
    rows = contraction_rows([(j, w) for j, (w, _) in enumerate(terms)])
    return all(sum(terms[j][1] * v for j, v in row.items()) == 0 for row in rows.values())


def fraction_rank(rows):
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        piv = rows.pop()
        col, pv = next(iter(piv.items()))
        rank += 1
        nxt = []
        for r in rows:
            c = r.get(col)
            if c:
                r = {k: r.get(k, 0) - c / pv * piv.get(k, 0) for k in set(r) | set(piv)}
                r = {k: v for k, v in r.items() if v}
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def oracle_kernel_dim(s):
    """dim of {p in S_s : integrable}, by exact evaluation at rational points."""
    words = words_of_degree(M05, s)
    rows = contraction_rows(list(enumerate(words)))
    return len(words) - fraction_rank(rows.values())


def test_os2_dimension_against_forms():
    pairs = [(a, b) for i, a in enumerate(M05) for b in M05[i + 1:]]
    rows = [{i: Fraction(WEDGE_AT[a, b](px, py)) for i, (a, b) in enumerate(pairs)}
            for px, py in sample_points(12)]
    assert fraction_rank(rows) == OS2.dim == 6


@pytest.mark.parametrize("rel", osbar.DEFAULT_RELATIONS)
def test_relations_hold_for_forms(rel):
    assert sympy.simplify(sum(c * wedge_fn(a, b) for (a, b), c in rel.items())) == 0


def test_wedge_examples():
    assert wedge(Z1, Z11).is_zero()
    assert (wedge(Z1, Z12) + wedge(Z2, Z12)).is_zero()
    assert not wedge(Z1, Z2).is_zero()
    assert (wedge(Z1, Z2) + wedge(Z2, Z1)).is_zero()


def test_cic_examples():
    assert cic_check(W(Z1, Z2) + W(Z2, Z1))
    assert not cic_check(W(Z1, Z2))
    assert all(cic_check(W(a)) for a in M05)
    with pytest.raises(PreconditionError):
        cic_check(W(Z1) + W(Z1, Z2))


@pytest.mark.parametrize("s,dim", [(0, 1), (1, 5), (2, 19), (3, 65), (4, 211)])
def test_bar_dims(s, dim):
    assert len(bar_basis(s)) == dim


@pytest.mark.parametrize("s", [2, 3, 4])
def test_bar_basis_against_forms(s):
    basis = bar_basis(s)
    assert all(integrable_oracle(p) for p in basis)
    assert oracle_kernel_dim(s) == len(basis)


def test_listed_generators_integrable_with_forms():
    assert all(integrable_oracle(p) for p in osbar.listed_b2_generators())


@pytest.mark.parametrize("s,dim", [(0, 1), (1, 3), (2, 10), (3, 32), (4, 100)])
def test_b0_dims(s, dim):
    assert len(b0_basis(s)) == dim == osbar.s0_tensor_dim(s)


def test_b0_degree1():
    assert {p.items()[0][0] for p in b0_basis(1)} == {(Z11,), (Z22,), (Z12,)}


def test_iota_examples():
    assert iota_12(W(Z1, Z2) + W(Z2, Z1)) == TensorElement(LEFT, RIGHT, {((Z1,), (Z2,)): 1})
    assert iota_12(W(Z22, Z12) + W(Z12, Z22)) == TensorElement(LEFT, RIGHT, {((Z12_1,), (Z22,)): 1})
    assert iota_12(ShufflePoly.one(M05)) == TensorElement.one(LEFT, RIGHT)
    with pytest.raises(DomainError):
        iota_12(W(Z1, Z2))


def test_iota_inverse_examples():
    t = TensorElement(LEFT, RIGHT, {((Z11,), (Z22,)): 1})
    assert iota_12_inverse(t) == W(Z11, Z22) + W(Z22, Z11)
    assert iota_12_inverse(TensorElement(LEFT, RIGHT, {((Z12_1,), ()): 1})) == W(Z12)
    assert iota_12_inverse(TensorElement(LEFT, RIGHT, {((), (Z22,)): 1})) == W(Z22)
    with pytest.raises(PreconditionError):
        iota_12_inverse(TensorElement(LEFT, RIGHT, {((Z11, Z1), ()): 1}))


def test_phi_examples():
    assert phi((G11,), ()) == W(Z11)
    assert phi((G12,), (G22,)) == W(Z22, Z12) + W(Z12, Z22)
    assert phi((G11,), (G22,)) == W(Z11, Z22) + W(Z22, Z11)
    assert iota_21(phi((G11,), (G22,))) == TensorElement(LEFT21, RIGHT21, {((Z22,), (Z11,)): 1})


def bar_element(s):
    return st.lists(st.integers(-2, 2), min_size=len(bar_basis(s)), max_size=len(bar_basis(s))).map(
        lambda cs: sum((p * c for p, c in zip(bar_basis(s), cs)), ShufflePoly.zero(M05)))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2).flatmap(bar_element), st.integers(1, 2).flatmap(bar_element))
def test_iota_multiplicative(p, q):
    for f in (iota_12, iota_21):
        assert f(shuffle(p, q)) == f(p).shuffle(f(q))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2).flatmap(bar_element), st.integers(1, 2).flatmap(bar_element))
def test_shuffle_closed(p, q):
    assert osbar.cic_check_all(shuffle(p, q))


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_roundtrip_both_variants(s):
    for b in b0_basis(s):
        assert iota_12_inverse(iota_12(b)) == b
        assert iota_21_inverse(iota_21(b)) == b


@pytest.mark.parametrize("s", [2, 3])
def test_polynomial_decomposition(s):
    for p in bar_basis(s):
        parts = osbar.polynomial_decompose(p)
        assert all(not c.ends_with_any((Z1, Z2)) for c in parts.values())
        assert osbar.polynomial_reconstruct(parts) == p


def test_polynomial_decomposition_examples():
    assert osbar.polynomial_decompose(W(Z1)) == {(1, 0): ShufflePoly.one(M05)}
    assert osbar.polynomial_decompose(W(Z11)) == {(0, 0): W(Z11)}


def test_tensor_serialization():
    t = TensorElement(LEFT, RIGHT, {((Z11, Z12_1), (Z22,)): Fraction(-3, 2), ((), ()): 1})
    assert "⊗" in t.to_text()
    assert TensorElement.from_text(LEFT, RIGHT, t.to_text()) == t
    assert TensorElement.from_json(t.to_json()) == t


def test_iota_rejects_other_alphabet_in_inverse():
    with pytest.raises(PreconditionError):
        iota_21_inverse(TensorElement(LEFT, RIGHT, {((Z11,), ()): 1}))
    assert Z12_2 in LEFT21 and Z1 in RIGHT21
