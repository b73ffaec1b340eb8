import json
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from kzhyperlog import identities as I
from kzhyperlog import osbar
from kzhyperlog.envalg import G1, G11, G12, G2, G22, M05_GENS, NCPoly
from kzhyperlog.errors import DomainError, PreconditionError
from kzhyperlog.hyperlog import EvalConfig
from kzhyperlog.wordalg import M05, ShufflePoly, Z1, Z11, Z12, Z2, Z22, words_of_degree

mp.mp.dps = 30
CFG = EvalConfig(eps=1e-11)
POINTS = [(0.1, 0.2), (0.3, 0.4), (0.5, 0.5), (0.25, 0.45), (0.4, 0.1)]


def li11(x1, x2, terms=400):
    """sum_{n > m >= 1} x1^n x2^m / (n m)."""
    x1, x2 = mp.mpf(x1), mp.mpf(x2)
    acc, inner = mp.mpf(0), mp.mpf(0)
    for n in range(1, terms):
        acc += x1 ** n / n * inner
        inner += x2 ** n / n
    return acc


def sig1(a, b):
    return -a * (1 - b) / (1 - a)


def sig2(a, b):
    return -b * (1 - a) / (1 - b)


@pytest.mark.parametrize("z1,z2", POINTS)
def test_five_term_oracle(z1, z2):
    z1, z2 = mp.mpf(z1), mp.mpf(z2)
    lhs = mp.polylog(2, z1 * z2)
    rhs = (mp.polylog(2, sig1(z1, z2)) + mp.polylog(2, sig2(z1, z2)) + mp.polylog(2, z1)
           + mp.polylog(2, z2) + mp.log((1 - mp.mpf(z1)) / (1 - z2)) ** 2 / 2)
    assert abs(lhs - rhs) < 1e-25
    assert I.five_term_check(float(z1), float(z2)) < 1e-10


@pytest.mark.parametrize("z1,z2", POINTS)
def test_landen_against_mpmath(z1, z2):
    l1 = I.landen1().evaluate(z1, z2, CFG)
    l2 = I.landen2().evaluate(z1, z2, CFG)
    x1, x2 = mp.mpf(z1), mp.mpf(z2)
    ref1 = li11(x1, x2) - mp.polylog(2, x1) - mp.log(1 - x1) ** 2 / 2 + mp.polylog(2, x1 * x2)
    ref2 = -li11(x1, x2) - mp.polylog(2, x2) - mp.log(1 - x2) ** 2 / 2 + mp.log(1 - x1) * mp.log(1 - x2)
    # the formulas themselves, at high precision
    assert abs(ref1 - mp.polylog(2, sig1(x1, x2))) < 1e-25
    assert abs(ref2 - mp.polylog(2, sig2(x1, x2))) < 1e-25
    # the package's evaluation of both sides
    assert abs(l1[0].value - complex(ref1)) < 1e-10
    assert abs(l1[1].value - complex(ref1)) < 1e-10
    assert abs(l2[0].value - complex(ref2)) < 1e-10
    assert abs(l2[1].value - complex(ref2)) < 1e-10


def test_five_term_limits():
    assert I.five_term_check(1e-6, 0.4) < 1e-10
    assert I.five_term_check(0.5, 0.5) < 1e-10
    with pytest.raises(DomainError):
        I.five_term_check(0.9, 0.1)  # sigma_1 leaves the unit disc


def test_hpmpl_11_text():
    ident = I.harmonic_product_mpl(1, 1)
    assert ident.to_text().startswith("hpmpl(1, 1): ")
    assert len(ident.rhs) == 3


@pytest.mark.parametrize("z1,z2", POINTS)
def test_hpmpl_against_mpmath(z1, z2):
    assert I.harmonic_product_mpl(1, 1).residual(z1, z2, CFG)[0] < 1e-10
    z1, z2 = mp.mpf(z1), mp.mpf(z2)
    lhs = mp.polylog(1, z1) * mp.polylog(1, z2)
    rhs = li11(z1, z2) + mp.polylog(2, z1 * z2) + li11(z2, z1)
    assert abs(lhs - rhs) < 1e-25


def test_hpmzv():
    assert I.verify(I.hpmzv(2, 3), cfg=EvalConfig(1e-10), tol=1e-8).passed
    assert I.verify(I.hpmzv(2, 2), cfg=EvalConfig(1e-10), tol=1e-8).passed
    with pytest.raises(PreconditionError):
        I.hpmzv(1, 2)


def test_ghpr_examples():
    g = I.ghpr((G11,), (G22,))
    assert g.residual(0.3, 0.4, CFG)[0] < 1e-12
    assert I.ghpr((), ()).to_text() == "ghpr(I, I): 1*1 = 1*1"
    g = I.ghpr((G12,), (G22,))
    # Li_1(z1 z2) Li_1(z2) on the left
    lhs, rhs = g.evaluate(0.3, 0.4, CFG)
    assert abs(lhs.value - complex(mp.log(1 - 0.12) * mp.log(1 - 0.4))) < 1e-11
    assert abs(lhs.value - rhs.value) < 1e-10
    with pytest.raises(PreconditionError):
        I.ghpr((G11, G1), ())


def test_ghpr_count():
    assert len(I.ghpr_pairs(3)) == 46
    assert len(I.ghpr_pairs(1)) == 4


def test_ghpr_to_hpmpl():
    for k, l in ((1, 1), (2, 1), (2, 2)):
        assert I.ghpr_hpmpl_residual(k, l, 0.3, 0.6, CFG) < 1e-9


def test_sigma_examples():
    assert I.sigma_pullback(ShufflePoly.word(M05, (Z12,))) == ShufflePoly.word(M05, (Z12,))
    z1 = ShufflePoly.word(M05, (Z1,))
    assert I.sigma_pullback(I.sigma_pullback(z1)) == z1
    z12 = NCPoly.gen(M05_GENS, G12)
    assert I.sigma_pushforward(z12) == NCPoly(M05_GENS, {(G11,): 1, (G22,): 1, (G12,): 1})


def test_sigma_pullback_matches_forms():
    # sigma: (z1, z2) -> (sigma_1, sigma_2); pull back the logarithmic forms numerically
    import sympy
    a, b = sympy.symbols("a b")
    s1, s2 = -a * (1 - b) / (1 - a), -b * (1 - a) / (1 - b)
    logs = {Z1: sympy.log(s1), Z11: -sympy.log(1 - s1), Z2: sympy.log(s2), Z22: -sympy.log(1 - s2),
            Z12: -sympy.log(1 - s1 * s2)}
    base = {Z1: sympy.log(a), Z11: -sympy.log(1 - a), Z2: sympy.log(b), Z22: -sympy.log(1 - b),
            Z12: -sympy.log(1 - a * b)}
    pt = {a: sympy.Rational(1, 3), b: sympy.Rational(2, 7)}
    for letter, image in I.SIGMA_PULLBACK.items():
        for var in (a, b):
            lhs = sympy.diff(logs[letter], var)
            rhs = sum(c * sympy.diff(base[x], var) for x, c in image.items())
            assert sympy.simplify((lhs - rhs).subs(pt)) == 0


def test_sigma_compatibility():
    assert I.sigma_compatibility()


@pytest.mark.parametrize("s", [2, 3])
def test_sigma_preserves_bar(s):
    for p in osbar.bar_basis(s):
        assert osbar.cic_check(I.sigma_pullback(p))


words3 = st.integers(0, 3).flatmap(lambda n: st.sampled_from(words_of_degree(M05, n)))


@settings(max_examples=40, deadline=None)
@given(words3)
def test_sigma_pullback_involution(w):
    p = ShufflePoly.word(M05, w)
    assert I.sigma_pullback(I.sigma_pullback(p)) == p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(M05_GENS), max_size=3).map(tuple))
def test_sigma_pushforward_involution(w):
    from kzhyperlog.envalg import normal_form
    q = normal_form(NCPoly.word(M05_GENS, w))
    assert I.sigma_pushforward(I.sigma_pushforward(q)) == q


def test_connection_degree2():
    res = I.connection_degree2()
    assert res.tensor1 == I.LANDEN1_WORDS
    assert res.tensor2 == I.LANDEN2_WORDS
    assert res.eps_cancelled
    assert I.five_term_symbolic(res)


def test_connection_landen_numeric():
    res = I.connection_degree2()
    for ident in (res.landen1, res.landen2):
        grid = I.admissible(ident, I.DEFAULT_GRID)
        assert grid
        assert I.verify(ident, grid, CFG, 1e-9).passed


def test_verify_examples():
    assert I.verify(I.harmonic_product_mpl(1, 1), I.DEFAULT_GRID, CFG, 1e-10).passed
    assert I.verify(I.ghpr((G11,), (G22,)), I.DEFAULT_GRID, CFG, 1e-10).passed


def test_corrupted_identity_fails():
    bad = I.harmonic_product_mpl(1, 1).with_rhs_coefficient(1, -1)
    assert not I.verify(bad, I.DEFAULT_GRID, CFG, 1e-9).passed


def test_report_json():
    rep = I.verify(I.five_term(), I.admissible(I.five_term(), I.DEFAULT_GRID), CFG)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["pass"] and data["identity"] == "5TERM"
    assert max(p["residual"] for p in data["points"]) == data["max_residual"]


def test_grid_parsing():
    assert I.parse_grid("0.1:0.5:0.1") == [0.1, 0.2, 0.3, 0.4, 0.5]
    with pytest.raises(PreconditionError):
        I.parse_grid("0.1:0.5")
    with pytest.raises(PreconditionError):
        I.parse_grid("0.5:0.1:0.1")


def test_domain_error_outside_square():
    with pytest.raises(DomainError):
        I.five_term().evaluate(1.2, 0.3)
