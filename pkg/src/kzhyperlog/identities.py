"""Functional identities among hyperlogarithms and their verification.

An :class:`Identity` is ``sum lhs terms = sum rhs terms`` where each term is
a rational coefficient times a product of evaluable factors (iterated
integrals of words, polylogarithms of rational arguments, logarithms, MZVs).
Identities come from the generalized harmonic product relations, the
classical harmonic products, and the degree-2 connection formula under the
involution ``sigma``.
"""

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import sympy

from . import osbar
from .envalg import (G1, G2, G11, G12, G22, LEFT_GENS, M05_GENS, RIGHT_GENS,
                     U05, NCPoly, check_w0)
from .errors import DomainError, InternalConsistencyError, KZError, PreconditionError
from .hyperlog import (DEFAULT, EvalConfig, Estimate, eval_mpl1, eval_mpl2,
                       eval_mzv, eval_word, product_estimate)
from .osbar import (THETA_12_LEFT, THETA_12_RIGHT, TensorElement, theta)
from .wordalg import (LEFT, LEFT21, M05, RIGHT, RIGHT21, Z1, Z2, Z11, Z12,
                      Z12_1, Z22, ShufflePoly)

z1_sym, z2_sym = sympy.symbols("z1 z2", positive=True)
SIGMA_1 = -z1_sym * (1 - z2_sym) / (1 - z1_sym)
SIGMA_2 = -z2_sym * (1 - z1_sym) / (1 - z2_sym)

_VARIABLE = {LEFT: "z1", RIGHT: "z2", LEFT21: "z2", RIGHT21: "z1"}
_U64 = 2.0 ** -53


# -- factors ------------------------------------------------------------------


def _numeric(expr, z1, z2):
    return complex(expr.subs({z1_sym: z1, z2_sym: z2}).evalf(30))


@dataclass(frozen=True)
class WordFactor:
    """Iterated integral of a word over one of the contour alphabets."""

    word: tuple
    alphabet: tuple

    def evaluate(self, z1, z2, cfg):
        return eval_word(self.word, self.alphabet, z1, z2, cfg=cfg)

    def label(self):
        return "L(%s; %s)" % (".".join(self.word) or "1", _VARIABLE[self.alphabet])

    def symbol(self):
        return sympy.Symbol(self.label())


@dataclass(frozen=True)
class PolylogFactor:
    """``Li_k(i, j; x, y)`` with ``j = depth - i``; ``j = 0`` is ``Li_k(x)``."""

    k: tuple
    i: int
    args: tuple

    def evaluate(self, z1, z2, cfg):
        vals = [_numeric(a, z1, z2) for a in self.args]
        j = len(self.k) - self.i
        if j == 0:
            return eval_mpl1(self.k, vals[0], cfg)
        return eval_mpl2(self.k, self.i, j, vals[0], vals[1], cfg)

    def label(self):
        ks = ",".join(map(str, self.k))
        if len(self.k) == self.i:
            return "Li_{%s}(%s)" % (ks, self.args[0])
        return "Li_{%s}(%d,%d; %s, %s)" % (ks, self.i, len(self.k) - self.i, *self.args)

    def symbol(self):
        return sympy.Symbol(self.label())


@dataclass(frozen=True)
class LogFactor:
    """``log(arg) ** power``."""

    arg: object
    power: int = 1

    def evaluate(self, z1, z2, cfg):
        v = cmath.log(_numeric(self.arg, z1, z2)) ** self.power
        return Estimate(v, 4 * self.power * _U64 * abs(v), 0, cfg.clamped)

    def label(self):
        return "log(%s)^%d" % (self.arg, self.power)

    def symbol(self):
        return sympy.log(self.arg) ** self.power


@dataclass(frozen=True)
class MZVFactor:
    k: tuple

    def evaluate(self, z1, z2, cfg):
        return eval_mzv(self.k, cfg)

    def label(self):
        return "zeta(%s)" % ",".join(map(str, self.k))

    def symbol(self):
        return sympy.Symbol(self.label())


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    factors: Tuple = ()

    def evaluate(self, z1, z2, cfg):
        est = Estimate(1 + 0j, 0.0, 0, cfg.clamped)
        for f in self.factors:
            est = product_estimate(est, f.evaluate(z1, z2, cfg))
        c = float(self.coeff)
        return Estimate(c * est.value, abs(c) * est.bound, est.terms, est.clamped)

    def label(self):
        body = " * ".join(f.label() for f in self.factors) or "1"
        return "%s*%s" % (self.coeff, body)

    def to_sympy(self):
        out = sympy.Rational(self.coeff.numerator, self.coeff.denominator)
        for f in self.factors:
            out *= f.symbol()
        return out


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]
    provenance: str
    constraints: Tuple = ()  # expressions whose modulus must stay below 1
    point_free: bool = False

    def admissible(self, z1, z2):
        if self.point_free:
            return True
        if not (0 < z1 < 1 and 0 < z2 < 1):
            return False
        return all(abs(_numeric(c, z1, z2)) < 1 for c in self.constraints)

    @staticmethod
    def _side(terms, z1, z2, cfg):
        value, bound, n = 0j, 0.0, 0
        for t in terms:
            est = t.evaluate(z1, z2, cfg)
            value += est.value
            bound += est.bound
            n = max(n, est.terms)
        return Estimate(value, bound, n, cfg.clamped)

    def evaluate(self, z1=None, z2=None, cfg=DEFAULT):
        if not self.admissible(z1, z2):
            raise DomainError("point (%s, %s) outside the domain of %s" % (z1, z2, self.name))
        return self._side(self.lhs, z1, z2, cfg), self._side(self.rhs, z1, z2, cfg)

    def residual(self, z1=None, z2=None, cfg=DEFAULT):
        lhs, rhs = self.evaluate(z1, z2, cfg)
        return abs(lhs.value - rhs.value), lhs.bound + rhs.bound

    def to_sympy(self):
        """``lhs - rhs`` with every factor as an opaque symbol (logs kept)."""
        return sum((t.to_sympy() for t in self.lhs), sympy.Integer(0)) - \
            sum((t.to_sympy() for t in self.rhs), sympy.Integer(0))

    def to_text(self):
        def side(ts):
            return " + ".join(t.label() for t in ts) or "0"
        return "%s: %s = %s" % (self.name, side(self.lhs), side(self.rhs))

    def with_rhs_coefficient(self, index, coeff):
        """Copy with one right-hand coefficient replaced (negative controls)."""
        rhs = list(self.rhs)
        rhs[index] = Term(Fraction(coeff), rhs[index].factors)
        return Identity(self.name + "*", self.lhs, tuple(rhs), "corrupted " + self.provenance,
                        self.constraints, self.point_free)

    def to_json(self):
        return {"name": self.name, "provenance": self.provenance,
                "lhs": [t.label() for t in self.lhs], "rhs": [t.label() for t in self.rhs]}


def _tensor_terms(t):
    """Terms ``c * L(u) * L(v)`` for a TensorElement (empty words dropped)."""
    out = []
    for (u, v), c in t.items():
        fs = []
        if u:
            fs.append(WordFactor(u, t.left))
        if v:
            fs.append(WordFactor(v, t.right))
        out.append(Term(c, tuple(fs)))
    return tuple(out)


def _li(k, i, *args):
    return PolylogFactor(tuple(k), i, tuple(sympy.sympify(a) for a in args))


# -- generalized harmonic products ---------------------------------------------


def ghpr(w1, w2):
    """``L(theta(W'); z1) L(theta(W''); z2) = int_{C21} iota_21(phi(W', W''))``."""
    w1 = check_w0(w1, LEFT_GENS, G1)
    w2 = check_w0(w2, RIGHT_GENS, G2)
    a = theta(w1, THETA_12_LEFT, LEFT)
    b = theta(w2, THETA_12_RIGHT, RIGHT)
    lhs = _tensor_terms(TensorElement.pure(a, b))
    rhs = _tensor_terms(osbar.iota_21(osbar.phi(w1, w2), check=False))
    name = "ghpr(%s, %s)" % (".".join(w1) or "I", ".".join(w2) or "I")
    return Identity(name, lhs, rhs, "ghpr")


def ghpr_pairs(max_degree):
    """All ``(W', W'')`` with ``W'`` in W0(Z1,Z11,Z12), ``W''`` in W0(Z2,Z22)."""
    out = []
    for s in range(max_degree + 1):
        for s1 in range(s + 1):
            for w1 in itertools.product(LEFT_GENS, repeat=s1):
                if w1 and w1[-1] == G1:
                    continue
                for w2 in itertools.product(RIGHT_GENS, repeat=s - s1):
                    if w2 and w2[-1] == G2:
                        continue
                    out.append((w1, w2))
    return out


def harmonic_product_mpl(k, l):
    """``Li_k(z1) Li_l(z2) = Li_{k,l}(1,1;z1,z2) + Li_{k+l}(z1 z2) + Li_{l,k}(1,1;z2,z1)``."""
    if k < 1 or l < 1:
        raise PreconditionError("indices must be positive")
    z1, z2 = z1_sym, z2_sym
    lhs = (Term(Fraction(1), (_li((k,), 1, z1), _li((l,), 1, z2))),)
    rhs = (Term(Fraction(1), (_li((k, l), 1, z1, z2),)),
           Term(Fraction(1), (_li((k + l,), 1, z1 * z2),)),
           Term(Fraction(1), (_li((l, k), 1, z2, z1),)))
    return Identity("hpmpl(%d, %d)" % (k, l), lhs, rhs, "harmonic product")


def ghpr_hpmpl_residual(k, l, u1, u2, cfg=DEFAULT):
    """Compare the ghpr instance ``(Z1^(k-1) Z12, Z2^(l-1) Z22)`` at ``(u1, u2)``
    with the harmonic product at ``(u1 u2, u2)``: both sides, both identities."""
    g = ghpr((G1,) * (k - 1) + (G12,), (G2,) * (l - 1) + (G22,))
    h = harmonic_product_mpl(k, l)
    gl, gr = g.evaluate(u1, u2, cfg)
    hl, hr = h.evaluate(u1 * u2, u2, cfg)
    return max(abs(gl.value - hl.value), abs(gr.value - hr.value))


def hpmzv(k, l):
    """``zeta(k) zeta(l) = zeta(k,l) + zeta(k+l) + zeta(l,k)``."""
    if k < 2 or l < 2:
        raise PreconditionError("MZV harmonic product needs k, l >= 2")
    lhs = (Term(Fraction(1), (MZVFactor((k,)), MZVFactor((l,)))),)
    if k == l:
        rhs = (Term(Fraction(2), (MZVFactor((k, k)),)), Term(Fraction(1), (MZVFactor((2 * k,)),)))
    else:
        rhs = (Term(Fraction(1), (MZVFactor((k, l)),)), Term(Fraction(1), (MZVFactor((k + l,)),)),
               Term(Fraction(1), (MZVFactor((l, k)),)))
    return Identity("hpmzv(%d, %d)" % (k, l), lhs, rhs, "harmonic product of MZVs", point_free=True)


# -- the involution sigma ----------------------------------------------------

SIGMA_PULLBACK = {
    Z1: {Z1: 1, Z11: 1, Z22: -1},
    Z11: {Z11: -1, Z12: 1},
    Z2: {Z11: -1, Z2: 1, Z22: 1},
    Z22: {Z22: -1, Z12: 1},
    Z12: {Z12: 1},
}
SIGMA_PUSHFORWARD = {
    G1: {G1: 1},
    G11: {G1: 1, G11: -1, G2: -1},
    G2: {G2: 1},
    G22: {G1: -1, G2: 1, G22: -1},
    G12: {G11: 1, G22: 1, G12: 1},
}


@dataclass(frozen=True)
class SigmaAction:
    pullback: dict = field(default_factory=lambda: SIGMA_PULLBACK)
    pushforward: dict = field(default_factory=lambda: SIGMA_PUSHFORWARD)

    def pullback_matrix(self):
        return [[Fraction(self.pullback[a].get(b, 0)) for b in M05] for a in M05]

    def pushforward_matrix(self):
        return [[Fraction(self.pushforward[g].get(h, 0)) for h in M05_GENS] for g in M05_GENS]


def sigma_pullback(p):
    """Letterwise substitution ``zeta -> sigma^* zeta``, multiplicative on words."""
    if p.alphabet != M05:
        raise PreconditionError("sigma acts on the five M0,5 letters")
    out = {}
    for w, c in p._terms.items():
        for choice in itertools.product(*(SIGMA_PULLBACK[a].items() for a in w)):
            word = tuple(a for a, _ in choice)
            coeff = c
            for _, x in choice:
                coeff *= x
            out[word] = out.get(word, 0) + coeff
    return ShufflePoly(M05, out)


def sigma_pushforward(q):
    """Algebra automorphism ``Z -> sigma_* Z``, result in normal form."""
    if q.gens != M05_GENS:
        raise PreconditionError("sigma acts on the five M0,5 generators")
    out = NCPoly(M05_GENS)
    images = {g: NCPoly(M05_GENS, {(h,): c for h, c in SIGMA_PUSHFORWARD[g].items()}) for g in M05_GENS}
    for w, c in q._terms.items():
        f = NCPoly.unit(M05_GENS) * c
        for g in w:
            f = f * images[g]
        out = out + f
    return U05.normal_form(out)


def sigma_compatibility():
    """``sum sigma^* zeta_a (x) Z_a == sum zeta_a (x) sigma_* Z_a`` exactly."""
    left, right = {}, {}
    for a, g in zip(M05, M05_GENS):
        for b, c in SIGMA_PULLBACK[a].items():
            left[b, g] = left.get((b, g), 0) + c
        for h, c in SIGMA_PUSHFORWARD[g].items():
            right[a, h] = right.get((a, h), 0) + c
    clean = lambda d: {k: v for k, v in d.items() if v}
    return clean(left) == clean(right)


# -- connection formula at degree 2 ---------------------------------------------


class _Scalar:
    """Polynomial in formal symbols with coefficients in S(LEFT) (x) S(RIGHT)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, t):
        return cls({(): t})

    @classmethod
    def symbol(cls, name):
        return cls({(name,): TensorElement.one(LEFT, RIGHT)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return _Scalar(out)

    def __neg__(self):
        return _Scalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return _Scalar({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(sorted(k1 + k2))
                p = v1.shuffle(v2)
                out[k] = out[k] + p if k in out else p
        return _Scalar(out)

    def subs(self, mapping):
        total = _Scalar()
        for k, v in self.terms.items():
            term = _Scalar.const(v)
            for s in k:
                term = term * (mapping[s] if s in mapping else _Scalar.symbol(s))
            total = total + term
        return total

    def symbols(self):
        return {s for k in self.terms for s in k}

    def linear_in(self, name):
        """``(coefficient, rest)`` if ``name`` occurs only as a bare unit-coefficient symbol."""
        key = (name,)
        if any(name in k and k != key for k in self.terms):
            return None
        return self.terms.get(key), _Scalar({k: v for k, v in self.terms.items() if k != key})

    def __bool__(self):
        return bool(self.terms)


def _u_mul(a, b, max_degree):
    out = {}
    for m1, x in a.items():
        for m2, y in b.items():
            if len(m1) + len(m2) > max_degree:
                continue
            prod = x * y
            for m, c in U05.normal_form(NCPoly.word(M05_GENS, m1 + m2))._terms.items():
                term = prod.scale(c)
                out[m] = out[m] + term if m in out else term
    return {m: v for m, v in out.items() if v}


def _u_add(a, b):
    out = dict(a)
    for m, v in b.items():
        out[m] = out[m] + v if m in out else v
    return {m: v for m, v in out.items() if v}


def _exp2(x1, x2):
    """``exp(x1 Z1 + x2 Z2)`` to degree 2 (Z1 and Z2 commute)."""
    one = _Scalar.const(TensorElement.one(LEFT, RIGHT))
    half = Fraction(1, 2)
    return {(): one, (G1,): x1, (G2,): x2,
            (G1, G1): (x1 * x1).scale(half), (G2, G2): (x2 * x2).scale(half), (G1, G2): x1 * x2}


def _atom(w1, w2):
    return "atom[%s|%s]" % (".".join(w1), ".".join(w2))


@dataclass(frozen=True)
class ConnectionResult:
    landen1: Identity
    landen2: Identity
    tensor1: TensorElement
    tensor2: TensorElement
    degree1: dict
    eps_cancelled: bool


LANDEN1_WORDS = TensorElement(LEFT, RIGHT, {
    ((Z11, Z12_1), ()): 1, ((Z1, Z11), ()): -1, ((Z11, Z11), ()): -1, ((Z1, Z12_1), ()): 1})
LANDEN2_WORDS = TensorElement(LEFT, RIGHT, {
    ((Z11, Z12_1), ()): -1, ((), (Z2, Z22)): -1, ((), (Z22, Z22)): -1, ((Z11,), (Z22,)): 1})


def connection_degree2():
    """Derive the two Landen-type identities from the connection formula.

    Both sides of ``(sigma^* L) = (sigma_* L) exp(-e1 Z1) exp(-e2 Z2)`` are
    expanded to degree 2 with formal scalars: on the left, unknown values
    ``atom[W'|W'']`` of the iterated integrals at ``sigma(z)`` and the
    real logarithms ``lam1, lam2`` of ``|sigma_i(z)|``; on the right, exact
    elements of ``S(z1, z11, z12_1) (x) S(z2, z22)`` (``z1 (x) 1`` stands for
    ``log z1``).  The degree-1 comparison determines the degree-1 unknowns;
    the ``[Z1, Z11]`` and ``[Z2, Z22]`` parts at degree 2 then give
    ``Li2(sigma_1)`` and ``Li2(sigma_2)``.
    """
    one = TensorElement.one(LEFT, RIGHT)
    pairs = [p for p in ghpr_pairs(2) if p != ((), ())]
    e1, e2 = _Scalar.symbol("e1"), _Scalar.symbol("e2")

    lhs_hat = {(): _Scalar.const(one)}
    rhs_hat = {(): _Scalar.const(one)}
    for w1, w2 in pairs:
        img = U05.alpha(w1 + w2)
        atom = _Scalar.symbol(_atom(w1, w2))
        for m, c in img._terms.items():
            lhs_hat = _u_add(lhs_hat, {m: atom.scale(c)})
        t = _Scalar.const(TensorElement.pure(theta(w1, THETA_12_LEFT, LEFT),
                                             theta(w2, THETA_12_RIGHT, RIGHT)))
        for m, c in sigma_pushforward(img)._terms.items():
            rhs_hat = _u_add(rhs_hat, {m: t.scale(c)})
    lam1, lam2 = _Scalar.symbol("lam1"), _Scalar.symbol("lam2")
    ell1 = _Scalar.const(TensorElement(LEFT, RIGHT, {((Z1,), ()): 1}))
    ell2 = _Scalar.const(TensorElement(LEFT, RIGHT, {((), (Z2,)): 1}))
    lhs = _u_mul(lhs_hat, _exp2(lam1 - e1, lam2 - e2), 2)
    rhs = _u_mul(rhs_hat, _exp2(ell1 - e1, ell2 - e2), 2)

    zero = _Scalar()
    unknowns = {(G1,): "lam1", (G2,): "lam2"}
    for w1, w2 in pairs:
        if len(w1) + len(w2) == 1:
            unknowns[w1 + w2] = _atom(w1, w2)
    solved = {}
    for m, name in unknowns.items():
        split = lhs.get(m, zero).linear_in(name)
        if split is None or split[0] != one:
            raise InternalConsistencyError("degree-1 coefficient of %s is not %s + known" % (m, name))
        value = rhs.get(m, zero) - split[1]
        if value.symbols():
            raise InternalConsistencyError("degree-1 unknown %s depends on %s" % (name, value.symbols()))
        solved[name] = value

    def measure(side, a, b):
        return side.get((a, b), zero) - side.get((b, a), zero)

    results = []
    for a, b, target in ((G1, G11, _atom((G1, G11), ())), (G2, G22, _atom((), (G2, G22)))):
        left = measure(lhs, a, b).subs(solved)
        right = measure(rhs, a, b)
        split = left.linear_in(target)
        if split is None or split[0] is None:
            raise InternalConsistencyError("commutator coefficient does not isolate %s" % target)
        coeff, rest = split
        diff = right - rest
        if diff.symbols():
            raise InternalConsistencyError("e-dependence does not cancel: %s" % diff.symbols())
        c = coeff.coeff((), ())
        if c == 0 or len(coeff) != 1:
            raise InternalConsistencyError("unexpected coefficient of %s" % target)
        results.append(diff.terms.get((), TensorElement(LEFT, RIGHT)) * (1 / c))
    t1, t2 = results
    l1 = Identity("L1", (Term(Fraction(1), (_li((2,), 1, SIGMA_1),)),), _tensor_terms(t1),
                  "connection formula, [Z1,Z11]", (SIGMA_1,))
    l2 = Identity("L2", (Term(Fraction(1), (_li((2,), 1, SIGMA_2),)),), _tensor_terms(t2),
                  "connection formula, [Z2,Z22]", (SIGMA_2,))
    return ConnectionResult(l1, l2, t1, t2, {k: v.terms.get(()) for k, v in solved.items()}, True)


def landen1():
    """``Li2(sigma_1) = Li_{1,1}(1,1;z1,z2) - Li2(z1) - Li_{1,1}(z1) + Li2(0,1;z1,z2)``."""
    z1, z2 = z1_sym, z2_sym
    return Identity("L1", (Term(Fraction(1), (_li((2,), 1, SIGMA_1),)),), (
        Term(Fraction(1), (_li((1, 1), 1, z1, z2),)),
        Term(Fraction(-1), (_li((2,), 1, z1),)),
        Term(Fraction(-1), (_li((1, 1), 2, z1),)),
        Term(Fraction(1), (_li((2,), 0, z1, z2),))), "two-variable Landen formula", (SIGMA_1,))


def landen2():
    """``Li2(sigma_2) = -Li_{1,1}(1,1;z1,z2) - Li2(z2) - Li_{1,1}(z2) + Li1(z2) Li1(z1)``."""
    z1, z2 = z1_sym, z2_sym
    return Identity("L2", (Term(Fraction(1), (_li((2,), 1, SIGMA_2),)),), (
        Term(Fraction(-1), (_li((1, 1), 1, z1, z2),)),
        Term(Fraction(-1), (_li((2,), 1, z2),)),
        Term(Fraction(-1), (_li((1, 1), 2, z2),)),
        Term(Fraction(1), (_li((1,), 1, z2), _li((1,), 1, z1)))), "two-variable Landen formula", (SIGMA_2,))


def five_term():
    """``Li2(z1 z2) = Li2(sigma_1) + Li2(sigma_2) + Li2(z1) + Li2(z2) + 1/2 log^2((1-z1)/(1-z2))``."""
    z1, z2 = z1_sym, z2_sym
    return Identity("5TERM", (Term(Fraction(1), (_li((2,), 1, z1 * z2),)),), (
        Term(Fraction(1), (_li((2,), 1, SIGMA_1),)),
        Term(Fraction(1), (_li((2,), 1, SIGMA_2),)),
        Term(Fraction(1), (_li((2,), 1, z1),)),
        Term(Fraction(1), (_li((2,), 1, z2),)),
        Term(Fraction(1, 2), (LogFactor((1 - z1) / (1 - z2), 2),))), "five-term relation",
        (SIGMA_1, SIGMA_2))


def _word_substitutions():
    """Closed forms for the depth-one words that occur in the Landen pair."""
    z1, z2 = z1_sym, z2_sym
    lg1, lg2 = sympy.log(1 - z1), sympy.log(1 - z2)
    return {
        WordFactor((Z1, Z12_1), LEFT).symbol(): sympy.Symbol(_li((2,), 1, z1 * z2).label()),
        WordFactor((Z11, Z11), LEFT).symbol(): lg1 ** 2 / 2,
        WordFactor((Z22, Z22), RIGHT).symbol(): lg2 ** 2 / 2,
        WordFactor((Z11,), LEFT).symbol(): -lg1,
        WordFactor((Z22,), RIGHT).symbol(): -lg2,
        WordFactor((Z1, Z11), LEFT).symbol(): sympy.Symbol(_li((2,), 1, z1).label()),
        WordFactor((Z2, Z22), RIGHT).symbol(): sympy.Symbol(_li((2,), 1, z2).label()),
    }


def five_term_symbolic(result=None):
    """True iff ``(L1) + (L2)`` reduces to the five-term relation after
    ``Li2(0,1;z1,z2) = Li2(z1 z2)`` and ``Li_{1,1}(z) = log^2(1-z)/2``."""
    result = result or connection_degree2()
    total = result.landen1.to_sympy() + result.landen2.to_sympy()
    total = total.subs(_word_substitutions())
    ft = five_term()
    ft_expr = ft.to_sympy()  # Li2(z1 z2) - (rest)
    # (L1)+(L2) is Li2(s1) + Li2(s2) - RHS1 - RHS2; it must equal -(ft_expr)
    diff = sympy.expand(sympy.expand_log(total + ft_expr, force=True))
    return diff == 0


def five_term_check(z1, z2, cfg=None):
    """``|LHS - RHS|`` of the five-term relation at a real point."""
    cfg = cfg or VERIFY_CFG
    ident = five_term()
    if not ident.admissible(z1, z2):
        raise DomainError("(%s, %s) outside the admissible region of the five-term relation" % (z1, z2))
    return ident.residual(z1, z2, cfg)[0]


# -- verification ---------------------------------------------------------------


@dataclass
class Report:
    identity: str
    tolerance: float
    points: list
    max_residual: float
    passed: bool

    def to_json(self):
        return {"identity": self.identity, "tolerance": self.tolerance,
                "points": self.points, "max_residual": self.max_residual, "pass": self.passed}

    def to_text(self):
        lines = ["%s: max residual %.3e (tol %.1e) %s" % (
            self.identity, self.max_residual, self.tolerance, "PASS" if self.passed else "FAIL")]
        for p in self.points:
            lines.append("  (%s, %s) residual %.3e bound %.3e" % (p["z1"], p["z2"], p["residual"], p["bound"]))
        return "\n".join(lines)


def grid_values(start, stop, step):
    n = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def parse_grid(text):
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise PreconditionError("grid must be start:stop:step, got %r" % (text,)) from None
    if step <= 0 or stop < start:
        raise PreconditionError("bad grid %r" % (text,))
    return grid_values(start, stop, step)


def square(values):
    return [(a, b) for a in values for b in values]


DEFAULT_GRID = square(grid_values(0.1, 0.5, 0.1))
VERIFY_CFG = EvalConfig(eps=1e-11)


def verify(identity, grid=None, cfg=VERIFY_CFG, tol=1e-9):
    """Evaluate ``identity`` on ``grid`` and report the maximal residual."""
    points = []
    grid = [(None, None)] if identity.point_free else (DEFAULT_GRID if grid is None else grid)
    for z1, z2 in grid:
        try:
            res, bound = identity.residual(z1, z2, cfg)
        except KZError as exc:
            raise type(exc)("%s at (%s, %s): %s" % (identity.name, z1, z2, exc)) from exc
        points.append({"z1": z1, "z2": z2, "residual": res, "bound": bound})
    worst = max((p["residual"] for p in points), default=0.0)
    return Report(identity.name, tol, points, worst, worst < tol)


def admissible(identity, grid):
    return [(a, b) for a, b in grid if identity.admissible(a, b)]
