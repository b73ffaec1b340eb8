"""Numerical hyperlogarithms, multiple polylogarithms and multiple zeta values.

All evaluators return an :class:`Estimate` carrying the value together with a
certified bound on the truncation error plus a rounding estimate.

Nested sums.  For ``b_j = a_j z`` the hyperlogarithm is

    L = sum_{n1 > ... > nr > 0} prod_j b_j^(n_j - n_{j+1}) / n_j^k_j.

With ``Q_r(n) = b_r^n / n^k_r``, ``P_i(n+1) = b_i (P_i(n) + Q_{i+1}(n))`` and
``Q_i(n) = P_i(n) / n^k_i`` the truncated sum is ``sum_{n<=N} Q_1(n)``, an
O(N r) first-order recursion with no cancellation.

Tail bound for ``rho = max |b_j| < 1``.  The inner sum for fixed ``n1`` is at
most ``rho^n1 H_{n1-1}^(r-1) <= rho^n1 (1 + log n1)^(r-1)``, so the tail past
``N`` is dominated by ``t_n = rho^n (1 + log n)^(r-1) / n^k1`` whose ratio is
at most ``q = rho (1 + 1/(N+1))^(r-1)``; hence tail <= ``t_{N+1} / (1 - q)``.

MZV bracket.  With nested partial sums ``S_j(N)`` the inner sums beyond ``N``
are sandwiched between polynomials in ``log(n/N)``; integrating against
``n^-k1`` gives closed-form lower and upper tails.  The value is the midpoint
and the bound is the half-width.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.signal import lfilter

from .errors import ConvergenceError, DivergenceError, DomainError, PreconditionError
from .wordalg import (LEFT, LEFT21, M04, RIGHT, RIGHT21, Z1, Z2, Z11, Z12_1,
                      Z12_2, Z22, ShufflePoly)

EPS_FLOOR = 1e-12
_U64 = 2.0 ** -53
_ULD = float(np.finfo(np.longdouble).eps)


@dataclass(frozen=True)
class EvalConfig:
    eps: float = 1e-10
    n_max: int = 1 << 24

    def __post_init__(self):
        if not self.eps > 0:
            raise PreconditionError("eps must be positive")
        if self.n_max < 1:
            raise PreconditionError("n_max must be at least 1")

    @property
    def clamped(self):
        return self.eps < EPS_FLOOR

    @property
    def target(self):
        return max(self.eps, EPS_FLOOR)


DEFAULT = EvalConfig()


class Estimate(NamedTuple):
    value: complex
    bound: float
    terms: int = 0
    clamped: bool = False

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(self.value.real) if isinstance(self.value, complex) else float(self.value)


@dataclass(frozen=True)
class HyperlogSpec:
    k: tuple
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", _indices(self.k))
        object.__setattr__(self, "a", tuple(complex(x) for x in self.a))
        if len(self.a) != len(self.k):
            raise PreconditionError("need one parameter per index")
        if any(x == 0 for x in self.a):
            raise PreconditionError("parameters must be non-zero")

    @property
    def weight(self):
        return sum(self.k)

    @property
    def depth(self):
        return len(self.k)


def _indices(k):
    k = tuple(int(x) for x in k)
    if not k or any(x < 1 for x in k):
        raise PreconditionError("indices must be a non-empty sequence of positive integers")
    return k


# -- nested sums --------------------------------------------------------------


def _log_term(rho, n, r, k1):
    return n * math.log(rho) + (r - 1) * math.log1p(math.log(n)) - k1 * math.log(n)


def _geometric_tail(rho, r, k1, N):
    q = rho * (1 + 1 / (N + 1)) ** (r - 1)
    if q >= 1:
        return math.inf
    return math.exp(_log_term(rho, N + 1, r, k1)) / (1 - q)


def _boundary_tail(r, k1, N):
    """sum_{n>N} (1 + log n)^(r-1) / n^k1 via the incomplete gamma integral."""
    if k1 < 2:
        return math.inf
    if N < math.exp((r - 1) / k1):
        return math.inf
    x = (k1 - 1) * (1 + math.log(N))
    poly = sum(x ** i / math.factorial(i) for i in range(r))
    return math.factorial(r - 1) / (k1 - 1) ** r * N ** (1 - k1) * poly


def _choose_n(tail, target, n_max):
    """Smallest N (up to a factor 2 search) with tail(N) <= target."""
    N = 1
    while tail(N) > target:
        if N >= n_max:
            raise ConvergenceError("term cap %d reached; tail bound %.3g" % (n_max, tail(n_max)),
                                   bound=tail(n_max), terms=n_max)
        N = min(2 * N, n_max)
    lo, hi = N // 2, N
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) <= target:
            hi = mid
        else:
            lo = mid
    return max(hi, 1)


def _recursion(k, b, N):
    n = np.arange(1, N + 1, dtype=float)
    q = np.power(complex(b[-1]), n) / n ** k[-1]
    for kj, bj in zip(reversed(k[:-1]), reversed(b[:-1])):
        p = lfilter([0, bj], [1, -bj], q)
        q = p / n ** kj
    return q


def nested_sum(k, b, N):
    """Truncated sum over ``N >= n1 > ... > nr > 0`` and a rounding estimate."""
    if N <= 0:
        return 0j, 0.0
    q = _recursion(k, [complex(x) for x in b], N)
    value = complex(math.fsum(q.real), math.fsum(q.imag))
    major = _recursion(k, [abs(x) for x in b], N).real.sum()
    return value, 2 * (len(k) + 2) * N * _U64 * float(major)


def _hyperlog(k, a, z, cfg):
    k = _indices(k)
    b = [complex(x) * complex(z) for x in a]
    rho = max(abs(x) for x in b)
    target = cfg.target
    if rho == 0:
        return Estimate(0j, 0.0, 0, cfg.clamped)
    r = len(k)
    if rho < 1 - 1e-15:
        N = _choose_n(lambda n: _geometric_tail(rho, r, k[0], n), target / 2, cfg.n_max)
        tail = _geometric_tail(rho, r, k[0], N)
    elif rho <= 1 + 1e-15:
        if k[0] < 2:
            raise DivergenceError("series diverges on the unit circle when k1 = 1")
        N = _choose_n(lambda n: _boundary_tail(r, k[0], n), target / 2, cfg.n_max)
        tail = _boundary_tail(r, k[0], N)
    else:
        raise DomainError("outside the disc of convergence (|a_j z| = %.6g > 1)" % rho)
    value, rounding = nested_sum(k, b, N)
    return Estimate(value, float(tail + rounding), N, cfg.clamped)


def eval_hyperlog(spec, z, cfg=DEFAULT):
    """``L(^k1 a1 ... ^kr ar; z)`` by its Taylor series."""
    if not isinstance(spec, HyperlogSpec):
        spec = HyperlogSpec(*spec)
    return _hyperlog(spec.k, spec.a, z, cfg)


def eval_mpl1(k, z, cfg=DEFAULT):
    """``Li_{k1..kr}(z)``; ``z = 1`` is routed to :func:`eval_mzv`."""
    k = _indices(k)
    z = complex(z)
    if abs(z) > 1 + 1e-15:
        raise DomainError("|z| > 1")
    if z == 1:
        est = eval_mzv(k, cfg)
        return Estimate(complex(est.value), est.bound, est.terms, est.clamped)
    return _hyperlog(k, (1,) * len(k), z, cfg)


def eval_mpl2(k, i, j, z1, z2, cfg=DEFAULT):
    """``Li_{k1..k_{i+j}}(i, j; z1, z2) = L(^k1 1 ... ^ki 1 ^k_{i+1} z2 ...; z1)``."""
    k = _indices(k)
    if i < 0 or j < 0 or i + j != len(k):
        raise PreconditionError("depth split (%d, %d) does not match %d indices" % (i, j, len(k)))
    z1, z2 = complex(z1), complex(z2)
    if j and z2 == 0:
        return Estimate(0j, 0.0, 0, cfg.clamped)
    if abs(z1) >= 1 or abs(z1 * z2) >= 1:
        raise DomainError("need |z1| < 1 and |z1 z2| < 1")
    return _hyperlog(k, (1,) * i + (z2,) * j, z1, cfg)


# -- multiple zeta values -----------------------------------------------------


def _poly_add(p, q):
    out = [0.0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def _poly_shift(p, h):
    """Coefficients of ``p(x + h)``."""
    out = [0.0] * len(p)
    for i, c in enumerate(p):
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * h ** (i - j)
    return out


def mzv_bracket(k, N):
    """Certified ``(lower, upper, rounding)`` enclosure of ``zeta(k)`` from N terms."""
    k = _indices(k)
    r = len(k)
    n = np.arange(1, N + 1, dtype=np.longdouble)
    A = np.ones(N, dtype=np.longdouble)
    S = {r + 1: 1.0}
    for j in range(r, 0, -1):
        term = A / n ** k[j - 1]
        cs = np.cumsum(term)
        S[j] = cs[-1]
        A = np.concatenate(([np.longdouble(0)], cs[:-1]))
    k1 = k[0]
    c = k1 - 1
    # upper polynomial in l = log(n/N)
    U = [1.0]
    for j in range(r, 1, -1):
        if k[j - 1] == 1:
            scaled = [0.0] + list(U)
        else:
            f = float(N) ** (1 - k[j - 1]) / (k[j - 1] - 1)
            scaled = [f * x for x in U]
        U = _poly_add([float(S[j])], scaled)
    Ush = _poly_shift(U, 1.0 / N)
    upper = float(N) ** (1 - k1) * sum(u * math.factorial(i) / c ** (i + 1) for i, u in enumerate(Ush))
    # lower polynomial a + b l' in l' = log(n/(N+1)), integrated with a 1/(N+1) shift
    if r == 1:
        a_, b_ = 1.0, 0.0
    else:
        a_ = float(S[2])
        b_ = float(S[3]) if k[1] == 1 else 0.0
    d = 1.0 / (N + 1)
    lower = float(N + 1) ** (1 - k1) * ((a_ - b_ * d) / c + b_ / c ** 2)
    head = S[1]
    rounding = 4 * (r + 1) * N * _ULD * float(head) + 2 * _U64 * (float(head) + upper)
    return head, lower, upper, rounding


def eval_mzv(k, cfg=DEFAULT):
    """``zeta(k1, ..., kr)`` for ``k1 >= 2``."""
    k = _indices(k)
    if k[0] < 2:
        raise DivergenceError("zeta(k) diverges for k1 = 1")
    target = cfg.target
    N = 1 << 10
    while True:
        head, lower, upper, rounding = mzv_bracket(k, N)
        bound = (upper - lower) / 2 + rounding
        if bound <= target:
            return Estimate(float(head + np.longdouble((upper + lower) / 2)), bound, N, cfg.clamped)
        if 2 * N > cfg.n_max:
            raise ConvergenceError("term cap %d reached; bracket half-width %.3g" % (cfg.n_max, bound),
                                   bound=bound, terms=N)
        N *= 2


# -- words ------------------------------------------------------------------

# alphabet -> (integration variable, ad letter, {letter: parameter source})
# parameter sources: a number, or "z1"/"z2" for the other coordinate.
_WORD_ALPHABETS = {
    M04: ("z1", Z1, {Z11: 1}),
    LEFT: ("z1", Z1, {Z11: 1, Z12_1: "z2"}),
    RIGHT: ("z2", Z2, {Z22: 1}),
    LEFT21: ("z2", Z2, {Z22: 1, Z12_2: "z1"}),
    RIGHT21: ("z1", Z1, {Z11: 1}),
}


def word_spec(word, alphabet, z1=None, z2=None, params=None):
    """Map a word to ``(HyperlogSpec, variable value)``.

    Free alphabets ``x0, ..., xm`` take ``params = (a_1, ..., a_m)`` and are
    integrated in ``z1``.
    """
    alphabet = tuple(alphabet)
    coords = {"z1": z1, "z2": z2}
    if alphabet in _WORD_ALPHABETS:
        var, ad, table = _WORD_ALPHABETS[alphabet]
        table = {a: coords[v] if isinstance(v, str) else v for a, v in table.items()}
    elif alphabet and all(a == "x%d" % i for i, a in enumerate(alphabet)):
        var, ad = "z1", alphabet[0]
        if params is None or len(params) != len(alphabet) - 1:
            raise PreconditionError("free alphabet needs %d parameters" % (len(alphabet) - 1))
        table = dict(zip(alphabet[1:], params))
    else:
        raise PreconditionError("no numeric interpretation for alphabet %r" % (alphabet,))
    z = coords[var]
    if z is None or any(v is None for v in table.values()):
        raise PreconditionError("missing coordinate for alphabet %r" % (alphabet,))
    if word and word[-1] == ad:
        raise DomainError("word %r ends with %s and diverges at the base point" % (word, ad))
    ks, as_ = [], []
    run = 0
    for letter in word:
        if letter == ad:
            run += 1
        elif letter in table:
            ks.append(run + 1)
            as_.append(table[letter])
            run = 0
        else:
            raise PreconditionError("letter %r not in %r" % (letter, alphabet))
    return ks, as_, z


def eval_word(word, alphabet, z1=None, z2=None, params=None, cfg=DEFAULT):
    """Iterated integral of one word from the base point 0."""
    word = tuple(word)
    ks, as_, z = word_spec(word, alphabet, z1, z2, params)
    if not ks:
        return Estimate(1 + 0j, 0.0, 0, cfg.clamped)
    if any(a == 0 for a in as_):
        return Estimate(0j, 0.0, 0, cfg.clamped)
    return _hyperlog(ks, as_, z, cfg)


def eval_poly(p, z1=None, z2=None, params=None, cfg=DEFAULT):
    """Linear extension of :func:`eval_word` to a ShufflePoly."""
    if not isinstance(p, ShufflePoly):
        raise PreconditionError("expected a ShufflePoly")
    value, bound, terms = 0j, 0.0, 0
    for w, c in p.items():
        est = eval_word(w, p.alphabet, z1, z2, params, cfg)
        value += float(c) * est.value
        bound += abs(float(c)) * est.bound + abs(float(c) * est.value) * _U64
        terms = max(terms, est.terms)
    return Estimate(value, bound, terms, cfg.clamped)


def product_estimate(x, y):
    """Estimate for the product of two independent estimates."""
    return Estimate(x.value * y.value,
                    abs(x.value) * y.bound + abs(y.value) * x.bound + x.bound * y.bound,
                    max(x.terms, y.terms), x.clamped or y.clamped)


def eval_tensor(t, z1, z2, cfg=DEFAULT):
    """``sum c L(u; .) L(v; .)`` for a TensorElement split along a contour."""
    value, bound, terms = 0j, 0.0, 0
    for (u, v), c in t.items():
        est = product_estimate(eval_word(u, t.left, z1, z2, cfg=cfg),
                               eval_word(v, t.right, z1, z2, cfg=cfg))
        value += float(c) * est.value
        bound += abs(float(c)) * est.bound
        terms = max(terms, est.terms)
    return Estimate(value, bound, terms, cfg.clamped)


def li2(z, cfg=DEFAULT):
    return eval_mpl1((2,), z, cfg)


def log1m(z):
    """``log(1 - z)`` (principal branch)."""
    return cmath.log(1 - complex(z))
