"""Degree-2 Orlik-Solomon reduction, the reduced bar algebra and its splittings.

The reduced bar algebra ``B`` is the subspace of the shuffle algebra on the
five letters ``z1, z11, z2, z22, z12`` cut out by Chen's integrability
condition: contracting any two adjacent letters with the wedge product must
give zero in the degree-2 Orlik-Solomon space.  ``B0`` is the part spanned by
words not ending in ``z1`` or ``z2``.  The maps :func:`iota_12` and
:func:`iota_21` split ``B`` into tensor products of one-variable shuffle
algebras, matching the two boundary contours.
"""

import json
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .envalg import G1, G2, G11, G12, G22, LEFT_GENS, RIGHT_GENS, check_w0
from .errors import DomainError, InternalConsistencyError, PreconditionError
from .wordalg import (LEFT, LEFT21, M05, RIGHT, RIGHT21, Z1, Z2, Z11, Z12,
                      Z12_1, Z12_2, Z22, ShufflePoly, format_coeff,
                      last_letter_decompose, shuffle, shuffle_words,
                      words_of_degree)

# Relations among wedges of the five forms, as {(a, b): coeff} meaning
# sum coeff * (a ^ b) = 0.  The first two are the Arnold relations; the last
# two hold because z1, z11 are both multiples of dz1 and z2, z22 of dz2.
ARNOLD_1 = {(Z1, Z12): 1, (Z2, Z12): 1}
ARNOLD_2 = {(Z11, Z12): 1, (Z22, Z11): 1, (Z22, Z12): -1, (Z2, Z12): -1}
TRIVIAL_1 = {(Z1, Z11): 1}
TRIVIAL_2 = {(Z2, Z22): 1}
DEFAULT_RELATIONS = (ARNOLD_1, ARNOLD_2, TRIVIAL_1, TRIVIAL_2)


class OS2Space:
    """Quotient of the second exterior power of the letters by relations."""

    def __init__(self, letters=M05, relations=DEFAULT_RELATIONS):
        self.letters = tuple(letters)
        idx = {a: i for i, a in enumerate(self.letters)}
        self.pairs = [(a, b) for i, a in enumerate(self.letters) for b in self.letters[i + 1:]]
        self._col = {p: i for i, p in enumerate(self.pairs)}
        self._idx = idx
        self._ech = linalg.Echelon(track=False)
        for rel in relations:
            vec = {}
            for (a, b), c in rel.items():
                col, sign = self._pair(a, b)
                if col is not None:
                    vec[col] = vec.get(col, 0) + sign * c
            self._ech.add(vec)
        self.basis = [p for p in self.pairs if self._col[p] not in self._ech.rows]
        self._coord = {self._col[p]: i for i, p in enumerate(self.basis)}
        self._wedge = {}
        for a in self.letters:
            for b in self.letters:
                self._wedge[a, b] = self._reduce(a, b)

    @property
    def dim(self):
        return len(self.basis)

    def _pair(self, a, b):
        if a == b:
            return None, 0
        if self._idx[a] < self._idx[b]:
            return self._col[a, b], 1
        return self._col[b, a], -1

    def _reduce(self, a, b):
        col, sign = self._pair(a, b)
        coords = [Fraction(0)] * self.dim
        if col is None:
            return tuple(coords)
        vec = {col: Fraction(sign)}
        for p, (row, _) in self._ech.rows.items():
            c = vec.get(p)
            if c:
                for k, v in row.items():
                    vec[k] = vec.get(k, 0) - c * Fraction(v, row[p])
        for k, v in vec.items():
            if v:
                coords[self._coord[k]] += v
        return tuple(coords)

    def wedge(self, a, b):
        try:
            return OS2Class(self, self._wedge[a, b])
        except KeyError:
            raise PreconditionError("unknown letter in wedge(%r, %r)" % (a, b)) from None

    def wedge_coords(self, a, b):
        return self._wedge[a, b]


@dataclass(frozen=True)
class OS2Class:
    space: OS2Space
    coords: tuple

    def __add__(self, other):
        return OS2Class(self.space, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return OS2Class(self.space, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return OS2Class(self.space, tuple(c * x for x in self.coords))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()


OS2 = OS2Space()


def wedge(a, b, space=OS2):
    return space.wedge(a, b)


def cic_contraction(p, space=OS2):
    """The image of ``p`` under all adjacent contractions.

    Keys are ``(cut, prefix, basis_index, suffix)``; ``p`` satisfies the
    integrability condition iff the result is empty.
    """
    out = {}
    for w, c in p._terms.items():
        for l in range(len(w) - 1):
            coords = space.wedge_coords(w[l], w[l + 1])
            for i, x in enumerate(coords):
                if x:
                    key = (l, w[:l], i, w[l + 2:])
                    out[key] = out.get(key, 0) + c * x
    return {k: v for k, v in out.items() if v}


def cic_check(p, space=OS2):
    """Chen's integrability condition for a homogeneous element."""
    if not p.is_homogeneous():
        raise PreconditionError("cic_check needs a homogeneous element; use cic_check_all")
    return not cic_contraction(p, space)


def cic_check_all(p, space=OS2):
    return all(cic_check(p.component(s), space) for s in p.degrees())


class _Cache:
    def __init__(self):
        self.lock = threading.RLock()
        self.data = {}

    def get(self, key, build):
        with self.lock:
            if key not in self.data:
                self.data[key] = build()
            return self.data[key]


_cache = _Cache()


def _kernel(words, space):
    col = {w: i for i, w in enumerate(words)}
    eqs = {}
    for w in words:
        for l in range(len(w) - 1):
            coords = space.wedge_coords(w[l], w[l + 1])
            for i, x in enumerate(coords):
                if x:
                    row = eqs.setdefault((l, w[:l], i, w[l + 2:]), {})
                    row[col[w]] = row.get(col[w], 0) + x
    basis = linalg.nullspace(list(eqs.values()), len(words))
    return [ShufflePoly(M05, {words[k]: v for k, v in vec.items()}) for vec in basis]


def bar_basis(s, space=OS2):
    """Basis of the degree-``s`` part of the reduced bar algebra."""
    if s < 0:
        raise PreconditionError("degree must be non-negative")
    return list(_cache.get(("B", s, id(space)),
                           lambda: _kernel(words_of_degree(M05, s), space)))


def b0_basis(s, space=OS2):
    """Basis of ``B0_s``: integrable elements with no word ending in z1, z2."""
    if s < 0:
        raise PreconditionError("degree must be non-negative")

    def build():
        words = [w for w in words_of_degree(M05, s) if not w or w[-1] not in (Z1, Z2)]
        return _kernel(words, space)

    return list(_cache.get(("B0", s, id(space)), build))


def listed_b2_generators():
    """The nineteen explicit generators of ``B_2``."""
    def w(*terms):
        return ShufflePoly(M05, {t[1:]: t[0] for t in terms})

    gens = [w((1, a, a)) for a in M05]
    gens += [w((1, Z1, Z11)), w((1, Z2, Z22)), w((1, Z11, Z1)), w((1, Z22, Z2))]
    gens += [w((1, a, b), (1, b, a)) for a in (Z1, Z11) for b in (Z2, Z22)]
    gens += [w((1, a, Z12), (1, Z12, a)) for a in (Z1, Z11, Z2, Z22)]
    gens.append(w((1, Z1, Z12), (1, Z2, Z12)))
    gens.append(w((1, Z11, Z12), (1, Z22, Z11), (-1, Z22, Z12), (-1, Z2, Z12)))
    return gens


def words_to_vectors(polys, words):
    col = {w: i for i, w in enumerate(words)}
    return [{col[w]: c for w, c in p.items()} for p in polys]


def intersection_characterization(s, space=OS2):
    """Basis of the intersection over ``j`` of ``B_j o B_{s-j}`` (as ShufflePolys)."""
    words = words_of_degree(M05, s)
    families = []
    for j in range(1, s):
        prods = [a.concat(b) for a in bar_basis(j, space) for b in bar_basis(s - j, space)]
        families.append(words_to_vectors(prods, words))
    basis = linalg.intersect(families, len(words))
    return [ShufflePoly(M05, {words[k]: v for k, v in vec.items()}) for vec in basis]


# -- tensors ------------------------------------------------------------------


class TensorElement:
    """Finite sum of ``left_word (x) right_word`` with rational coefficients."""

    __slots__ = ("left", "right", "_terms")

    def __init__(self, left, right, terms=None):
        self.left = tuple(left)
        self.right = tuple(right)
        clean = {}
        for (u, v), c in (terms or {}).items():
            key = (tuple(u), tuple(v))
            clean[key] = clean.get(key, 0) + Fraction(c)
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def pure(cls, a, b, coeff=1):
        """``a (x) b`` for two ShufflePolys."""
        return cls(a.alphabet, b.alphabet,
                   {(u, v): coeff * x * y for u, x in a.items() for v, y in b.items()})

    @classmethod
    def one(cls, left, right):
        return cls(left, right, {((), ()): 1})

    def _key(self, k):
        li = {a: i for i, a in enumerate(self.left)}
        ri = {a: i for i, a in enumerate(self.right)}
        u, v = k
        return (len(u) + len(v), len(u), tuple(li[a] for a in u), tuple(ri[a] for a in v))

    def items(self):
        return sorted(self._terms.items(), key=lambda t: self._key(t[0]))

    def coeff(self, u, v):
        return self._terms.get((tuple(u), tuple(v)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if (self.left, self.right) != (other.left, other.right):
            raise PreconditionError("tensor factor mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(self.left, self.right, out)

    def __neg__(self):
        return TensorElement(self.left, self.right, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return TensorElement(self.left, self.right, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.left, self.right, self._terms) == (other.left, other.right, other._terms)

    def __hash__(self):
        return hash((self.left, self.right, frozenset(self._terms.items())))

    def shuffle(self, other):
        """Componentwise shuffle product."""
        self._check(other)
        out = {}
        for (u1, v1), a in self._terms.items():
            for (u2, v2), b in other._terms.items():
                for u, m in shuffle_words(u1, u2).items():
                    for v, n in shuffle_words(v1, v2).items():
                        out[u, v] = out.get((u, v), 0) + a * b * m * n
        return TensorElement(self.left, self.right, out)

    def degrees(self):
        return sorted({len(u) + len(v) for u, v in self._terms})

    def component(self, s):
        return TensorElement(self.left, self.right,
                             {k: c for k, c in self._terms.items() if len(k[0]) + len(k[1]) == s})

    def to_text(self):
        parts = []
        for i, ((u, v), c) in enumerate(self.items()):
            body = "%s⊗%s" % (".".join(u) or "1", ".".join(v) or "1")
            mag = format_coeff(abs(c))
            if i == 0:
                parts.append(("-" if c < 0 else "") + "%s*%s" % (mag, body))
            else:
                parts.append("%s %s*%s" % ("-" if c < 0 else "+", mag, body))
        return " ".join(parts) if parts else "0"

    @classmethod
    def from_text(cls, left, right, text):
        text = text.strip()
        if text == "0":
            return cls(left, right)
        terms = {}
        for tok in text.replace(" - ", " + -").split(" + "):
            tok = tok.strip()
            coeff, body = tok.split("*", 1)
            u, v = body.split("⊗")
            key = (() if u == "1" else tuple(u.split(".")), () if v == "1" else tuple(v.split(".")))
            terms[key] = terms.get(key, 0) + Fraction(coeff)
        return cls(left, right, terms)

    def to_json(self):
        return {
            "left": list(self.left),
            "right": list(self.right),
            "terms": [{"left": list(u), "right": list(v), "coeff": str(c)}
                      for (u, v), c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["left"], data["right"],
                   {(tuple(t["left"]), tuple(t["right"])): Fraction(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        return "TensorElement(%s)" % self.to_text()


# -- the splitting maps -------------------------------------------------------

# variant -> (letters allowed first, letters allowed second, relabel, codomain)
_VARIANTS = {
    "12": (frozenset((Z1, Z11, Z12)), frozenset((Z2, Z22)), {Z12: Z12_1}, (LEFT, RIGHT)),
    "21": (frozenset((Z2, Z22, Z12)), frozenset((Z1, Z11)), {Z12: Z12_2}, (LEFT21, RIGHT21)),
}


def _split(word, first, second):
    i = 0
    while i < len(word) and word[i] in first:
        i += 1
    if all(a in second for a in word[i:]):
        return word[:i], word[i:]
    return None


def _iota(p, variant, check):
    first, second, relabel, (left, right) = _VARIANTS[variant]
    if check and not cic_check_all(p):
        raise DomainError("element does not satisfy the integrability condition")
    out = {}
    for w, c in p._terms.items():
        parts = _split(w, first, second)
        if parts is None:
            continue
        u, v = parts
        key = (tuple(relabel.get(a, a) for a in u), v)
        out[key] = out.get(key, 0) + c
    return TensorElement(left, right, out)


def iota_12(p, check=True):
    """Keep the words ``psi1 o psi2`` with ``psi1`` over z1, z11, z12 and
    ``psi2`` over z2, z22; split them and rename z12 to z12_1."""
    return _iota(p, "12", check)


def iota_21(p, check=True):
    """Mirror of :func:`iota_12` with the roles of the two variables swapped."""
    return _iota(p, "21", check)


def s0_dim(n_letters, a):
    return 1 if a == 0 else n_letters ** (a - 1) * (n_letters - 1)


def s0_tensor_dim(s):
    return sum(s0_dim(3, a) * s0_dim(2, s - a) for a in range(s + 1))


class _InverseTable:
    def __init__(self, s, variant):
        self.basis = b0_basis(s)
        self.variant = variant
        self.col = {}
        self.ech = linalg.Echelon(track=True)
        for b in self.basis:
            img = _iota(b, variant, check=False)
            self.ech.add(self._vec(img))
        if self.ech.rank != len(self.basis) or len(self.basis) != s0_tensor_dim(s):
            raise InternalConsistencyError(
                "iota_%s is not an isomorphism on B0_%d (rank %d, dim %d, expected %d)"
                % (variant, s, self.ech.rank, len(self.basis), s0_tensor_dim(s)))

    def _vec(self, t):
        return {self.col.setdefault(k, len(self.col)): c for k, c in t._terms.items()}

    def solve(self, t):
        for k in t._terms:
            if k not in self.col:
                return None
        sol = self.ech.solve(self._vec(t))
        if sol is None:
            return None
        total = ShufflePoly.zero(M05)
        for i, c in sol.items():
            total = total + self.basis[i] * c
        return total


def _inverse(t, variant):
    first_tail, second_tail = {"12": (Z1, Z2), "21": (Z2, Z1)}[variant]
    left, right = _VARIANTS[variant][3]
    if (t.left, t.right) != (left, right):
        raise PreconditionError("tensor lives over %r (x) %r, expected %r (x) %r"
                                % (t.left, t.right, left, right))
    for (u, v) in t._terms:
        if (u and u[-1] == first_tail) or (v and v[-1] == second_tail):
            raise PreconditionError("tensor term %r (x) %r is not in S0 (x) S0" % (u, v))
    total = ShufflePoly.zero(M05)
    for s in t.degrees():
        table = _cache.get(("inv", variant, s), lambda: _InverseTable(s, variant))
        q = table.solve(t.component(s))
        if q is None:
            raise InternalConsistencyError("tensor not in the image of iota_%s" % variant)
        total = total + q
    return total


def iota_12_inverse(t):
    """The unique element of ``B0`` whose :func:`iota_12` image is ``t``."""
    return _inverse(t, "12")


def iota_21_inverse(t):
    return _inverse(t, "21")


THETA_12_LEFT = {G1: Z1, G11: Z11, G12: Z12_1}
THETA_12_RIGHT = {G2: Z2, G22: Z22}
THETA_21_LEFT = {G2: Z2, G22: Z22, G12: Z12_2}
THETA_21_RIGHT = {G1: Z1, G11: Z11}


def theta(word, mapping, alphabet):
    return ShufflePoly.word(alphabet, tuple(mapping[g] for g in word))


def phi(w1, w2):
    """``iota_12^{-1}(theta(W') (x) theta(W''))`` for ``W'`` over Z1, Z11, Z12
    not ending in Z1 and ``W''`` over Z2, Z22 not ending in Z2."""
    w1 = check_w0(w1, LEFT_GENS, G1)
    w2 = check_w0(w2, RIGHT_GENS, G2)
    t = TensorElement.pure(theta(w1, THETA_12_LEFT, LEFT), theta(w2, THETA_12_RIGHT, RIGHT))
    return iota_12_inverse(t)


def polynomial_decompose(p):
    """Coefficients ``c[i, j]`` in ``B0`` with
    ``p = sum c[i, j] sh z2^{o j} sh z1^{o i}`` (``^{o k}`` = k-fold concatenation)."""
    if not cic_check_all(p):
        raise DomainError("element does not satisfy the integrability condition")
    out = {}
    for i, ci in last_letter_decompose(p, Z1).items():
        for j, cij in last_letter_decompose(ci, Z2).items():
            if not cic_check_all(cij) or cij.ends_with_any((Z1, Z2)):
                raise InternalConsistencyError("coefficient %s is not in B0" % cij)
            out[i, j] = cij
    return out


def polynomial_reconstruct(coeffs):
    total = ShufflePoly.zero(M05)
    for (i, j), c in coeffs.items():
        term = shuffle(c, ShufflePoly.word(M05, (Z2,) * j))
        total = total + shuffle(term, ShufflePoly.word(M05, (Z1,) * i))
    return total
