"""Enveloping algebras of the infinitesimal pure-braid Lie algebras.

Two flavours are provided:

* :data:`U05`, the five-generator algebra for M_{0,5} with the commutator
  relations among ``Z1, Z11, Z2, Z22, Z12``.  Elements are reduced to the
  PBW normal form ``left * right`` with ``left`` a word in ``Z1, Z11, Z12``
  and ``right`` a word in ``Z2, Z22``.
* :func:`free_algebra`, the free associative algebra used for the
  one-variable equations, where the normal form is the identity.
"""

import json
from fractions import Fraction
from functools import lru_cache

from .errors import AlphabetError, InternalConsistencyError, PreconditionError
from . import linalg
from .wordalg import _coerce, format_terms, parse_terms

G1, G11, G2, G22, G12 = "Z1", "Z11", "Z2", "Z22", "Z12"
M05_GENS = (G1, G11, G2, G22, G12)
LEFT_GENS = (G1, G11, G12)
RIGHT_GENS = (G2, G22)


class NCPoly:
    """Rational combination of words in noncommuting generators.

    ``*`` between two NCPolys is the free (concatenation) product; reduce
    with :meth:`Algebra.normal_form` to work modulo relations.
    """

    __slots__ = ("gens", "_terms", "_index")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        self._index = {g: i for i, g in enumerate(self.gens)}
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            for g in word:
                if g not in self._index:
                    raise AlphabetError("generator %r not in %r" % (g, self.gens))
            c = _coerce(c)
            if c:
                clean[word] = clean.get(word, 0) + c
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def unit(cls, gens):
        return cls(gens, {(): 1})

    @classmethod
    def gen(cls, gens, g, coeff=1):
        return cls(gens, {(g,): coeff})

    @classmethod
    def word(cls, gens, word, coeff=1):
        return cls(gens, {tuple(word): coeff})

    def sort_key(self, word):
        return (len(word), tuple(self._index[g] for g in word))

    def items(self):
        return sorted(self._terms.items(), key=lambda t: self.sort_key(t[0]))

    def coeff(self, word):
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if not isinstance(other, NCPoly):
            raise TypeError("expected NCPoly, got %r" % type(other))
        if other.gens != self.gens:
            raise AlphabetError("generator mismatch: %r vs %r" % (self.gens, other.gens))

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(self.gens, out)

    def __neg__(self):
        return NCPoly(self.gens, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            out = {}
            for u, a in self._terms.items():
                for v, b in other._terms.items():
                    out[u + v] = out.get(u + v, 0) + a * b
            return NCPoly(self.gens, out)
        other = _coerce(other)
        return NCPoly(self.gens, {w: other * c for w, c in self._terms.items()})

    def __rmul__(self, scalar):
        scalar = _coerce(scalar)
        return NCPoly(self.gens, {w: scalar * c for w, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.gens == other.gens and self._terms == other._terms

    def __hash__(self):
        return hash((self.gens, frozenset(self._terms.items())))

    def degrees(self):
        return sorted({len(w) for w in self._terms})

    def component(self, s):
        return NCPoly(self.gens, {w: c for w, c in self._terms.items() if len(w) == s})

    def to_text(self):
        return format_terms(self.items(), ".", "I")

    @classmethod
    def from_text(cls, gens, text):
        return cls(gens, parse_terms(text, ".", "I"))

    def to_json(self):
        return {
            "generators": list(self.gens),
            "terms": [{"word": list(w), "coeff": str(c)} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["generators"], {tuple(t["word"]): Fraction(t["coeff"]) for t in data["terms"]})

    def __repr__(self):
        return "NCPoly(%s)" % self.to_text()

    __str__ = to_text


def bracket(a, b):
    return a * b - b * a


def raw_relations():
    """The commutator relations for M_{0,5}, each as an element equal to 0.

    ``[Z1,Z2] = [Z11,Z2] = [Z1,Z22] = 0`` and the chain
    ``[Z11,Z22] = [-Z11,Z12] = [Z22,Z12] = [-Z1+Z2,Z12]``.
    """
    z = {g: NCPoly.gen(M05_GENS, g) for g in M05_GENS}
    chain = [
        bracket(z[G11], z[G22]),
        bracket(-z[G11], z[G12]),
        bracket(z[G22], z[G12]),
        bracket(z[G2] - z[G1], z[G12]),
    ]
    rels = [bracket(z[G1], z[G2]), bracket(z[G11], z[G2]), bracket(z[G1], z[G22])]
    rels += [chain[0] - c for c in chain[1:]]
    return rels


class Algebra:
    """Enveloping algebra with a rewriting system to a PBW normal form.

    ``rules`` maps an adjacent pair ``(R, L)`` of generators to the NCPoly
    that replaces the word ``R L``.  ``ad_gens`` are the generators that the
    representation ``alpha`` sends to ``ad``; all others act by left
    multiplication.
    """

    def __init__(self, gens, rules=None, ad_gens=(), left=None, right=()):
        self.gens = tuple(gens)
        self.rules = dict(rules or {})
        self.ad_gens = frozenset(ad_gens)
        self.left = tuple(left if left is not None else gens)
        self.right = tuple(right)
        self._nf_word = lru_cache(maxsize=None)(self._nf_word_uncached)

    @property
    def is_free(self):
        return not self.rules

    def one(self):
        return NCPoly.unit(self.gens)

    def gen(self, g):
        return NCPoly.gen(self.gens, g)

    def _nf_word_uncached(self, word):
        # Terminates: the leading word loses one inversion, correction terms
        # lose one right-alphabet letter.
        for i in range(len(word) - 1):
            rule = self.rules.get((word[i], word[i + 1]))
            if rule is None:
                continue
            out = {}
            head, tail = word[:i], word[i + 2:]
            for w, c in rule._terms.items():
                for v, d in self._nf_word(head + w + tail).items():
                    out[v] = out.get(v, 0) + c * d
            return {v: c for v, c in out.items() if c}
        return {word: Fraction(1)}

    def normal_form(self, p):
        if p.gens != self.gens:
            raise AlphabetError("generator mismatch: %r vs %r" % (p.gens, self.gens))
        if self.is_free:
            return p
        out = {}
        for w, c in p._terms.items():
            for v, d in self._nf_word(w).items():
                out[v] = out.get(v, 0) + c * d
        return NCPoly(self.gens, out)

    def is_normal(self, word):
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    def mul(self, a, b):
        return self.normal_form(a * b)

    def alpha(self, word, target=None):
        """``alpha(word)`` applied to ``target`` (default the unit), normalised.

        ``alpha`` sends ad-generators to ``ad`` and the others to left
        multiplication; the rightmost letter acts first.
        """
        f = self.one() if target is None else target
        for g in reversed(tuple(word)):
            x = self.gen(g)
            f = bracket(x, f) if g in self.ad_gens else x * f
        return self.normal_form(f)

    def pbw_monomials(self, s):
        """Basis words of degree ``s``: left-alphabet word then right-alphabet word."""
        out = []
        for b in range(s + 1):
            a = s - b
            lefts = _words(self.left, a)
            rights = _words(self.right, b) if self.right else ([()] if b == 0 else [])
            out.extend(l + r for l in lefts for r in rights)
        return out

    def pbw_rank(self, pairs):
        """Exact rank of ``{alpha(W') alpha(W'') (I)}`` over the given pairs."""
        cols = {}
        vecs = []
        for w1, w2 in pairs:
            img = self.alpha(tuple(w1) + tuple(w2))
            vec = {}
            for w, c in img._terms.items():
                vec[cols.setdefault(w, len(cols))] = c
            vecs.append(vec)
        return linalg.rank(vecs)


def _words(letters, n):
    words = [()]
    for _ in range(n):
        words = [w + (a,) for w in words for a in letters]
    return words


def derive_exchange_rules(relations=None):
    """Turn the raw relations into rewriting rules ``R L -> ...``.

    Degree-2 words are ordered so that the six "inversions" (a right letter
    followed by a left letter) are the largest columns; the reduced echelon
    form then expresses each inversion through normal words only.
    """
    rels = raw_relations() if relations is None else relations
    words = _words(M05_GENS, 2)
    inversions = [w for w in words if w[0] in RIGHT_GENS and w[1] in LEFT_GENS]
    normal = [w for w in words if w not in inversions]
    order = normal + inversions
    col = {w: i for i, w in enumerate(order)}
    ech = linalg.Echelon(track=False)
    for r in rels:
        ech.add({col[w]: c for w, c in r._terms.items()})
    rules = {}
    for w in inversions:
        row = ech.rows.get(col[w])
        if row is None:
            raise InternalConsistencyError("no rewriting rule for %r" % (w,))
        row = row[0]
        p = row[col[w]]
        repl = {}
        for c, v in row.items():
            if c == col[w]:
                continue
            if order[c] in inversions:
                raise InternalConsistencyError("rule for %r mixes inversions" % (w,))
            repl[order[c]] = Fraction(-v, p)
        rules[w] = NCPoly(M05_GENS, repl)
    return rules


U05 = Algebra(M05_GENS, derive_exchange_rules(), ad_gens=(G1, G2),
              left=LEFT_GENS, right=RIGHT_GENS)


def free_algebra(gens, ad_gen=None):
    """Free algebra on ``gens``; ``ad_gen`` (default the first) acts by ``ad``."""
    gens = tuple(gens)
    return Algebra(gens, ad_gens=(ad_gen or gens[0],))


def free_gens(m):
    return tuple("X%d" % i for i in range(m + 1))


def normal_form(p, algebra=None):
    return (algebra or U05).normal_form(p)


def alpha_apply(word, algebra=None):
    return (algebra or U05).alpha(word)


def pbw_rank(pairs, algebra=None):
    return (algebra or U05).pbw_rank(pairs)


def check_w0(word, gens, tail_forbidden):
    """Raise unless ``word`` is over ``gens`` and does not end in ``tail_forbidden``."""
    word = tuple(word)
    for g in word:
        if g not in gens:
            raise PreconditionError("%r is not a word over %r" % (word, gens))
    if word and word[-1] == tail_forbidden:
        raise PreconditionError("%r ends with %s" % (word, tail_forbidden))
    return word
