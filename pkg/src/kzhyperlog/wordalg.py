"""Free shuffle algebras over finite alphabets with rational coefficients.

A word is a tuple of letter names; ``()`` is the unit.  A :class:`ShufflePoly`
is a finite rational combination of words over a declared alphabet.  The
product of the algebra is the shuffle product; concatenation is available as
a separate bilinear operation.
"""

import json
import re
from fractions import Fraction
from functools import lru_cache

from .errors import AlphabetError

# Letter names used throughout the package.
Z1, Z11, Z2, Z22, Z12 = "z1", "z11", "z2", "z22", "z12"
Z12_1, Z12_2 = "z12_1", "z12_2"

M05 = (Z1, Z11, Z2, Z22, Z12)
M04 = (Z1, Z11)
LEFT = (Z1, Z11, Z12_1)  # S(zeta_1, zeta_11, zeta_12^(1))
RIGHT = (Z2, Z22)  # S(zeta_2, zeta_22)
LEFT21 = (Z2, Z22, Z12_2)  # S(zeta_2, zeta_22, zeta_12^(2))
RIGHT21 = (Z1, Z11)  # S(zeta_1, zeta_11)


def free_alphabet(m):
    """Letters ``x0, ..., xm`` of the one-variable generalized equation."""
    return tuple("x%d" % i for i in range(m + 1))


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("coefficients must be exact rationals, got %r" % (c,))


@lru_cache(maxsize=None)
def shuffle_words(u, v):
    """Shuffle of two words as a dict ``word -> multiplicity``."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    a, b = u[0], v[0]
    for w, c in shuffle_words(u[1:], v).items():
        key = (a,) + w
        out[key] = out.get(key, 0) + c
    for w, c in shuffle_words(u, v[1:]).items():
        key = (b,) + w
        out[key] = out.get(key, 0) + c
    return out


class ShufflePoly:
    """Rational linear combination of words over a fixed alphabet.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("alphabet", "_terms", "_index")

    def __init__(self, alphabet, terms=None):
        self.alphabet = tuple(alphabet)
        self._index = {a: i for i, a in enumerate(self.alphabet)}
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            for letter in word:
                if letter not in self._index:
                    raise AlphabetError(
                        "letter %r not in alphabet %r" % (letter, self.alphabet))
            c = _coerce(c)
            if c:
                clean[word] = clean.get(word, 0) + c
        self._terms = {w: c for w, c in clean.items() if c}

    # -- constructors -------------------------------------------------------
    @classmethod
    def one(cls, alphabet):
        return cls(alphabet, {(): 1})

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def word(cls, alphabet, letters, coeff=1):
        return cls(alphabet, {tuple(letters): coeff})

    @classmethod
    def letter(cls, alphabet, letter, coeff=1):
        return cls(alphabet, {(letter,): coeff})

    # -- access -------------------------------------------------------------
    def sort_key(self, word):
        return (len(word), tuple(self._index[a] for a in word))

    def items(self):
        """Terms in canonical order (by degree, then letter order)."""
        return sorted(self._terms.items(), key=lambda t: self.sort_key(t[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def coeff(self, word):
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def degrees(self):
        return sorted({len(w) for w in self._terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        return degs[-1] if degs else 0

    def component(self, s):
        return ShufflePoly(self.alphabet, {w: c for w, c in self._terms.items() if len(w) == s})

    def _check(self, other):
        if not isinstance(other, ShufflePoly):
            raise TypeError("expected ShufflePoly, got %r" % type(other))
        if other.alphabet != self.alphabet:
            raise AlphabetError("alphabet mismatch: %r vs %r" % (self.alphabet, other.alphabet))

    # -- linear structure ---------------------------------------------------
    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return ShufflePoly(self.alphabet, out)

    def __neg__(self):
        return ShufflePoly(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, ShufflePoly):
            raise TypeError("use shuffle() or concat() to multiply polynomials")
        scalar = _coerce(scalar)
        return ShufflePoly(self.alphabet, {w: scalar * c for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ShufflePoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self._terms.items())))

    # -- products -----------------------------------------------------------
    def shuffle(self, other):
        return shuffle(self, other)

    def concat(self, other):
        return concat(self, other)

    # -- misc ---------------------------------------------------------------
    def relabel(self, mapping, alphabet):
        """Rename letters via ``mapping`` into a polynomial over ``alphabet``."""
        return ShufflePoly(alphabet, {tuple(mapping.get(a, a) for a in w): c
                                      for w, c in self._terms.items()})

    def ends_with_any(self, letters):
        return any(w and w[-1] in letters for w in self._terms)

    def to_text(self):
        return format_terms(self.items(), ".", "1")

    def to_json(self):
        return {
            "alphabet": list(self.alphabet),
            "terms": [{"word": list(w), "coeff": str(c)} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["alphabet"], {tuple(t["word"]): Fraction(t["coeff"]) for t in data["terms"]})

    @classmethod
    def from_text(cls, alphabet, text):
        return cls(alphabet, parse_terms(text, ".", "1"))

    def __repr__(self):
        return "ShufflePoly(%s)" % self.to_text()

    def __str__(self):
        return self.to_text()


def format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_terms(items, sep, unit):
    """Canonical ``3/2*a.b - 1*c`` rendering shared by the algebra types."""
    parts = []
    for i, (word, c) in enumerate(items):
        body = sep.join(word) if word else unit
        sign = "-" if c < 0 else "+"
        mag = format_coeff(abs(c))
        if i == 0:
            parts.append(("-" if c < 0 else "") + "%s*%s" % (mag, body))
        else:
            parts.append("%s %s*%s" % (sign, mag, body))
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\s*\*\s*([^\s+*-][^\s+*]*)")


def parse_terms(text, sep, unit):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError("cannot parse %r at offset %d" % (text, pos))
        sign, coeff, body = m.groups()
        c = Fraction(coeff) * (-1 if sign == "-" else 1)
        word = () if body == unit else tuple(body.split(sep))
        out[word] = out.get(word, 0) + c
        pos = m.end()
        if pos < len(text) and not text[pos:].strip():
            break
    return out


def shuffle(p, q):
    """Bilinear shuffle product."""
    p._check(q)
    out = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            for w, m in shuffle_words(u, v).items():
                out[w] = out.get(w, 0) + a * b * m
    return ShufflePoly(p.alphabet, out)


def concat(p, q):
    """Bilinear concatenation product."""
    p._check(q)
    out = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return ShufflePoly(p.alphabet, out)


def words_of_degree(alphabet, s):
    """All words of length ``s`` in canonical order."""
    words = [()]
    for _ in range(s):
        words = [w + (a,) for w in words for a in alphabet]
    return words


def _trailing(word, x):
    k = 0
    while k < len(word) and word[-1 - k] == x:
        k += 1
    return k


def last_letter_decompose(p, x):
    """Write ``p = sum_i c_i sh (x o x o ... o x)`` with ``i`` copies of ``x``.

    Returns ``{i: c_i}`` where no word of any ``c_i`` ends in ``x``.  Words
    are peeled off in decreasing order of their trailing run of ``x``:
    ``u o x^k`` is replaced by ``u sh x^k`` minus terms whose trailing run
    is strictly shorter, so the loop terminates.
    """
    if x not in p.alphabet:
        raise AlphabetError("letter %r not in alphabet %r" % (x, p.alphabet))
    work = dict(p._terms)
    coeffs = {}
    while True:
        runs = {w: _trailing(w, x) for w, c in work.items() if c}
        top = max(runs.values(), default=0)
        if top == 0:
            break
        for w in sorted((w for w, k in runs.items() if k == top),
                        key=p.sort_key):
            c = work.get(w, 0)
            if not c:
                continue
            u = w[: len(w) - top]
            bucket = coeffs.setdefault(top, {})
            bucket[u] = bucket.get(u, 0) + c
            for v, m in shuffle_words(u, (x,) * top).items():
                work[v] = work.get(v, 0) - c * m
    rest = ShufflePoly(p.alphabet, work)
    out = {i: ShufflePoly(p.alphabet, b) for i, b in coeffs.items()}
    out = {i: c for i, c in out.items() if c}
    if rest:
        out[0] = rest
    return dict(sorted(out.items()))


def reconstruct(coeffs, x, alphabet):
    """Inverse of :func:`last_letter_decompose`."""
    total = ShufflePoly.zero(alphabet)
    for i, c in coeffs.items():
        total = total + shuffle(c, ShufflePoly.word(alphabet, (x,) * i))
    return total
