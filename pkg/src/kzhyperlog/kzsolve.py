"""Symbolic expansion of the normalized fundamental solutions.

Every expansion is produced by the same engine: starting from ``1 (x) I``,
apply ``sum_a (a o .) (x) op_a`` repeatedly, where ``a`` runs over the
1-forms of the equation and ``op_a`` is either ``ad`` or left multiplication
by the matching generator.  The degree-``s`` component is grouped by PBW
monomial; each coefficient is a ShufflePoly of iterated-integral words.
"""

import enum
import json
from fractions import Fraction

from . import osbar
from .envalg import (G1, G2, G11, G12, G22, M05_GENS, U05, NCPoly, bracket,
                     free_algebra, free_gens)
from .errors import PreconditionError
from .wordalg import (LEFT, LEFT21, M04, M05, RIGHT, RIGHT21, Z1, Z2, Z11,
                      Z12, Z12_1, Z12_2, Z22, ShufflePoly, free_alphabet)

AD, MU = "ad", "mu"

# letter, generator, action
ACTIONS_2KZ = ((Z1, G1, AD), (Z11, G11, MU), (Z2, G2, AD), (Z22, G22, MU), (Z12, G12, MU))
ACTIONS_C12_1 = ((Z1, G1, AD), (Z11, G11, MU), (Z12_1, G12, MU))
ACTIONS_C12_2 = ((Z2, G2, AD), (Z22, G22, MU))
ACTIONS_C21_2 = ((Z2, G2, AD), (Z22, G22, MU), (Z12_2, G12, MU))
ACTIONS_C21_1 = ((Z1, G1, AD), (Z11, G11, MU))

LETTER_TO_GEN = {Z1: G1, Z11: G11, Z2: G2, Z22: G22, Z12: G12}


class ContourTag(enum.Enum):
    C12 = "C12"
    C21 = "C21"


class SeriesSolution:
    """Truncated series ``sum_s sum_m coeff[s][m] (x) m``.

    ``coeff[s]`` maps a PBW monomial (tuple of generators) to a homogeneous
    ShufflePoly of degree ``s``.
    """

    def __init__(self, mode, alphabet, gens, max_degree, components):
        self.mode = mode
        self.alphabet = tuple(alphabet)
        self.gens = tuple(gens)
        self.max_degree = max_degree
        self._components = components

    def component(self, s):
        """Pairs ``(ShufflePoly, monomial)`` of degree ``s`` in canonical order."""
        if s > self.max_degree:
            raise PreconditionError("degree %d beyond truncation %d" % (s, self.max_degree))
        comp = self._components.get(s, {})
        gi = {g: i for i, g in enumerate(self.gens)}
        return [(comp[m], m) for m in sorted(comp, key=lambda m: tuple(gi[g] for g in m))]

    def coefficient(self, monomial):
        monomial = tuple(monomial)
        return self._components.get(len(monomial), {}).get(monomial, ShufflePoly.zero(self.alphabet))

    def terms(self, s):
        """Flat map ``(word, monomial) -> coefficient`` of degree ``s``."""
        out = {}
        for m, p in self._components.get(s, {}).items():
            for w, c in p.items():
                out[w, m] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, SeriesSolution):
            return NotImplemented
        return (self.alphabet, self.gens, self.max_degree) == \
            (other.alphabet, other.gens, other.max_degree) and \
            all(self.terms(s) == other.terms(s) for s in range(self.max_degree + 1))

    def to_text(self):
        lines = []
        for s in range(self.max_degree + 1):
            for p, m in self.component(s):
                lines.append("[%s] %s" % (".".join(m) or "I", p.to_text()))
        return "\n".join(lines)

    def to_json(self):
        return {
            "mode": self.mode,
            "alphabet": list(self.alphabet),
            "generators": list(self.gens),
            "max_degree": self.max_degree,
            "components": [
                {"degree": s,
                 "terms": [{"monomial": list(m), "coeff": p.to_json()["terms"]}
                           for p, m in self.component(s)]}
                for s in range(self.max_degree + 1)
            ],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        comps = {}
        for comp in data["components"]:
            block = {}
            for t in comp["terms"]:
                block[tuple(t["monomial"])] = ShufflePoly(
                    data["alphabet"], {tuple(x["word"]): Fraction(x["coeff"]) for x in t["coeff"]})
            comps[comp["degree"]] = block
        return cls(data["mode"], data["alphabet"], data["generators"], data["max_degree"], comps)


def _iterate(algebra, actions, s_max, alphabet, mode, order=None):
    """Degree-by-degree application of ``sum_a (a o .) (x) op_a`` to ``1 (x) I``."""
    if s_max < 0:
        raise PreconditionError("max degree must be non-negative")
    actions = list(actions)
    if order is not None:
        actions = [actions[i] for i in order]
    op_cache = {}

    def act(gen, kind, mono):
        key = (gen, kind, mono)
        if key not in op_cache:
            x = algebra.gen(gen)
            f = NCPoly.word(algebra.gens, mono)
            f = bracket(x, f) if kind == AD else x * f
            op_cache[key] = algebra.normal_form(f)._terms
        return op_cache[key]

    state = {((), ()): Fraction(1)}
    comps = {0: {(): ShufflePoly.one(alphabet)}}
    for s in range(1, s_max + 1):
        new = {}
        for (word, mono), c in state.items():
            for letter, gen, kind in actions:
                for m, d in act(gen, kind, mono).items():
                    key = ((letter,) + word, m)
                    new[key] = new.get(key, 0) + c * d
        state = {k: v for k, v in new.items() if v}
        block = {}
        for (word, mono), c in state.items():
            block.setdefault(mono, {})[word] = c
        comps[s] = {m: ShufflePoly(alphabet, t) for m, t in block.items()}
    return SeriesSolution(mode, alphabet, algebra.gens, s_max, comps)


def _closed_form(algebra, alphabet, ad_letter, to_gen, s_max, mode):
    """Sum over words not ending in ``ad_letter`` of ``word (x) alpha(word)(I)``."""
    comps = {0: {(): ShufflePoly.one(alphabet)}}
    words = [()]
    for s in range(1, s_max + 1):
        words = [(a,) + w for w in words for a in alphabet]
        block = {}
        for w in words:
            if w[-1] == ad_letter:
                continue
            for m, c in algebra.alpha(tuple(to_gen[a] for a in w))._terms.items():
                block.setdefault(m, {})[w] = c
        comps[s] = {m: ShufflePoly(alphabet, t) for m, t in block.items()}
    return SeriesSolution(mode, alphabet, algebra.gens, s_max, comps)


FREE_1KZ = free_algebra((G1, G11))


def expand_1kz(s_max):
    """The one-variable solution ``sum Li-words (x) ad(Z1)^(k1-1) mu(Z11) ... (I)``."""
    if s_max < 0:
        raise PreconditionError("max degree must be non-negative")
    return _closed_form(FREE_1KZ, M04, Z1, {Z1: G1, Z11: G11}, s_max, "1kz")


def expand_1kz_recursive(s_max):
    return _iterate(FREE_1KZ, ((Z1, G1, AD), (Z11, G11, MU)), s_max, M04, "1kz")


def expand_g1kz(m, s_max):
    """Free analogue over ``X0, ..., Xm`` with hyperlog words ``x0^(k1-1) x_i1 ...``."""
    if m < 1:
        raise PreconditionError("need at least one non-zero singular point")
    if s_max < 0:
        raise PreconditionError("max degree must be non-negative")
    gens = free_gens(m)
    letters = free_alphabet(m)
    return _closed_form(free_algebra(gens), letters, letters[0], dict(zip(letters, gens)),
                        s_max, "g1kz")


def expand_g1kz_recursive(m, s_max):
    gens = free_gens(m)
    letters = free_alphabet(m)
    actions = [(letters[0], gens[0], AD)] + [(a, g, MU) for a, g in zip(letters[1:], gens[1:])]
    return _iterate(free_algebra(gens), actions, s_max, letters, "g1kz")


def expand_2kz(s_max, order=None):
    """``(ad(Omega_0) + mu(Omega'))^s (1 (x) I)`` for ``s <= s_max``.

    ``order`` permutes the five actions; the result must not depend on it.
    """
    return _iterate(U05, ACTIONS_2KZ, s_max, M05, "2kz", order=order)


def expand_2kz_phi(s_max):
    """The same series assembled as ``sum phi(W', W'') (x) alpha(W'W'')(I)``."""
    comps = {0: {(): ShufflePoly.one(M05)}}
    for s in range(1, s_max + 1):
        block = {}
        for s1 in range(s + 1):
            for w1 in _w0_words((G1, G11, G12), G1, s1):
                for w2 in _w0_words((G2, G22), G2, s - s1):
                    img = U05.alpha(w1 + w2)
                    if not img:
                        continue
                    p = osbar.phi(w1, w2)
                    for m, c in img._terms.items():
                        block[m] = block.get(m, ShufflePoly.zero(M05)) + p * c
        comps[s] = {m: p for m, p in block.items() if p}
    return SeriesSolution("2kz", M05, M05_GENS, s_max, comps)


def _w0_words(gens, forbidden, n):
    words = [()]
    for _ in range(n):
        words = [w + (g,) for w in words for g in gens]
    return [w for w in words if not w or w[-1] != forbidden]


def decompose(s_max, tag):
    """The two one-variable factors of the solution along a contour.

    ``C12`` gives ``(L^(1), L^(2))`` over ``z1, z11, z12_1`` and ``z2, z22``;
    ``C21`` gives ``(L^(2), L^(1))`` over ``z2, z22, z12_2`` and ``z1, z11``.
    """
    tag = ContourTag(tag)
    if tag is ContourTag.C12:
        return (_iterate(U05, ACTIONS_C12_1, s_max, LEFT, "C12-1"),
                _iterate(U05, ACTIONS_C12_2, s_max, RIGHT, "C12-2"))
    return (_iterate(U05, ACTIONS_C21_2, s_max, LEFT21, "C21-2"),
            _iterate(U05, ACTIONS_C21_1, s_max, RIGHT21, "C21-1"))


def product_terms(first, second, s):
    """Degree-``s`` part of ``first * second`` as ``(u, v, monomial) -> coeff``."""
    out = {}
    for s1 in range(s + 1):
        a, b = first.terms(s1), second.terms(s - s1)
        for (u, m1), x in a.items():
            for (v, m2), y in b.items():
                prod = U05.normal_form(NCPoly.word(U05.gens, m1 + m2))
                for m, c in prod._terms.items():
                    key = (u, v, m)
                    out[key] = out.get(key, 0) + x * y * c
    return {k: v for k, v in out.items() if v}


def split_terms(solution, s, tag):
    """Degree-``s`` part of ``(iota (x) id)(solution)`` as ``(u, v, monomial) -> coeff``."""
    iota = osbar.iota_12 if ContourTag(tag) is ContourTag.C12 else osbar.iota_21
    out = {}
    for p, m in solution.component(s):
        for (u, v), c in iota(p, check=False)._terms.items():
            out[u, v, m] = c
    return out


def decomposition_check(s_max, tag, solution=None):
    """Exact comparison of the split two-variable series with the product."""
    solution = solution or expand_2kz(s_max)
    first, second = decompose(s_max, tag)
    return all(product_terms(first, second, s) == split_terms(solution, s, tag)
               for s in range(s_max + 1))


def integrability_check(relations=None, mode="m05"):
    """``Omega ^ Omega = 0``: ``sum_{a<b} wedge(a, b) (x) [Z_a, Z_b]`` vanishes."""
    if mode == "m04":
        space = osbar.OS2Space(M04, (osbar.TRIVIAL_1,) if relations is None else relations)
        algebra = FREE_1KZ
        gens = {Z1: G1, Z11: G11}
    elif mode == "m05":
        space = osbar.OS2 if relations is None else osbar.OS2Space(M05, relations)
        algebra = U05
        gens = LETTER_TO_GEN
    else:
        raise PreconditionError("unknown mode %r" % (mode,))
    letters = space.letters
    total = {}
    for i, a in enumerate(letters):
        for b in letters[i + 1:]:
            coords = space.wedge_coords(a, b)
            if not any(coords):
                continue
            br = algebra.normal_form(bracket(algebra.gen(gens[a]), algebra.gen(gens[b])))
            for k, x in enumerate(coords):
                if x:
                    for m, c in br._terms.items():
                        total[k, m] = total.get((k, m), 0) + x * c
    return not any(total.values())
