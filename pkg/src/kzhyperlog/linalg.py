"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{column: value}`` with integer columns and ``int`` or
``Fraction`` values.  Elimination is fraction-free: every stored row is an
integer row divided by the gcd of its entries, with a positive pivot.  The
pivot of a row is its largest column, so results do not depend on the order
in which equal spans are fed in beyond the usual row-space uniqueness.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


def _integral(vec):
    """Return ``(ivec, d)`` with ``vec == ivec / d`` and integer ``ivec``."""
    d = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            d = lcm(d, v.denominator)
    if d == 1:
        return {k: int(v) for k, v in vec.items() if v}, 1
    return {k: int(v * d) for k, v in vec.items() if v}, d


def _content(*dicts):
    g = 0
    for dct in dicts:
        for v in dct.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def _combine(a, x, b, y):
    """Return ``a*x - b*y`` for sparse integer dicts."""
    out = {k: a * v for k, v in x.items()} if a != 1 else dict(x)
    for k, v in y.items():
        w = out.get(k, 0) - b * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row remembers which combination of the vectors passed to
    :meth:`add` produced it (``tag``), which is what :meth:`solve` uses.
    """

    def __init__(self, track=True):
        self.rows = {}  # pivot column -> (row, tag)
        self.track = track
        self._count = 0

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def _reduce(self, vec, tag):
        scale = 1
        for col in sorted(set(vec) & self.rows.keys(), reverse=True):
            c = vec.get(col)
            if not c:
                continue
            row, rtag = self.rows[col]
            p = row[col]
            g = gcd(p, c)
            a, b = p // g, c // g
            vec = _combine(a, vec, b, row)
            tag = _combine(a, tag, b, rtag)
            scale *= a
        return vec, tag, scale

    def add(self, vec, tag=None):
        """Insert ``vec``; return True iff it was independent of the span."""
        ivec, d = _integral(vec)
        idx = self._count
        self._count += 1
        if not self.track:
            itag = {}
        elif tag is None:
            itag = {idx: d}
        else:
            itag = {k: v * d for k, v in tag.items()}
        ivec, itag, _ = self._reduce(ivec, itag)
        if not ivec:
            return False
        g = _content(ivec, itag)
        pivot = max(ivec)
        if ivec[pivot] < 0:
            g = -g
        if g != 1:
            ivec = {k: v // g for k, v in ivec.items()}
            itag = {k: v // g for k, v in itag.items()}
        p = ivec[pivot]
        for col, (row, rtag) in list(self.rows.items()):
            c = row.get(pivot)
            if not c:
                continue
            h = gcd(p, c)
            a, b = p // h, c // h
            nrow = _combine(a, row, b, ivec)
            ntag = _combine(a, rtag, b, itag)
            h = _content(nrow, ntag)
            if h != 1:
                nrow = {k: v // h for k, v in nrow.items()}
                ntag = {k: v // h for k, v in ntag.items()}
            self.rows[col] = (nrow, ntag)
        self.rows[pivot] = (ivec, itag)
        return True

    def contains(self, vec):
        ivec, _ = _integral(vec)
        res, _, _ = self._reduce(ivec, {})
        return not res

    def solve(self, vec):
        """Coefficients ``c`` with ``vec == sum(c[i] * added[i])``, or None.

        Indices refer to the order of calls to :meth:`add`; dependent vectors
        simply receive no coefficient.
        """
        ivec, d = _integral(vec)
        res, tag, scale = self._reduce(ivec, {})
        if res:
            return None
        if not self.track:
            raise ValueError("solve() needs an Echelon built with track=True")
        # 0 == scale * ivec + sum(tag[k] * added[k])
        out = {}
        for k, v in tag.items():
            if v:
                out[k] = Fraction(-v, scale * d)
        return out


def rank(vectors):
    ech = Echelon(track=False)
    for v in vectors:
        ech.add(v)
    return ech.rank


def _primitive(vec):
    d = reduce(lcm, (v.denominator for v in vec.values()), 1)
    ivec = {k: int(v * d) for k, v in vec.items() if v}
    g = _content(ivec)
    return {k: v // g for k, v in ivec.items()}


def nullspace(equations, ncols):
    """Basis of ``{x : eq . x == 0 for eq in equations}`` in ``Q^ncols``.

    One primitive integer vector per free column, in increasing free-column
    order; the free column carries a positive entry.
    """
    ech = Echelon(track=False)
    for eq in equations:
        ech.add(eq)
    pivots = ech.rows
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, (row, _) in pivots.items():
            c = row.get(f)
            if c:
                vec[p] = Fraction(-c, row[p])
        basis.append(_primitive(vec))
    return basis


def annihilator(vectors, ncols):
    return nullspace(vectors, ncols)


def intersect(spanning_sets, ncols):
    """Basis of the intersection of the spans of several vector families."""
    eqs = []
    for vectors in spanning_sets:
        eqs.extend(annihilator(vectors, ncols))
    return nullspace(eqs, ncols)


def same_span(a, b):
    """Exact test that two families span the same subspace."""
    ea, eb = Echelon(track=False), Echelon(track=False)
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(v) for v in b)
