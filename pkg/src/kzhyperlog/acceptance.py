"""The acceptance criteria as runnable checks.

Each ``criterion_*`` function returns a :class:`Criterion`; ``run_all`` runs
them in order.  The test suite and the ``selftest`` CLI verb share this code.
"""

import random
import time
from dataclasses import dataclass

from . import identities, kzsolve, linalg, osbar
from .hyperlog import EvalConfig, eval_poly
from .osbar import TensorElement
from .wordalg import (LEFT, LEFT21, M04, M05, RIGHT, RIGHT21, ShufflePoly,
                      shuffle, words_of_degree)

TOL = 1e-9
CFG = EvalConfig(eps=1e-11)


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return "[%s] %2d %s (%.2f s): %s" % ("PASS" if self.passed else "FAIL", self.number,
                                            self.title, self.seconds, self.detail)


def _timed(number, title):
    def wrap(fn):
        def run():
            t = time.perf_counter()
            passed, detail = fn()
            return Criterion(number, title, bool(passed), detail, time.perf_counter() - t)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "B_2 dimension and content")
def criterion_1():
    basis = osbar.bar_basis(2)
    listed = osbar.listed_b2_generators()
    words = words_of_degree(M05, 2)
    all_cic = all(osbar.cic_check(g) for g in listed)
    same = linalg.same_span(osbar.words_to_vectors(listed, words), osbar.words_to_vectors(basis, words))
    ok = len(basis) == 19 and len(listed) == 19 and all_cic and same
    return ok, "dim %d, listed %d, listed pass CIC %s, spans equal %s" % (len(basis), len(listed), all_cic, same)


@_timed(2, "Integrability and negative control")
def criterion_2():
    full = kzsolve.integrability_check()
    dropped = [kzsolve.integrability_check(
        relations=[r for r in osbar.DEFAULT_RELATIONS if r is not rel])
        for rel in (osbar.ARNOLD_1, osbar.ARNOLD_2)]
    ok = full and not any(dropped)
    return ok, "full relations %s; with one Arnold relation dropped %s" % (full, dropped)


def _s0_words(letters, ad, n):
    return [w for w in words_of_degree(letters, n) if not w or w[-1] != ad]


@_timed(3, "iota round trip, s <= 4")
def criterion_3():
    counts = []
    for variant, (left, right, ad1, ad2) in (("12", (LEFT, RIGHT, "z1", "z2")),
                                             ("21", (LEFT21, RIGHT21, "z2", "z1"))):
        fwd = getattr(osbar, "iota_" + variant)
        inv = getattr(osbar, "iota_%s_inverse" % variant)
        for s in range(5):
            for b in osbar.b0_basis(s):
                if inv(fwd(b)) != b:
                    return False, "iota_%s^-1 iota_%s fails on %s" % (variant, variant, b)
            n = 0
            for a in range(s + 1):
                for u in _s0_words(left, ad1, a):
                    for v in _s0_words(right, ad2, s - a):
                        t = TensorElement(left, right, {(u, v): 1})
                        if fwd(inv(t)) != t:
                            return False, "iota_%s iota_%s^-1 fails on %s" % (variant, variant, t)
                        n += 1
            counts.append(n)
    return True, "basis tensors checked per degree: %s" % counts


@_timed(4, "Decomposition theorem, s <= 3")
def criterion_4():
    sol = kzsolve.expand_2kz(3)
    res = {tag: kzsolve.decomposition_check(3, tag, sol) for tag in ("C12", "C21")}
    return all(res.values()), "C12 %s, C21 %s" % (res["C12"], res["C21"])


@_timed(5, "Intersection characterization, s = 3, 4")
def criterion_5():
    out = []
    for s in (3, 4):
        words = words_of_degree(M05, s)
        inter = osbar.intersection_characterization(s)
        same = linalg.same_span(osbar.words_to_vectors(inter, words),
                                osbar.words_to_vectors(osbar.bar_basis(s), words))
        out.append((s, len(inter), same))
    return all(x[2] for x in out), "; ".join("s=%d dim %d equal %s" % x for x in out)


@_timed(6, "Harmonic product of MPLs")
def criterion_6():
    worst, special = 0.0, 0.0
    for k, l in ((1, 1), (2, 1), (2, 2)):
        rep = identities.verify(identities.harmonic_product_mpl(k, l), identities.DEFAULT_GRID, CFG, TOL)
        worst = max(worst, rep.max_residual)
        special = max(special, max(identities.ghpr_hpmpl_residual(k, l, a, b, CFG)
                                   for a, b in identities.DEFAULT_GRID))
    ok = worst < TOL and special < TOL
    return ok, "max residual %.2e; ghpr specialization vs harmonic product %.2e" % (worst, special)


@_timed(7, "Harmonic product of MZVs")
def criterion_7():
    rep = identities.verify(identities.hpmzv(2, 3), cfg=EvalConfig(eps=1e-10), tol=1e-8)
    return rep.passed, "|zeta(2)zeta(3) - zeta(2,3) - zeta(5) - zeta(3,2)| = %.2e" % rep.max_residual


@_timed(8, "Landen pair and five-term relation")
def criterion_8():
    res = identities.connection_degree2()
    sym1 = res.tensor1 == identities.LANDEN1_WORDS
    sym2 = res.tensor2 == identities.LANDEN2_WORDS
    five = identities.five_term_symbolic(res)
    worst = {}
    for ident in (res.landen1, res.landen2, identities.landen1(), identities.landen2(), identities.five_term()):
        grid = identities.admissible(ident, identities.DEFAULT_GRID)
        rep = identities.verify(ident, grid, CFG, TOL)
        worst[ident.name] = max(worst.get(ident.name, 0.0), rep.max_residual)
    ok = sym1 and sym2 and five and res.eps_cancelled and all(v < TOL for v in worst.values())
    return ok, "symbolic L1 %s, L2 %s, sum gives 5TERM %s; residuals %s" % (
        sym1, sym2, five, ", ".join("%s %.2e" % kv for kv in sorted(worst.items())))


@_timed(9, "GHPR suite, degree <= 3")
def criterion_9():
    grid = identities.square([0.1, 0.2, 0.3])
    pairs = identities.ghpr_pairs(3)
    worst = 0.0
    for w1, w2 in pairs:
        worst = max(worst, identities.verify(identities.ghpr(w1, w2), grid, CFG, TOL).max_residual)
    return worst < TOL, "%d identities, max residual %.2e" % (len(pairs), worst)


_S0_ALPHABETS = ((LEFT, "z1"), (RIGHT, "z2"), (LEFT21, "z2"), (RIGHT21, "z1"), (M04, "z1"))


def random_s0_word(rng, alphabet, ad, degree):
    while True:
        w = tuple(rng.choice(alphabet) for _ in range(degree))
        if not w or w[-1] != ad:
            return w


@_timed(10, "Shuffle multiplicativity of iterated integrals")
def criterion_10(seed=20240601, count=20):
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(count):
        alphabet, ad = rng.choice(_S0_ALPHABETS)
        p = ShufflePoly.word(alphabet, random_s0_word(rng, alphabet, ad, rng.randint(1, 3)))
        q = ShufflePoly.word(alphabet, random_s0_word(rng, alphabet, ad, rng.randint(1, 3)))
        z1, z2 = rng.uniform(0.05, 0.6), rng.uniform(0.05, 0.6)
        lhs = eval_poly(shuffle(p, q), z1, z2, cfg=CFG).value
        rhs = eval_poly(p, z1, z2, cfg=CFG).value * eval_poly(q, z1, z2, cfg=CFG).value
        worst = max(worst, abs(lhs - rhs))
    return worst < TOL, "%d random pairs, max residual %.2e" % (count, worst)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(stream=None):
    results = []
    for crit in CRITERIA:
        r = crit()
        results.append(r)
        if stream is not None:
            print(r.line(), file=stream, flush=True)
    return results
