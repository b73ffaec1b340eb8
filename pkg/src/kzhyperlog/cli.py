"""Command-line entry point.

Exit codes: 0 success, 1 failed check or non-convergence, 2 usage or domain
error, 3 internal inconsistency.
"""

import argparse
import io
import json
import sys

from . import acceptance, identities, kzsolve, osbar
from .errors import (ConvergenceError, DomainError, InternalConsistencyError,
                     KZError, PreconditionError)
from .hyperlog import EvalConfig, eval_mpl1, eval_mpl2, eval_mzv, eval_word
from .wordalg import LEFT, LEFT21, M04, RIGHT, RIGHT21, free_alphabet

ALPHABETS = {"m04": M04, "left": LEFT, "right": RIGHT, "left21": LEFT21, "right21": RIGHT21}


class UsageError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_complex(text):
    """``re`` or ``re+imi`` / ``re-imi``."""
    s = text.strip().replace(" ", "")
    try:
        if s.endswith("i"):
            return complex(s[:-1] + "j")
        return complex(float(s))
    except ValueError:
        raise UsageError("cannot parse %r as a number" % (text,)) from None


def parse_indices(text):
    try:
        ks = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("indices must be comma-separated integers, got %r" % (text,)) from None
    if not ks or any(k < 1 for k in ks):
        raise UsageError("indices must be positive")
    return ks


def parse_word(text):
    text = text.strip()
    if text in ("", "1", "I"):
        return ()
    return tuple(text.split("."))


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _estimate_json(est):
    v = complex(est.value)
    return {"value": {"re": v.real, "im": v.imag}, "bound": est.bound,
            "terms": est.terms, "clamped": est.clamped}


def _estimate_text(est):
    v = complex(est.value)
    val = repr(v.real) if v.imag == 0 else "%r%+ri" % (v.real, v.imag)
    line = "%s +/- %.3e (%d terms)" % (val, est.bound, est.terms)
    if est.clamped:
        line += " [eps clamped to floor]"
    return line


# -- verbs --------------------------------------------------------------------


def cmd_expand(args, out):
    if args.equation == "1kz":
        sol = kzsolve.expand_1kz(args.max_degree)
    elif args.equation == "g1kz":
        sol = kzsolve.expand_g1kz(args.m, args.max_degree)
    else:
        sol = kzsolve.expand_2kz(args.max_degree)
    out.write((_dump(sol.to_json()) if args.format == "json" else sol.to_text()) + "\n")
    return 0


def cmd_bar_basis(args, out):
    basis = osbar.b0_basis(args.degree) if args.reduced else osbar.bar_basis(args.degree)
    if args.format == "json":
        out.write(_dump({"degree": args.degree, "reduced": args.reduced, "dimension": len(basis),
                         "basis": [p.to_json() for p in basis]}) + "\n")
    else:
        out.write("dimension %d\n" % len(basis))
        for p in basis:
            out.write(p.to_text() + "\n")
    return 0


def _identity_list(args):
    if args.w1 is not None or args.w2 is not None:
        return [identities.ghpr(parse_word(args.w1 or ""), parse_word(args.w2 or ""))]
    return [identities.ghpr(w1, w2) for w1, w2 in identities.ghpr_pairs(args.max_degree)]


def cmd_ghpr(args, out):
    idents = _identity_list(args)
    if args.format == "json":
        out.write(_dump([i.to_json() for i in idents]) + "\n")
    else:
        for i in idents:
            out.write(i.to_text() + "\n")
    return 0


def _verify_targets(args):
    if args.identity == "five-term":
        return [identities.five_term()]
    if args.identity == "landen":
        return [identities.landen1(), identities.landen2()]
    if args.identity == "harmonic":
        return [identities.harmonic_product_mpl(k, l) for k, l in ((1, 1), (2, 1), (2, 2))]
    if args.identity == "hpmzv":
        return [identities.hpmzv(2, 3)]
    return _identity_list(args)


def cmd_verify(args, out):
    grid = identities.square(identities.parse_grid(args.grid)) if args.grid else identities.DEFAULT_GRID
    cfg = EvalConfig(eps=args.eps)
    reports = []
    for ident in _verify_targets(args):
        pts = identities.admissible(ident, grid)
        if not pts and not ident.point_free:
            raise DomainError("no grid point lies in the domain of %s" % ident.name)
        rep = identities.verify(ident, pts, cfg, args.tol)
        reports.append((ident, rep))
    if args.format == "json":
        out.write(_dump([dict(rep.to_json(), descriptor=ident.to_json()) for ident, rep in reports]) + "\n")
    else:
        for ident, rep in reports:
            out.write(ident.to_text() + "\n" + rep.to_text() + "\n")
    return 0 if all(rep.passed for _, rep in reports) else 1


def cmd_eval(args, out):
    cfg = EvalConfig(eps=args.eps)
    if args.kind == "mzv":
        est = eval_mzv(parse_indices(args.indices), cfg)
    elif args.kind == "mpl1":
        est = eval_mpl1(parse_indices(args.indices), parse_complex(args.z), cfg)
    elif args.kind == "mpl2":
        ks = parse_indices(args.indices)
        i = len(ks) - args.j if args.i is None else args.i
        est = eval_mpl2(ks, i, args.j, parse_complex(args.z1), parse_complex(args.z2), cfg)
    else:
        if args.alphabet.startswith("free:"):
            alphabet = free_alphabet(int(args.alphabet[5:]))
        elif args.alphabet in ALPHABETS:
            alphabet = ALPHABETS[args.alphabet]
        else:
            raise UsageError("unknown alphabet %r" % (args.alphabet,))
        params = [parse_complex(p) for p in args.params.split(",")] if args.params else None
        z1 = parse_complex(args.z1 if args.z1 is not None else args.z) if (args.z1 or args.z) else None
        z2 = parse_complex(args.z2) if args.z2 is not None else None
        est = eval_word(parse_word(args.word), alphabet, z1, z2, params, cfg)
    if args.format == "json":
        out.write(_dump(_estimate_json(est)) + "\n")
    else:
        out.write(_estimate_text(est) + "\n")
    return 0


def cmd_selftest(args, out):
    results = acceptance.run_all(None if args.format == "json" else out)
    if args.format == "json":
        out.write(_dump([{"criterion": r.number, "title": r.title, "pass": r.passed, "detail": r.detail}
                         for r in results]) + "\n")
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    p = _Parser(prog="kzhyperlog", description="KZ series, bar algebra and hyperlogarithm identities")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")

    e = sub.add_parser("expand", help="series solution of a KZ equation")
    e.add_argument("--equation", choices=("1kz", "g1kz", "2kz"), required=True)
    e.add_argument("--max-degree", type=int, default=3)
    e.add_argument("--m", type=int, default=2, help="number of parameters for g1kz")
    add_format(e)

    b = sub.add_parser("bar-basis", help="basis of the reduced bar algebra in one degree")
    b.add_argument("--degree", type=int, required=True)
    b.add_argument("--reduced", action="store_true", help="only words not ending in z1 or z2")
    add_format(b)

    def add_words(sp):
        sp.add_argument("--w1", help="word in Z1, Z11, Z12, dot separated")
        sp.add_argument("--w2", help="word in Z2, Z22, dot separated")
        sp.add_argument("--max-degree", type=int, default=2)

    g = sub.add_parser("ghpr", help="generalized harmonic product identities")
    add_words(g)
    add_format(g)

    v = sub.add_parser("verify", help="numerically verify identities on a grid")
    v.add_argument("identity", choices=("five-term", "harmonic", "ghpr", "landen", "hpmzv"))
    v.add_argument("--grid", help="start:stop:step, used for both coordinates")
    v.add_argument("--eps", type=float, default=1e-11)
    v.add_argument("--tol", type=float, default=1e-9)
    add_words(v)
    add_format(v)

    ev = sub.add_parser("eval", help="evaluate polylogarithms and zeta values")
    ev.add_argument("kind", choices=("mpl1", "mpl2", "mzv", "word"))
    ev.add_argument("--indices", default="2")
    ev.add_argument("--z", help="argument, re or re+imi")
    ev.add_argument("--z1")
    ev.add_argument("--z2")
    ev.add_argument("--i", type=int, help="depth attached to parameter 1 (mpl2)")
    ev.add_argument("--j", type=int, default=1, help="depth attached to z2 (mpl2)")
    ev.add_argument("--word", default="", help="dot separated letters (word)")
    ev.add_argument("--alphabet", default="m04", help="m04|left|right|left21|right21|free:m")
    ev.add_argument("--params", help="comma separated parameters for free alphabets")
    ev.add_argument("--eps", type=float, default=1e-10)
    add_format(ev)

    st = sub.add_parser("selftest", help="run the acceptance suite")
    add_format(st)
    return p


COMMANDS = {"expand": cmd_expand, "bar-basis": cmd_bar_basis, "ghpr": cmd_ghpr,
            "verify": cmd_verify, "eval": cmd_eval, "selftest": cmd_selftest}


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    buf = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        if args.verb == "eval" and args.kind == "mpl1" and args.z is None:
            raise UsageError("mpl1 needs --z")
        if args.verb == "eval" and args.kind == "mpl2" and (args.z1 is None or args.z2 is None):
            raise UsageError("mpl2 needs --z1 and --z2")
        if args.verb == "verify":
            for flag in ("eps", "tol"):
                if not getattr(args, flag) > 0:
                    raise UsageError("--%s must be positive" % flag)
        # selftest streams progress; everything else is buffered and emitted once
        code = COMMANDS[args.verb](args, stdout if args.verb == "selftest" else buf)
    except SystemExit as exc:  # --help
        stdout.write(buf.getvalue())
        return int(exc.code or 0)
    except ConvergenceError as exc:
        stderr.write("error: %s\n" % exc)
        return 1
    except InternalConsistencyError as exc:
        stderr.write("internal error: %s\n" % exc)
        return 3
    except (PreconditionError, DomainError) as exc:
        stderr.write("error: %s\n" % exc)
        return 2
    except KZError as exc:
        stderr.write("error: %s\n" % exc)
        return 2
    stdout.write(buf.getvalue())
    return code


def main():
    sys.exit(run())
