"""Command-line surface.

Subcommands mirror the library modules: `hilbert` for symbols over Q,
`brq` for local invariant vectors, `qx` for quaternions over Q(x),
`ffx` for quaternions over F_p(x), and `selftest` for the seeded property
suites.  Exit codes: 0 ok, 1 mathematical precondition error, 2 parse
error, 3 undecided within budget.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import local_symbols
from .brauer_q import (
    BrauerClassQ,
    QuaternionQ,
    class_of_quaternion,
    example_6_5,
    same_maximal_subfields_q,
    same_subgroup,
    scale_class,
)
from .errors import BudgetError, DomainError, ParseError
from .exact_arith import polyfp_from_string, ratfunc_from_string
from .funcfield_fp import FactoredFuncFp, class_fp, is_isomorphic_fpx
from .funcfield_q import (
    FactoredFunc,
    QuaternionFF,
    is_isomorphic_qx,
    ramification_set,
    residue_at,
    specialize,
)
from .local_symbols import REAL, PlaceQ, hilbert
from .selftest import run_selftest


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None


def _funcfield(s: str) -> FactoredFunc:
    num, den = ratfunc_from_string(s)
    if num.is_zero():
        raise DomainError(f"{s!r} is zero, not a unit of Q(x)")
    f = FactoredFunc.from_poly(num)
    if den.degree > 0 or den.coeffs[0] != 1:
        f = f * FactoredFunc.from_poly(den).inverse()
    return f


def _load_class(path: str) -> BrauerClassQ:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}: {exc}") from None
    try:
        return BrauerClassQ.from_json(data)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad class schema in {path}: {exc}") from None


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


# -- command handlers --------------------------------------------------------

def cmd_hilbert(args) -> int:
    a, b = _fraction(args.a), _fraction(args.b)
    if args.all:
        primes = {2}
        from .exact_arith import factor_rational
        primes.update(factor_rational(a).primes())
        primes.update(factor_rational(b).primes())
        places = [REAL] + [PlaceQ(p) for p in sorted(primes)]
        syms = {str(v): hilbert(a, b, v) for v in places}
        prod = 1
        for s in syms.values():
            prod *= s
        _emit(args, {"symbols": syms, "product": prod},
              "\n".join(f"({a}, {b})_{v} = {s}" for v, s in syms.items())
              + f"\nproduct = {prod}")
    else:
        place = REAL if args.real else PlaceQ.finite(args.p)
        s = hilbert(a, b, place)
        _emit(args, {"place": str(place), "symbol": s},
              f"({a}, {b})_{place} = {s}")
    return 0


def cmd_brq_class(args) -> int:
    q = QuaternionQ.make(_fraction(args.a), _fraction(args.b))
    cls = class_of_quaternion(q)
    _emit(args, cls.to_json(), f"class of {q}: {cls}")
    return 0


def cmd_brq_samesub(args) -> int:
    c1, c2 = _load_class(args.file1), _load_class(args.file2)
    same = same_maximal_subfields_q(c1, c2)
    _emit(args, {"same_maximal_subfields": same,
                 "citations": ["equal local index vectors (AHBN)"]},
          f"same maximal subfields: {same}")
    return 0


def cmd_brq_ex65(args) -> int:
    try:
        places = tuple(PlaceQ.finite(int(p)) for p in args.places.split(","))
    except ValueError as exc:
        raise ParseError(f"bad place list {args.places!r}: {exc}") from None
    c1, c2 = example_6_5(args.n, places)
    preds = {
        "same_maximal_subfields": same_maximal_subfields_q(c1, c2),
        "same_subgroup": same_subgroup(c1, c2),
        "equal": c1 == c2,
    }
    _emit(args, {"class1": c1.to_json(), "class2": c2.to_json(), **preds},
          f"class1 = {c1}\nclass2 = {c2}\n"
          + "\n".join(f"{k} = {v}" for k, v in preds.items()))
    return 0


def cmd_brq_scale(args) -> int:
    c = _load_class(args.file)
    out = scale_class(c, args.m)
    _emit(args, out.to_json(), f"{args.m} * {c} = {out}")
    return 0


def cmd_qx_residues(args) -> int:
    D = QuaternionFF(_funcfield(args.f), _funcfield(args.g))
    rng = random.Random(args.seed)
    table = {}
    for v in D.places():
        table[str(v)] = residue_at(D, v, rng).to_json()
    ram = [str(ch.place) for ch in ramification_set(D, random.Random(args.seed))]
    _emit(args, {"residues": table, "ramified": ram},
          "\n".join(f"{v}: {'trivial' if t['trivial'] else 'ramified'}"
                    for v, t in table.items()) or "no finite places divide the entries")
    return 0


def cmd_qx_isom(args) -> int:
    D1 = QuaternionFF(_funcfield(args.f1), _funcfield(args.g1))
    D2 = QuaternionFF(_funcfield(args.f2), _funcfield(args.g2))
    verdict = is_isomorphic_qx(D1, D2, random.Random(args.seed))
    human = "isomorphic" if verdict.isomorphic else "not isomorphic"
    if verdict.witness_place is not None:
        human += f" (witness place: {verdict.witness_place})"
    if verdict.witness_invariants is not None:
        human += f" (witness invariants: {verdict.witness_invariants})"
    if verdict.specialization_point is not None:
        human += f" [specialized at x = {verdict.specialization_point}]"
    _emit(args, verdict.to_json(), human)
    return 0


def cmd_qx_specialize(args) -> int:
    D = QuaternionFF(_funcfield(args.f), _funcfield(args.g))
    q = specialize(D, _fraction(args.at))
    cls = class_of_quaternion(q)
    _emit(args, {"quaternion": {"a": str(q.a), "b": str(q.b)},
                 "class": cls.to_json()},
          f"specialization at {args.at}: {q}, class {cls}")
    return 0


def cmd_ffx_residues(args) -> int:
    p = args.char
    rng = random.Random(args.seed)
    f = FactoredFuncFp.from_poly(polyfp_from_string(args.f, p), rng)
    g = FactoredFuncFp.from_poly(polyfp_from_string(args.g, p), rng)
    cls = class_fp(f, g)
    _emit(args, cls.to_json(),
          f"ramified places over F_{p}(x): {cls}")
    return 0


def cmd_ffx_isom(args) -> int:
    p = args.char
    rng = random.Random(args.seed)

    def pair(fs, gs):
        return (FactoredFuncFp.from_poly(polyfp_from_string(fs, p), rng),
                FactoredFuncFp.from_poly(polyfp_from_string(gs, p), rng))

    verdict = is_isomorphic_fpx(pair(args.f1, args.g1), pair(args.f2, args.g2))
    human = "isomorphic" if verdict.isomorphic else \
        f"not isomorphic (witness place: {verdict.witness_place})"
    _emit(args, verdict.to_json(), human)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed, args.cases)
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({"seed": args.seed, "cases": args.cases, "passed": ok,
                          "suites": [{"name": r.name, "ok": r.ok,
                                      "failures": r.failures} for r in results]},
                         indent=2))
    else:
        for r in results:
            print(f"[{'PASS' if r.ok else 'FAIL'}] {r.name} ({r.cases} cases)")
            for msg in r.failures[:5]:
                print(f"    {msg}")
        print(f"selftest seed={args.seed}: {'all suites passed' if ok else 'FAILURES'}")
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="quatbrauer",
        description="Quaternion algebras and exponent-2 Brauer classes over "
                    "Q, Q(x) and F_p(x)")
    top.add_argument("--json", action="store_true", help="machine-readable output")
    top.add_argument("--seed", type=int,
                     default=int(os.environ.get("QUATBRAUER_SEED", "0")),
                     help="seed for Las Vegas subroutines")
    sub = top.add_subparsers(dest="command", required=True)

    ph = sub.add_parser("hilbert", help="Hilbert symbols over Q")
    ph.add_argument("-a", required=True)
    ph.add_argument("-b", required=True)
    grp = ph.add_mutually_exclusive_group(required=True)
    grp.add_argument("-p", type=int, help="finite place")
    grp.add_argument("--real", action="store_true")
    grp.add_argument("--all", action="store_true",
                     help="all support places plus the product")
    ph.set_defaults(func=cmd_hilbert)

    pb = sub.add_parser("brq", help="Brauer classes of Q as invariant vectors")
    bsub = pb.add_subparsers(dest="brq_command", required=True)
    b1 = bsub.add_parser("class")
    b1.add_argument("-a", required=True)
    b1.add_argument("-b", required=True)
    b1.set_defaults(func=cmd_brq_class)
    b2 = bsub.add_parser("samesub")
    b2.add_argument("file1")
    b2.add_argument("file2")
    b2.set_defaults(func=cmd_brq_samesub)
    b3 = bsub.add_parser("ex65")
    b3.add_argument("-n", type=int, required=True)
    b3.add_argument("-p", dest="places", required=True,
                    help="four distinct primes, comma separated")
    b3.set_defaults(func=cmd_brq_ex65)
    b4 = bsub.add_parser("scale")
    b4.add_argument("file")
    b4.add_argument("-m", type=int, required=True)
    b4.set_defaults(func=cmd_brq_scale)

    pq = sub.add_parser("qx", help="quaternions over Q(x)")
    qsub = pq.add_subparsers(dest="qx_command", required=True)
    q1 = qsub.add_parser("residues")
    q1.add_argument("-f", required=True)
    q1.add_argument("-g", required=True)
    q1.set_defaults(func=cmd_qx_residues)
    q2 = qsub.add_parser("isom")
    q2.add_argument("-f1", required=True)
    q2.add_argument("-g1", required=True)
    q2.add_argument("-f2", required=True)
    q2.add_argument("-g2", required=True)
    q2.set_defaults(func=cmd_qx_isom)
    q3 = qsub.add_parser("specialize")
    q3.add_argument("-f", required=True)
    q3.add_argument("-g", required=True)
    q3.add_argument("--at", required=True)
    q3.set_defaults(func=cmd_qx_specialize)

    pf = sub.add_parser("ffx", help="quaternions over F_p(x)")
    fsub = pf.add_subparsers(dest="ffx_command", required=True)
    f1 = fsub.add_parser("residues")
    f1.add_argument("--char", type=int, required=True)
    f1.add_argument("-f", required=True)
    f1.add_argument("-g", required=True)
    f1.set_defaults(func=cmd_ffx_residues)
    f2 = fsub.add_parser("isom")
    f2.add_argument("--char", type=int, required=True)
    f2.add_argument("-f1", required=True)
    f2.add_argument("-g1", required=True)
    f2.add_argument("-f2", required=True)
    f2.add_argument("-g2", required=True)
    f2.set_defaults(func=cmd_ffx_isom)

    ps = sub.add_parser("selftest", help="run the seeded property suites")
    ps.add_argument("--cases", type=int, default=50)
    ps.set_defaults(func=cmd_selftest)

    return top


def main(argv=None) -> int:
    budget = os.environ.get("QUATBRAUER_SQUARE_BUDGET")
    if budget:
        local_symbols.MAX_LIFT_EXPONENT = int(budget)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
