"""Command line: ``modpde verify <suite>``, ``modpde forms dump``, ``modpde mirror ...``."""
import argparse
import json
import sys
from fractions import Fraction

from . import forms, hypergeom, mirror
from .operators import parse_operator, frobenius, NotMUM
from .series import dump
from .suites import SUITES, run_suite, UnknownSuite


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _order(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("order must be at least 2")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="modpde", description="Exact q-series verification of "
                                "differential equations satisfied by modular forms of two variables.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--order", type=_order)
    v.add_argument("--seed", type=int)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--instances", type=int, default=25, help="random contexts for thm21-random")
    v.add_argument("--a", type=_fraction)
    v.add_argument("--b", type=_fraction)
    v.add_argument("--case", choices=("a", "b", "c", "d"))

    f = sub.add_parser("forms", help="modular-form q-expansions")
    fsub = f.add_subparsers(dest="action", required=True)
    d = fsub.add_parser("dump", help="print a q-expansion one term per line")
    d.add_argument("name", help=", ".join(forms.FORM_NAMES))
    d.add_argument("--order", type=int, default=20)

    h = sub.add_parser("hypergeom", help="hypergeometric transformation identities")
    hsub = h.add_subparsers(dest="action", required=True)
    c = hsub.add_parser("check", help="check one transformation identity")
    c.add_argument("kind", choices=hypergeom.TRANSFORMS)
    c.add_argument("params", nargs="+", type=_fraction)
    c.add_argument("--order", type=_order, default=30)
    c.add_argument("--format", choices=("text", "json"), default="text")

    m = sub.add_parser("mirror", help="mirror maps and operator identities")
    msub = m.add_subparsers(dest="action", required=True)
    r = msub.add_parser("relation", help="modular relation of one table case")
    r.add_argument("--case", choices=sorted(mirror.CASES), required=True)
    r.add_argument("--order", type=_order, default=20)
    r.add_argument("--format", choices=("text", "json"), default="text")
    e = msub.add_parser("op-equiv", help="symbolic operator equalities")
    e.add_argument("--format", choices=("text", "json"), default="text")
    fr = msub.add_parser("frobenius", help="Frobenius data and mirror map of an operator")
    fr.add_argument("--op", required=True, help='e.g. "theta^3 - 8x(6T+5)(6T+3)(6T+1)"')
    fr.add_argument("--order", type=_order, default=20)
    return p


def _emit(rep, fmt):
    print(rep.to_json() if fmt == "json" else rep.to_text())
    return rep.exit_code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            extra = {k: getattr(args, k) for k in ("a", "b", "case") if getattr(args, k) is not None}
            rep = run_suite(args.suite, args.order, args.seed, instances=args.instances, **extra)
            return _emit(rep, args.format)
        if args.command == "forms":
            value = forms.build_form(forms.FormSpec(args.name, args.order))
            if isinstance(value, tuple):
                print("# h\n" + dump(value[0]) + "\n# t\n" + dump(value[1]))
            else:
                print(dump(value))
            return 0
        if args.command == "hypergeom":
            return _emit(hypergeom.transform_check(args.kind, args.params, args.order), args.format)
        if args.action == "relation":
            return _emit(mirror.modular_relation_check(args.case, args.order), args.format)
        if args.action == "op-equiv":
            return _emit(mirror.operator_equiv_check(), args.format)
        op = parse_operator(args.op)
        basis = frobenius(op, args.order + 1)
        x = mirror.mirror_map(basis, args.order)
        print(json.dumps({
            "operator": repr(op),
            "f0": dump(basis.f0, "x").splitlines(),
            "g": dump(basis.g, "x").splitlines(),
            "mirror_map": dump(x.truncate(args.order + 1)).splitlines(),
        }, indent=2))
        return 0
    except (UnknownSuite, KeyError, ValueError, NotMUM) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
