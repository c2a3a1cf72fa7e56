"""Command-line interface tying the modules together.

All machine-readable output goes to stdout with deterministic ordering;
diagnostics go to stderr.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import euler, flatcount, modforms, prototypes, svconst
from .eigencheck import verification_csv
from .errors import PrymsvError
from .exactq import is_square


def _table(args: argparse.Namespace) -> euler.EulerTable:
    if getattr(args, "table", None):
        return euler.load_table(args.table)
    return euler.BUILTIN_TABLE


def _cmd_chi(args: argparse.Namespace) -> int:
    print(euler.chi_report(args.dmin, args.dmax, _table(args)))
    return 0


def _cmd_sv(args: argparse.Namespace) -> int:
    results = svconst.sv_constants(args.d, _table(args))
    if args.json:
        for r in results:
            print(r.to_json())
    else:
        for r in results:
            print(
                f"D={r.D} component={r.component} c1={r.c1} c2={r.c2} c3={r.c3} "
                f"volume_pi2={r.volume_pi2_coeff} b_D={r.b_D}"
            )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.what == "modular":
        report = modforms.verify_vanishing(args.nmax)
        print(report.to_json())
        return 0 if report.ok else 1
    if args.what == "identity":
        failures: list[int] = []
        checked = 0
        for D in range(17, args.dmax + 1, 8):
            if is_square(D):
                continue
            checked += 1
            if modforms.S_D(D) != 0:
                failures.append(D)
        print(json.dumps({"dmax": args.dmax, "checked": checked, "failures": failures}))
        return 0 if not failures else 1
    # eigen
    report = verification_csv(args.dmax)
    print(report)
    return 0 if "FAIL" not in report else 1


def _cmd_protos(args: argparse.Namespace) -> int:
    enumerators = {
        "cyl": prototypes.enumerate_cyl,
        "triple": prototypes.enumerate_triple,
        "split": prototypes.enumerate_split,
    }
    csv = prototypes.protos_csv(enumerators[args.kind](args.d))
    if csv:
        print(csv)
    return 0


def _parse_proto(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected a,b,d,e")
    try:
        a, b, d, e = (int(x) for x in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prototype {text!r}") from exc
    return a, b, d, e


def _parse_vec(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected re,im")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc


def _cmd_count(args: argparse.Namespace) -> int:
    a, b, d, e = args.proto
    p = prototypes.TripleProto(a, b, d, e)
    if p.D != args.d:
        print(
            f"error: prototype {args.proto} has discriminant {p.D}, not {args.d}",
            file=sys.stderr,
        )
        return 2
    t = args.slit if args.slit is not None else flatcount.default_slit(p)
    surface = flatcount.build_slit_triple(p, t)
    surface.check()
    report = flatcount.count_report(surface, args.radius, args.tol)
    print(json.dumps(report, sort_keys=True))
    return 0


def _cmd_conjecture(args: argparse.Namespace) -> int:
    report = svconst.check_conjecture(5, args.dmax, _table(args))
    print(
        json.dumps(
            {
                "checked": report.checked,
                "failures": report.failures,
                "skipped": {str(k): v for k, v in sorted(report.skipped.items())},
            }
        )
    )
    return 0 if report.all_match else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prymsv",
        description="Euler characteristics, Siegel-Veech constants and "
        "saddle-connection counts for Prym eigenform loci.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_chi = sub.add_parser("chi", help="CSV of computed chi(W_D(0^3)) over a range")
    p_chi.add_argument("--dmin", type=int, required=True)
    p_chi.add_argument("--dmax", type=int, required=True)
    p_chi.add_argument("--table")
    p_chi.set_defaults(func=_cmd_chi)

    p_sv = sub.add_parser("sv", help="Siegel-Veech constants for one discriminant")
    p_sv.add_argument("--d", type=int, required=True)
    p_sv.add_argument("--table")
    p_sv.add_argument("--json", action="store_true")
    p_sv.set_defaults(func=_cmd_sv)

    p_verify = sub.add_parser("verify", help="exact verification suites")
    p_verify.add_argument("what", choices=["modular", "identity", "eigen"])
    p_verify.add_argument("--nmax", type=int, default=10000)
    p_verify.add_argument("--dmax", type=int, default=500)
    p_verify.set_defaults(func=_cmd_verify)

    p_protos = sub.add_parser("protos", help="enumerate prototypes as CSV")
    p_protos.add_argument("--d", type=int, required=True)
    p_protos.add_argument("--kind", choices=["cyl", "triple", "split"], required=True)
    p_protos.set_defaults(func=_cmd_protos)

    p_count = sub.add_parser("count", help="saddle-connection counting report")
    p_count.add_argument("--d", type=int, required=True)
    p_count.add_argument("--proto", type=_parse_proto, required=True)
    p_count.add_argument("--slit", type=_parse_vec, default=None)
    p_count.add_argument("--radius", type=float, required=True)
    p_count.add_argument("--tol", type=float, default=None)
    p_count.set_defaults(func=_cmd_count)

    p_conj = sub.add_parser("conjecture", help="check (25/9, 3, 2/9) over a range")
    p_conj.add_argument("--dmax", type=int, required=True)
    p_conj.add_argument("--table")
    p_conj.set_defaults(func=_cmd_conjecture)

    return parser


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrymsvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
