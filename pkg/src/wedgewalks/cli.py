"""Batch command-line surface.

Verbs: count, series, verify, asympt, report, ledger.  Output is CSV or JSON
with exact decimal integers (JSON integers are string-encoded: counts near
length 1000 have ~385 digits).  The same flags always produce byte-identical
output.

Exit codes: 0 success, 1 unexpected verification failure, 2 invalid flags,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import asymptotics as asy
from . import closedforms as cf
from . import discrepancies, suites
from .errors import BudgetError
from .walks import KINDS, WedgeModel, count_walks, weighted_gf

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _default_digits() -> int:
    return int(os.environ.get("WEDGEWALKS_DIGITS", "30"))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_csv(series) -> str:
    lines = ["n,coefficient"]
    lo = min(series.valuation if series.valuation is not None else 0, 0)
    for k in range(lo, series.order + 1):
        lines.append(f"{k},{series.coeff(k)}")
    return "\n".join(lines) + "\n"


def cmd_count(args) -> int:
    model = WedgeModel(args.model, args.p)
    table = count_walks(model, args.n)
    _write(table.to_csv() if args.format == "csv" else table.to_json() + "\n",
           args.out)
    return EXIT_OK


def cmd_series(args) -> int:
    if args.kind == "weighted":
        w = weighted_gf(args.model, args.p, args.order)
        _write(w.to_json() + "\n", args.out)
        return EXIT_OK
    series = cf.gf_series(args.kind, args.order, a=args.a, p=args.p)
    if args.format == "csv":
        _write(_series_csv(series), args.out)
    else:
        _write(series.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite in ("kernel", "funceq"):
        kwargs["order"] = args.order
    elif args.suite == "closedform":
        kwargs["order"] = max(args.order, 40)
    elif args.suite == "interpretations":
        kwargs["order"] = min(args.order, 30)
    verdicts = suites.run_suite(args.suite, **kwargs)
    summary = suites.summarize(verdicts)
    _write(json.dumps(summary, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK if summary["clean"] else EXIT_VERIFY_FAIL


def cmd_asympt(args) -> int:
    digits = args.digits
    reports = []
    extras: dict = {}
    want = args.const

    def need_counts(kind: str, n: int):
        return count_walks(WedgeModel(kind, 1), n)

    if want in ("A0", "all"):
        reports.append(asy.constant_A0(digits))
    if want in ("A1A2", "all"):
        vt = need_counts("symmetric", min(args.nmax, 201))
        reports.extend(asy.constants_A1A2(vt, max(digits, 60)))
    if want in ("theta", "all"):
        reports.append(asy.constant_theta(digits))
    if want in ("B0", "all"):
        wt = need_counts("asymmetric", args.nmax)
        checkpoints = tuple(n for n in (args.nmax // 4, args.nmax // 2, args.nmax)
                            if n >= 10)
        reports.append(asy.constant_B0(wt, checkpoints, digits))
    if want in ("halfplane", "all"):
        ht = need_counts("halfplane", args.nmax)
        checkpoints = tuple(n for n in (args.nmax // 4, args.nmax // 2, args.nmax)
                            if n >= 10)
        reports.append(asy.constant_halfplane(ht, checkpoints, digits))
    if want in ("eq-accuracy", "all"):
        vt = need_counts("symmetric", 40)
        extras["accuracy_table"] = asy.eq37_accuracy(vt, digits)
    if want in ("p-pieces", "all"):
        reports.extend(asy.p_pieces_asymptotics(min(args.nmax, 200), digits))
    if want in ("roots", "all"):
        extras["root_audit"] = json.loads(
            asy.root_audit(args.kmax, digits).to_json())

    payload = {
        "schema": 1,
        "digits": digits,
        "reports": [r.to_dict() for r in reports],
        **extras,
    }
    _write(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    """Bundle counts, series heads, verdicts, and constants into one document."""
    n = args.nmax
    bundle: dict = {"schema": 1, "version": __version__}
    bundle["counts"] = {}
    for kind in ("free", "symmetric", "asymmetric", "halfplane"):
        table = count_walks(WedgeModel(kind, 1), n)
        bundle["counts"][kind] = [str(c) for c in table.counts]
    bundle["series"] = {
        kind: json.loads(cf.gf_series(kind, args.order).to_json())
        for kind in ("free", "dyck", "sym_g1", "asym_k1")
    }
    verdicts = suites.run_suite("all")
    bundle["verification"] = suites.summarize(verdicts)
    bundle["constants"] = [asy.constant_A0(args.digits).to_dict(),
                           asy.constant_theta(args.digits).to_dict()]
    vt = count_walks(WedgeModel("symmetric", 1), 40)
    bundle["accuracy_table"] = asy.eq37_accuracy(vt, args.digits)
    bundle["ledger"] = [
        {"id": d.id, "title": d.title, "observed": d.observed, "trusted": d.trusted}
        for d in discrepancies.LEDGER
    ]
    _write(json.dumps(bundle, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK if bundle["verification"]["clean"] else EXIT_VERIFY_FAIL


def cmd_ledger(args) -> int:
    if args.action == "list":
        _write(discrepancies.listing() + "\n", args.out)
    else:
        if not args.id:
            raise argparse.ArgumentTypeError("explain needs --id")
        _write(discrepancies.explain(args.id) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="wedgewalks",
        description="Exact enumeration, generating functions, verification "
                    "suites, and asymptotics for partially directed walks "
                    "in wedges.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="exact walk counts by length")
    p.add_argument("--model", choices=KINDS, required=True)
    p.add_argument("--p", type=int, default=1, help="wedge slope")
    p.add_argument("--n", type=int, required=True, help="maximum length")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("series", help="closed-form series coefficients")
    p.add_argument("--kind", choices=cf.GF_KINDS + ("weighted",), required=True)
    p.add_argument("--order", type=int, default=50)
    p.add_argument("--a", type=_fraction, default=Fraction(1),
                   help="rational argument for the parametrized kinds")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--model", choices=("symmetric", "asymmetric"),
                   default="symmetric", help="for --kind weighted")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", choices=tuple(suites.SUITES) + ("all",),
                   required=True)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("asympt", help="asymptotic constants and audits")
    p.add_argument("--const",
                   choices=("A0", "A1A2", "theta", "B0", "halfplane",
                            "eq-accuracy", "p-pieces", "roots", "all"),
                   default="all")
    p.add_argument("--digits", type=int, default=_default_digits())
    p.add_argument("--nmax", type=int, default=400)
    p.add_argument("--kmax", type=int, default=20)
    p.add_argument("--method", choices=("fit", "analytic"), default="fit",
                   help="recorded in reports; constants with closed forms "
                        "are always analytic")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_asympt)

    p = sub.add_parser("report", help="bundle everything into one JSON document")
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--nmax", type=int, default=40)
    p.add_argument("--digits", type=int, default=_default_digits())
    p.add_argument("--out")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("ledger", help="documented discrepancy records")
    p.add_argument("action", choices=("list", "explain"))
    p.add_argument("--id", help="ledger entry id for explain")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ledger)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
