"""Command-line surface.

Subcommands: bound, check, twist, catalog, verify.  Output is JSON by
default and is byte-identical across runs for identical invocations;
every Rational is printed exactly as p/q, and --approx adds float
companions without ever dropping the exact value.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 inconsistent mathematical input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction

from .bounds import BoundForm, BoundReport, sections_bound
from .errors import InconsistentInputError, UsageError
from .exactnum import format_rational, parse_rational
from .stability import StabilityReport, check_stability
from .twist import HilbertPoly, Poly, TwistCertificate, minimal_stable_twist, validate_hilbert
from .varieties import SheafSpec, Variety, catalog_entries, catalog_lookup, make_variety, parse_problem
from .verify import run_suite

_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")
_INT_RE = re.compile(r"^-?\d+$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    output = _Parser(add_help=False)
    output.add_argument("--format", choices=("json", "table", "csv"), default="json")
    output.add_argument("--approx", action="store_true",
                        help="add float companions next to exact rationals")

    source = _Parser(add_help=False)
    source.add_argument("--catalog", metavar="NAME")
    source.add_argument("--dim", type=int)
    source.add_argument("--h-top", type=int)
    source.add_argument("--c1-h", type=int)
    source.add_argument("--input", metavar="FILE",
                        help="JSON problem file; excludes the flag route")

    parser = _Parser(prog="syzstab",
                     description="Exact section bounds, stability certificates, "
                                 "and minimal stable twists")
    sub = parser.add_subparsers(dest="command")

    p_bound = sub.add_parser("bound", parents=[source, output],
                             help="upper bound on global sections")
    p_bound.add_argument("--rank", type=int)
    p_bound.add_argument("--degree", help="integer or range a..b")
    p_bound.add_argument("--form", choices=("lemma", "simplified"), default="simplified")

    p_check = sub.add_parser("check", parents=[source, output],
                             help="stability certificate for a syzygy sheaf")
    p_check.add_argument("--rank", type=int)
    p_check.add_argument("--degree", type=int)
    p_check.add_argument("--h0", type=int)
    p_check.add_argument("--hilbert", metavar="C0,C1,...")
    p_check.add_argument("--regularity", type=int)
    p_check.add_argument("--twist", type=int)

    p_twist = sub.add_parser("twist", parents=[source, output],
                             help="minimal certified stable twist")
    p_twist.add_argument("--rank", type=int)
    p_twist.add_argument("--degree", type=int)
    p_twist.add_argument("--hilbert", metavar="C0,C1,...")
    p_twist.add_argument("--regularity", type=int)

    p_catalog = sub.add_parser("catalog", parents=[output],
                               help="list or show built-in varieties")
    p_catalog.add_argument("action", nargs="?", choices=("list", "show"), default="list")
    p_catalog.add_argument("name", nargs="?")

    p_verify = sub.add_parser("verify", parents=[output],
                              help="run the invariant suite")
    p_verify.add_argument("--grid", choices=("small", "full"), default="small")
    p_verify.add_argument("--seed", type=int, default=0)

    return parser


def _parse_degrees(text: str) -> list[int]:
    m = _RANGE_RE.match(text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise UsageError(f"empty degree range {text!r}")
        return list(range(lo, hi + 1))
    if _INT_RE.match(text):
        return [int(text)]
    raise UsageError(f"--degree must be an integer or a range a..b, got {text!r}")


def _parse_hilbert(text: str) -> Poly:
    try:
        return Poly(tuple(parse_rational(part) for part in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad --hilbert coefficient list: {exc}") from None


def _variety_from_flags(args) -> Variety:
    if args.catalog is not None:
        if args.dim is not None or args.h_top is not None or args.c1_h is not None:
            raise UsageError("give --catalog or the --dim/--h-top/--c1-h triple, not both")
        return catalog_lookup(args.catalog)
    triple = (args.dim, args.h_top, args.c1_h)
    if any(v is None for v in triple):
        raise UsageError("give --catalog NAME or all of --dim, --h-top, --c1-h")
    return make_variety("custom", *triple)


def _forbid_flags_with_input(args, names) -> None:
    clashing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is not None]
    if clashing:
        raise UsageError(f"--input excludes {', '.join(clashing)}")


def _resolve(args, flag_names) -> tuple[Variety, SheafSpec | None]:
    if args.input is not None:
        _forbid_flags_with_input(args, ("catalog", "dim", "h_top", "c1_h") + tuple(flag_names))
        try:
            with open(args.input, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read input file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"input file is not valid JSON: {exc}") from None
        return parse_problem(data)
    return _variety_from_flags(args), None


def _variety_dict(v: Variety) -> dict:
    return {"name": v.name, "dim": v.dim, "h_top": v.h_top,
            "c1_dot_h": v.c1_dot_h, "genus": v.genus}


def _require_rank_one(rank: int) -> None:
    if rank != 1:
        raise UsageError(
            "stability certificates support rank 1 only: for rank >= 2 the "
            "required inequalities cannot hold at any sufficiently large twist"
        )


def _bound_row(rep: BoundReport) -> dict:
    return {
        "degree": rep.degree,
        "branch": rep.branch.value,
        "value": format_rational(rep.value),
        "core": format_rational(rep.core),
    }


def _cmd_bound(args) -> tuple[dict, int]:
    variety, spec = _resolve(args, ("rank", "degree"))
    form = BoundForm.LEMMA if args.form == "lemma" else BoundForm.SIMPLIFIED
    if spec is not None:
        rank = spec.rank
        degrees = [spec.degree]
        degree_echo: object = spec.degree
    else:
        if args.degree is None:
            raise UsageError("--degree is required")
        rank = 1 if args.rank is None else args.rank
        degrees = _parse_degrees(args.degree)
        degree_echo = args.degree if len(degrees) > 1 else degrees[0]
    reports = [sections_bound(variety, rank, d, form) for d in degrees]
    if len(reports) == 1:
        result = _bound_row(reports[0])
    else:
        result = {"results": [_bound_row(r) for r in reports]}
    report = {
        "command": "bound",
        "input": {
            "variety": _variety_dict(variety),
            "sheaf": {"rank": rank, "degree": degree_echo},
            "form": form.value,
        },
        "result": result,
    }
    return report, 0


def _condition_dict(cond) -> dict:
    out = {"status": cond.status.value}
    if cond.lhs is not None:
        out["lhs"] = format_rational(cond.lhs)
        out["rhs"] = format_rational(cond.rhs)
        out["threshold_degree"] = cond.threshold_degree
    return out


def _slope_str(value) -> str:
    if value == math.inf:
        return "+inf"
    return format_rational(value)


def _stability_dict(rep: StabilityReport) -> dict:
    out = {
        "verdict": rep.verdict.value,
        "condition1": _condition_dict(rep.condition1),
        "condition2": _condition_dict(rep.condition2),
        "syzygy": {
            "rank": rep.syzygy.rank,
            "degree": rep.syzygy.degree,
            "slope": _slope_str(rep.syzygy.slope),
        },
        "degree": rep.degree,
        "h0": rep.sections,
    }
    if rep.note is not None:
        out["note"] = rep.note
    return out


def _cmd_check(args) -> tuple[dict, int]:
    variety, spec = _resolve(args, ("rank", "degree", "h0", "hilbert", "regularity"))
    if spec is not None:
        rank, degree = spec.rank, spec.degree
        h0 = spec.sections
        hilbert, regularity = spec.hilbert, spec.regularity
    else:
        rank = 1 if args.rank is None else args.rank
        if args.degree is None:
            raise UsageError("--degree is required")
        degree = args.degree
        h0 = args.h0
        hilbert = None
        regularity = args.regularity
        if args.hilbert is not None:
            if regularity is None:
                raise UsageError("--hilbert needs --regularity")
            hilbert = tuple(_parse_hilbert(args.hilbert).coeffs)
    _require_rank_one(rank)

    sheaf_echo: dict = {"rank": rank, "degree": degree}
    if h0 is not None and hilbert is not None:
        raise UsageError("give a known h0 or the hilbert route, not both")
    if h0 is None:
        if hilbert is None:
            raise UsageError("give --h0, or --hilbert with --regularity and --twist")
        if args.twist is None:
            raise UsageError("the hilbert route needs --twist K to pick the section count")
        hp = HilbertPoly(Poly(hilbert), regularity)
        validate_hilbert(variety, degree, hp)
        if args.twist < regularity:
            raise UsageError(
                f"twist {args.twist} is below the stated regularity {regularity}; "
                "the polynomial is not certified to count sections there"
            )
        value = hp.poly(args.twist)
        if value.denominator != 1:
            raise InconsistentInputError(
                f"hilbert polynomial is not an integer at k = {args.twist}: {value}"
            )
        h0 = int(value)
        degree = degree + args.twist * variety.h_top
        sheaf_echo.update({
            "hilbert": list(hp.poly.to_strings()),
            "regularity": regularity,
            "twist": args.twist,
        })
    else:
        if getattr(args, "twist", None) is not None:
            raise UsageError("--twist only applies to the hilbert route")
        sheaf_echo["h0"] = h0

    rep = check_stability(variety, degree, h0)
    report = {
        "command": "check",
        "input": {"variety": _variety_dict(variety), "sheaf": sheaf_echo},
        "result": _stability_dict(rep),
    }
    return report, 0


def _certificate_dict(cert: TwistCertificate) -> dict:
    polys = {"F": cert.cond2.to_strings()}
    if cert.cond1 is not None:
        polys["G"] = cert.cond1.to_strings()
    scan = []
    for row in cert.scan:
        entry = {"k": row.k, "F": format_rational(row.cond2_value), "passed": row.passed}
        if row.cond1_value is not None:
            entry["G"] = format_rational(row.cond1_value)
        scan.append(entry)
    return {
        "k_min": cert.k_min,
        "cauchy_bound": format_rational(cert.cauchy),
        "scanned_range": list(cert.scanned_range),
        "k_pos": cert.k_pos,
        "regularity": cert.regularity,
        "condition_polys": polys,
        "scan": scan,
        "notes": list(cert.notes),
    }


def _cmd_twist(args) -> tuple[dict, int]:
    variety, spec = _resolve(args, ("rank", "degree", "hilbert", "regularity"))
    if spec is not None:
        rank, degree = spec.rank, spec.degree
        hilbert, regularity = spec.hilbert, spec.regularity
    else:
        rank = 1 if args.rank is None else args.rank
        if args.degree is None:
            raise UsageError("--degree is required")
        degree = args.degree
        if args.hilbert is None or args.regularity is None:
            raise UsageError("twist needs --hilbert and --regularity")
        hilbert = tuple(_parse_hilbert(args.hilbert).coeffs)
        regularity = args.regularity
    _require_rank_one(rank)
    if hilbert is None or regularity is None:
        raise UsageError("twist needs hilbert coefficients and a regularity bound")

    cert = minimal_stable_twist(variety, degree, HilbertPoly(Poly(hilbert), regularity))
    report = {
        "command": "twist",
        "input": {
            "variety": _variety_dict(variety),
            "sheaf": {
                "rank": rank,
                "degree": degree,
                "hilbert": [format_rational(c) for c in hilbert],
                "regularity": regularity,
            },
        },
        "result": _certificate_dict(cert),
    }
    return report, 0


def _cmd_catalog(args) -> tuple[dict, int]:
    if args.action == "show":
        if args.name is None:
            raise UsageError("catalog show needs a NAME")
        result: dict = {"entry": _variety_dict(catalog_lookup(args.name))}
    else:
        if args.name is not None:
            raise UsageError("catalog list takes no NAME")
        result = {"entries": [_variety_dict(v) for v in catalog_entries()]}
    return {"command": "catalog", "input": {"action": args.action}, "result": result}, 0


def _cmd_verify(args) -> tuple[dict, int]:
    checks = run_suite(grid=args.grid, seed=args.seed)
    rows = []
    for c in checks:
        row: dict = {"name": c.name, "passed": c.passed, "failed": c.failed,
                     "failures": list(c.failures)}
        if c.note is not None:
            row["note"] = c.note
        rows.append(row)
    total_failed = sum(c.failed for c in checks)
    report = {
        "command": "verify",
        "input": {"grid": args.grid, "seed": args.seed},
        "result": {
            "checks": rows,
            "total_passed": sum(c.passed for c in checks),
            "total_failed": total_failed,
        },
    }
    return report, 0 if total_failed == 0 else 2


_RATIONAL_VALUE_RE = re.compile(r"^-?\d+/\d+$")


def _with_approx(obj):
    if isinstance(obj, list):
        return [_with_approx(item) for item in obj]
    if not isinstance(obj, dict):
        return obj
    out = {}
    for key, value in obj.items():
        out[key] = _with_approx(value)
        if isinstance(value, str) and _RATIONAL_VALUE_RE.match(value):
            out[f"{key}_approx"] = float(Fraction(value))
    return out


def _flatten(obj, prefix="") -> list[tuple[str, str]]:
    rows = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            rows.extend(_flatten(obj[key], f"{prefix}{key}."))
    elif isinstance(obj, list):
        for i, item in enumerate(obj):
            rows.extend(_flatten(item, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], "true" if obj is True else "false" if obj is False else str(obj)))
    return rows


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_table(report: dict) -> str:
    rows = _flatten(report)
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def render_csv(report: dict) -> str:
    result = report.get("result", {})
    if isinstance(result, dict) and isinstance(result.get("results"), list):
        items = result["results"]
    elif isinstance(result, dict) and isinstance(result.get("entries"), list):
        items = result["entries"]
    elif isinstance(result, dict) and isinstance(result.get("checks"), list):
        items = [
            {**row, "failures": "; ".join(row["failures"])}
            for row in result["checks"]
        ]
    elif isinstance(result, dict) and isinstance(result.get("scan"), list):
        items = result["scan"]
    else:
        items = [dict(_flatten(result))]
    columns = sorted({key for item in items for key in item})
    sink = io.StringIO()
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(columns)
    for item in items:
        writer.writerow(["" if item.get(c) is None else item.get(c) for c in columns])
    return sink.getvalue()


_RENDERERS = {"json": render_json, "table": render_table, "csv": render_csv}

_HANDLERS = {
    "bound": _cmd_bound,
    "check": _cmd_check,
    "twist": _cmd_twist,
    "catalog": _cmd_catalog,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (bound, check, twist, catalog, verify)")
        report, code = _HANDLERS[args.command](args)
        if args.approx:
            report = _with_approx(report)
        sys.stdout.write(_RENDERERS[args.format](report))
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InconsistentInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main(sys.argv[1:]))
