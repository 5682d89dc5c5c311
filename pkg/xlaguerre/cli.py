"""Command-line front-end.

    xlaguerre gen --family III --m 1 --n 0..5
    xlaguerre verify --suite identities --m 1..3 --k 1..8
    xlaguerre norms --family III --alpha -0.5 --m 1 --nmax 6
    xlaguerre roots --m 2 --k 6 --alpha -0.25
    xlaguerre spectral --op T_III --m 1 --alpha -0.5
    xlaguerre schema

Reports go to stdout (or --out); logs go to stderr. Exit codes: 0 pass, 1 a check
failed, 2 bad usage or parameters outside the admissible range.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from collections.abc import Sequence
from typing import Any

from .config import settings
from .core import AlphaPoly, XPoly, format_alpha, format_xpoly, parse_alpha, xpoly_to_json
from .errors import DegreeNotAdmissible, DomainError, UsageError, XLaguerreError
from .exceptional import DegreeSet, Family, exceptional_polynomial
from .metrics import write_metrics
from .numerics import asymptotics_probe, interlacing_check, type1_root_report, type2_root_report
from .schemas import CheckStatus, Report, shipped_schema
from .spectral import OperatorTag, spectral_report
from .suites import SUITES, SuiteParams, run_suite

logger = logging.getLogger("xlaguerre.cli")

FORMATS = ("text", "json", "csv")
_COLORS = {CheckStatus.PASS: "\033[32m", CheckStatus.FAIL: "\033[31m", CheckStatus.SKIP: "\033[33m"}
_RESET = "\033[0m"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def parse_int_range(text: str) -> list[int]:
    """``3`` or ``lo..hi`` (inclusive)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"expected an integer or lo..hi range, got {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _parse_family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _color_enabled(stream) -> bool:
    return not os.environ.get("NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _gen_degrees(family: Family, m: int, ns: list[int]) -> list[int]:
    degrees = DegreeSet(family, m)
    if len(ns) == 1:
        degrees.check(ns[0])
        return ns
    kept = [n for n in ns if degrees.admits(n)]
    if not kept:
        raise DegreeNotAdmissible(family.label, m, ns[0])
    return kept


def gen_table(family: Family, m: int, ns: list[int]) -> list[tuple[int, XPoly]]:
    return [(n, exceptional_polynomial(family, m, n)) for n in _gen_degrees(family, m, ns)]


def render_gen(family: Family, m: int, table: list[tuple[int, XPoly]], fmt: str, factored: bool = True) -> str:
    if fmt == "json":
        payload = {
            "family": family.value,
            "m": m,
            "polynomials": [{"n": n, "text": format_xpoly(p, factored), "coeffs": xpoly_to_json(p)} for n, p in table],
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "m", "n", "power", "coefficient"])
        for n, p in table:
            for k, c in enumerate(p.coeffs):
                if not c.is_zero:
                    writer.writerow([family.value, m, n, k, format_alpha(c, factored=False)])
        return buf.getvalue()
    if len(table) == 1:
        return format_xpoly(table[0][1], factored) + "\n"
    return "".join(f"n={n}: {format_xpoly(p, factored)}\n" for n, p in table)


def read_gen_csv(text: str) -> dict[tuple[str, int, int], XPoly]:
    """Inverse of the csv form of `gen`: {(family, m, n): polynomial}."""
    rows: dict[tuple[str, int, int], dict[int, Any]] = {}
    for row in csv.DictReader(io.StringIO(text)):
        key = (row["family"], int(row["m"]), int(row["n"]))
        rows.setdefault(key, {})[int(row["power"])] = parse_alpha(row["coefficient"])
    out = {}
    for key, coeffs in rows.items():
        top = max(coeffs)
        out[key] = XPoly(tuple(coeffs.get(k, AlphaPoly()) for k in range(top + 1)))
    return out


def cmd_gen(args: argparse.Namespace) -> tuple[str, int]:
    family = _parse_family(args.family)
    table = gen_table(family, args.m, parse_int_range(args.n))
    return render_gen(family, args.m, table, args.format, factored=not args.expanded), 0


# ---------------------------------------------------------------------------
# verify / norms
# ---------------------------------------------------------------------------


def _suite_params(args: argparse.Namespace) -> SuiteParams:
    families = (_parse_family(args.family),) if args.family else SuiteParams().families
    kwargs: dict[str, Any] = {"families": families}
    if args.m:
        kwargs["m_values"] = tuple(parse_int_range(args.m))
    if args.k:
        kwargs["k_values"] = tuple(parse_int_range(args.k))
    if args.alpha:
        kwargs["alphas"] = tuple(parse_floats(args.alpha))
    if args.nmax is not None:
        kwargs["n_max"] = args.nmax
    return SuiteParams(**kwargs)


def render_report(report: Report, fmt: str, color: bool = False) -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "status", "details"])
        for r in report.records:
            writer.writerow([r.name, r.status.value, json.dumps(r.details, sort_keys=True, default=str)])
        return buf.getvalue()
    lines = []
    for r in report.records:
        label = r.status.value.upper()
        if color:
            label = f"{_COLORS[r.status]}{label}{_RESET}"
        lines.append(f"{label:<4} {r.name}")
    counts = report.counts()
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace, color: bool = False) -> tuple[str, int]:
    suite = getattr(args, "suite", "norms")
    params = _suite_params(args)
    report = run_suite(suite, params, max_workers=args.jobs, command=args.command)
    report.parameters.update({k: v for k, v in vars(args).items() if k in ("family", "m", "k", "alpha", "nmax")})
    if args.metrics_out:
        write_metrics(args.metrics_out)
    return render_report(report, args.format, color), report.exit_code()


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def _root_rows(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "m", "n", "alpha", "sign", "root"])
    for rep in reports:
        for sign in ("positive", "negative"):
            for x in rep[f"{sign}_roots"]:
                writer.writerow([rep["family"], rep["m"], rep["n"], rep["alpha"], sign, repr(x)])
    return buf.getvalue()


def cmd_roots(args: argparse.Namespace) -> tuple[str, int]:
    family = _parse_family(args.family)
    a = args.alpha
    reports = []
    for k in parse_int_range(args.k):
        if family is Family.TYPE_III:
            rep = interlacing_check(args.m, k, a)
        elif family is Family.TYPE_I:
            rep = type1_root_report(args.m, k, a)
        elif family is Family.TYPE_II:
            rep = type2_root_report(args.m, args.m + k, a)
        else:
            raise UsageError("roots supports families I, II and III")
        reports.append(rep)
    payload: dict[str, Any] = {"reports": [r.as_dict() for r in reports]}
    ok = all(r.verdict for r in reports)
    if args.asymptotics:
        table = asymptotics_probe(family, args.m, a, parse_int_range_list(args.asymptotics))
        payload["asymptotics"] = {"k": table.k_values, "columns": table.columns, "trends": table.trends}
        ok = ok and all(table.trends.values())
    if args.format == "json":
        text = json.dumps(payload if args.asymptotics or len(reports) > 1 else payload["reports"][0], indent=2) + "\n"
    elif args.format == "csv":
        text = _root_rows(payload["reports"])
    else:
        lines = []
        for rep in payload["reports"]:
            lines.append(f"Type {rep['family']} m={rep['m']} n={rep['n']} a={rep['alpha']}: {rep['verdict']}")
            lines.append("  positive: " + ", ".join(f"{x:.10g}" for x in rep["positive_roots"]))
            lines.append("  negative: " + ", ".join(f"{x:.10g}" for x in rep["negative_roots"]))
        if args.asymptotics:
            for name, values in payload["asymptotics"]["columns"].items():
                lines.append(f"  {name}: " + ", ".join(f"{v:.4g}" for v in values))
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


def parse_int_range_list(text: str) -> list[int]:
    """Comma-separated integers or ranges, e.g. ``10,20,50..52``."""
    out: list[int] = []
    for part in text.split(","):
        if part.strip():
            out.extend(parse_int_range(part))
    return out


# ---------------------------------------------------------------------------
# spectral / schema
# ---------------------------------------------------------------------------


def _format_value(v: float) -> str:
    return f"{v:g}"


def cmd_spectral(args: argparse.Namespace) -> tuple[str, int]:
    try:
        op = OperatorTag.parse(args.op)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = spectral_report(op, args.m, args.alpha, args.cutoff)
    data = report.as_dict()
    if args.format == "json":
        return json.dumps(data, indent=2) + "\n", 0
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["operator", "m", "alpha", "n", "eigenvalue"])
        for item in data["spectrum"]:
            writer.writerow([data["operator"], data["m"], data["alpha"], item["n"], _format_value(item["eigenvalue"])])
        return buf.getvalue(), 0
    spectrum = ", ".join(f"{_format_value(item['eigenvalue'])} (n={item['n']})" for item in data["spectrum"])
    lines = [
        f"operator: {data['operator']} (m={data['m']}, a={_format_value(data['alpha'])})",
        f"endpoint 0: {data['zero']}",
        f"endpoint inf: {data['infinity']}",
        f"deficiency index: {data['deficiency']}",
        f"indicial roots: {', '.join(_format_value(r) for r in data['indicial'])}",
        f"boundary condition: {data['boundary_condition']}",
        f"spectrum: {spectrum}, ...",
    ]
    return "\n".join(lines) + "\n", 0


def cmd_schema(args: argparse.Namespace) -> tuple[str, int]:
    return json.dumps(shipped_schema(), indent=2) + "\n", 0


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="Output format (default: text)")
    common.add_argument("--out", default=None, help="Write output to PATH instead of stdout")
    common.add_argument(
        "--log-level",
        choices=("debug", "info", "warning", "error"),
        default=None,
        help="Log level on stderr (default: XLAGUERRE_LOG_LEVEL or warning)",
    )

    parser = _Parser(prog="xlaguerre", description="Exceptional X_m-Laguerre polynomials: tables and verification")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="Print exceptional polynomials")
    gen.add_argument("--family", required=True, help="I, II, III or classical")
    gen.add_argument("--m", type=int, default=0)
    gen.add_argument("--n", required=True, help="Degree or lo..hi range")
    gen.add_argument("--expanded", action="store_true", help="Do not factor the alpha coefficients")

    suite_args = _Parser(add_help=False)
    suite_args.add_argument("--family", default=None, help="Restrict to one family (default: I, II and III)")
    suite_args.add_argument("--m", default=None, help="m or lo..hi")
    suite_args.add_argument(
        "--k", default=None, help="k or lo..hi (default 1..20; identities stop at 10, eigen residuals at 12)"
    )
    suite_args.add_argument("--alpha", default=None, help="Comma-separated alpha values")
    suite_args.add_argument("--nmax", type=int, default=None, help="Largest degree for norm and Gram checks (default m+8)")
    suite_args.add_argument("--jobs", type=int, default=None, help="Worker threads (default: XLAGUERRE_MAX_WORKERS)")
    suite_args.add_argument("--metrics-out", default=None, help="Write Prometheus metrics to PATH")

    verify = sub.add_parser("verify", parents=[common, suite_args], help="Run verification suites")
    verify.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    sub.add_parser("norms", parents=[common, suite_args], help="Alias of verify --suite norms")

    roots = sub.add_parser("roots", parents=[common], help="Root locations and interlacing")
    roots.add_argument("--family", default="III")
    roots.add_argument("--m", type=int, required=True)
    roots.add_argument("--k", required=True, help="k or lo..hi")
    roots.add_argument("--alpha", type=float, required=True)
    roots.add_argument("--asymptotics", default=None, help="k values for the asymptotics table, e.g. 10,25,50")

    spec = sub.add_parser("spectral", parents=[common], help="Endpoint classification and spectrum")
    spec.add_argument("--op", required=True, help="T_I, T_II, T_III or S_I")
    spec.add_argument("--m", type=int, required=True)
    spec.add_argument("--alpha", type=float, required=True)
    spec.add_argument("--cutoff", type=int, default=5)

    sub.add_parser("schema", parents=[common], help="Print the JSON schema of verify reports")
    return parser


def _configure_logging(level: str | None) -> None:
    name = (level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return
    sys.stdout.write(text)
    sys.stdout.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _configure_logging(args.log_level)
    color = args.out is None and args.format == "text" and _color_enabled(sys.stdout)
    try:
        if args.command == "gen":
            text, code = cmd_gen(args)
        elif args.command in ("verify", "norms"):
            text, code = cmd_verify(args, color)
        elif args.command == "roots":
            text, code = cmd_roots(args)
        elif args.command == "spectral":
            text, code = cmd_spectral(args)
        else:
            text, code = cmd_schema(args)
    except (UsageError, DegreeNotAdmissible, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (XLaguerreError, ValueError) as e:
        logger.error("command_failed", extra={"command": args.command, "error": str(e)})
        print(f"error: {e}", file=sys.stderr)
        return 2 if isinstance(e, ValueError) else 1
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
