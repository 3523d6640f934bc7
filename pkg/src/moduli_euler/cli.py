"""Command-line front end.

Exit codes: 0 success, 1 a check found a counterexample or disagreement,
2 usage error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from .closed_forms import IDENTITY_NAMES, check_identity, chi_orbifold, xi_closed
from .continuum import DEFAULT_GENUS_MAX, even_sector_expansion, odd_sector_expansion
from .errors import PreconditionError
from .ghj import oracle_check, xi_by_extraction
from .series import DEFAULT_ORDER

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3

ORDER_ENV = "MODULI_EULER_ORDER"
CONFIG_KEYS = {"order", "genus-max"}


class UsageError(Exception):
    pass


def format_rational(value: Fraction | int) -> str:
    """``-3/4``, ``5`` -- never a float."""
    return str(Fraction(value))


def _jsonable(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, (Fraction, int)):
        return format_rational(value) if isinstance(value, Fraction) else value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return " ".join(_csv_cell(v) for v in value)
    if value is None:
        return ""
    return str(value)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = payload["results"]
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row.get(key)) for key in header])
    return buf.getvalue()


# --- defaults ---------------------------------------------------------------


def read_config(path: str) -> dict[str, int]:
    """Parse a ``key=value`` file; blank lines and ``#`` comments are ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    out: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        try:
            out[key] = int(value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: {key} must be an integer") from None
    return out


def resolve_order(args: argparse.Namespace, auto: int) -> int:
    """--order, then the config file, then $MODULI_EULER_ORDER, then ``auto``."""
    if getattr(args, "order", None) is not None:
        return args.order
    if "order" in args.config_values:
        return args.config_values["order"]
    env = os.environ.get(ORDER_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ORDER_ENV} must be an integer, got {env!r}") from None
    return auto


def resolve_genus_max(args: argparse.Namespace) -> int:
    if args.genus_max is not None:
        return args.genus_max
    return args.config_values.get("genus-max", DEFAULT_GENUS_MAX)


# --- subcommands --------------------------------------------------------------

Result = tuple[dict, list[dict], "bool | None"]


def cmd_xi(args: argparse.Namespace) -> Result:
    q, g, s = args.q, args.g, args.s
    params = {"q": q, "g": g, "s": s, "method": args.method}
    rows = []
    if args.method in ("extract", "both"):
        order = resolve_order(args, g + s)
        params["order"] = order
        rec = xi_by_extraction(q, g, s, order)
        rows.append({"q": q, "g": g, "s": s, "path": rec.path, "value": rec.value})
    if args.method in ("closed", "both"):
        rec = xi_closed(q, g, s)
        rows.append({"q": q, "g": g, "s": s, "path": rec.path, "value": rec.value})
    passed = None
    if args.method == "both":
        passed = rows[0]["value"] == rows[1]["value"]
        for row in rows:
            row["agree"] = passed
    return params, rows, passed


def table_rows(q: int, g_max: int, s_max: int, order: int | None) -> list[dict]:
    rows = []
    for g in range(1, g_max + 1):
        for s in range(s_max + 1):
            if g + s < 2:
                continue
            extracted = xi_by_extraction(q, g, s, order).value
            closed = xi_closed(q, g, s).value
            rows.append(
                {"q": q, "g": g, "s": s, "xi_extract": extracted, "xi_closed": closed, "agree": extracted == closed}
            )
    rows.sort(key=lambda r: (r["q"], r["g"], r["s"]))
    return rows


def cmd_table(args: argparse.Namespace) -> Result:
    order = resolve_order(args, args.g_max + args.s_max)
    params = {"q": args.q, "g_max": args.g_max, "s_max": args.s_max, "order": order}
    rows = table_rows(args.q, args.g_max, args.s_max, order)
    return params, rows, all(r["agree"] for r in rows)


def cmd_chi(args: argparse.Namespace) -> Result:
    value = chi_orbifold(args.g, args.s)
    return {"g": args.g, "s": args.s}, [{"g": args.g, "s": args.s, "chi": value}], None


def cmd_verify(args: argparse.Namespace) -> Result:
    if args.q_max < 1 or args.g_max < 1:
        raise PreconditionError("--q-max and --g-max must be >= 1")
    report = check_identity(args.identity, range(1, args.q_max + 1), range(1, args.g_max + 1))
    params = {
        "identity": args.identity,
        "q_max": args.q_max,
        "g_max": args.g_max,
        "range": report.parameter_range,
        "checked": report.checked,
    }
    rows = [{**c.params, "lhs": c.lhs, "rhs": c.rhs} for c in report.counterexamples]
    return params, rows, report.passed


def cmd_continuum(args: argparse.Namespace) -> Result:
    genus_max = resolve_genus_max(args)
    build = even_sector_expansion if args.sector == "even" else odd_sector_expansion
    expansion = build(args.q, genus_max)
    params = {"q": args.q, "sector": args.sector, "genus_max": genus_max}
    rows = [
        {
            "mu_power": t.mu_power,
            "log_mu_power": t.log_mu_power,
            "mu_squared_log": t.mu_squared_log,
            "term": t.describe(),
            "coefficient": t.coefficient,
        }
        for t in expansion.terms
    ]
    return params, rows, None


def cmd_oracle(args: argparse.Namespace) -> Result:
    order = resolve_order(args, DEFAULT_ORDER)
    report = oracle_check(args.q, args.n, order)
    params = {"q": args.q, "n": args.n, "order": order}
    rows = [
        {"m": m, "formal": a, "concrete": b, "agree": a == b}
        for m, (a, b) in enumerate(zip(report.formal, report.concrete), start=1)
    ]
    return params, rows, report.passed


# --- parser -------------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--config", metavar="PATH", help="key=value defaults (order, genus-max)")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    parser = argparse.ArgumentParser(
        prog="moduli-euler",
        description="Exact parametrized Euler characteristics of the GHJ matrix model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xi", parents=[common], help="one xi^s_g(1/q) value")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--g", type=_positive, required=True)
    p.add_argument("--s", type=_nonneg, required=True)
    p.add_argument("--method", choices=("extract", "closed", "both"), default="both")
    p.add_argument("--order", type=_positive)
    p.set_defaults(handler=cmd_xi)

    p = sub.add_parser("table", parents=[common], help="grid of xi values by both methods")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--g-max", type=_positive, required=True)
    p.add_argument("--s-max", type=_nonneg, required=True)
    p.add_argument("--order", type=_positive)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("chi", parents=[common], help="orbifold Euler characteristic of M_g^s")
    p.add_argument("--g", type=_positive, required=True)
    p.add_argument("--s", type=_nonneg, required=True)
    p.set_defaults(handler=cmd_chi)

    p = sub.add_parser("verify", parents=[common], help="exhaustive identity sweep")
    p.add_argument("--identity", choices=IDENTITY_NAMES, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("continuum", parents=[common], help="double-scaling free energy terms")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--sector", choices=("even", "odd"), required=True)
    p.add_argument("--genus-max", type=_positive)
    p.set_defaults(handler=cmd_continuum)

    p = sub.add_parser("oracle", parents=[common], help="formal-N vs concrete-N free energy")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--order", type=_positive)
    p.set_defaults(handler=cmd_oracle)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    started = time.perf_counter()
    handler: Callable[[argparse.Namespace], Result] = args.handler
    try:
        args.config_values = read_config(args.config) if args.config else {}
        params, rows, passed = handler(args)
    except UsageError as exc:
        print(f"moduli-euler: error: {exc}", file=stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"moduli-euler: precondition violated: {exc}", file=stderr)
        return EXIT_PRECONDITION
    elapsed = 0 if args.no_timing else int((time.perf_counter() - started) * 1000)

    payload: dict[str, Any] = {"command": args.command, "params": _jsonable(params), "results": _jsonable(rows)}
    if passed is not None:
        payload["pass"] = passed
    payload["elapsed_ms"] = elapsed
    stdout.write(render(payload, args.format))
    if passed is False:
        print(f"moduli-euler: {args.command}: check failed", file=stderr)
        return EXIT_FAILED_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
