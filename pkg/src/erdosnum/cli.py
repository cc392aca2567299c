"""Command line surface.

Subcommands::

    erdosnum erdos -D -3 --digits 28          E(D)
    erdosnum table shanks-schmid --digits 28  the 21 values C(X^2 + n Y^2)
    erdosnum search --below 1 --digits 28     all D with E(D) < r
    erdosnum vd -D -1984                      v(D) as an exact rational
    erdosnum genus --n 124 -D -1984           g(n, D)
    erdosnum population --form 1,0,1 --x 10   B_f(x)

Output is a human table by default; ``--format json`` and ``--format tsv``
emit machine-readable records validating against output_schema.json (shipped
next to this module).  Exit codes: 0 ok, 2 invalid input, 3 precision
certification failure, 4 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from importlib import resources

import mpmath

from .bigreal import BigReal, PrecisionError
from .constants import erdos_number, shanks_schmid_table
from .extremal import search_below
from .forms import QuadForm, ResourceLimitError, population_count
from .genus import as_discriminant, g_count, v_closed

__all__ = ["main", "load_schema"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_RESOURCE = 4

MAX_DIGITS = 100


def load_schema() -> dict:
    """The JSON schema the machine-readable output conforms to."""
    with resources.files("erdosnum").joinpath("output_schema.json").open() as fh:
        return json.load(fh)


def _err_str(x: BigReal) -> str:
    return mpmath.nstr(x.error_bound, 3)


def _record(command: str, inputs: dict, result: str, error_bound: str, t0: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "error_bound": error_bound,
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
    }


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def _check_digits(n: int) -> int:
    if not 1 <= n <= MAX_DIGITS:
        raise ValueError(f"--digits must be in [1, {MAX_DIGITS}]")
    return n


def _emit(records, fmt: str, out) -> None:
    if fmt == "json":
        payload = records if isinstance(records, list) else records
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
        return
    rows = records if isinstance(records, list) else [records]
    if fmt == "tsv":
        print("command\tinputs\tresult\terror_bound\telapsed_ms", file=out)
        for r in rows:
            inp = json.dumps(r["inputs"], sort_keys=True, separators=(",", ":"))
            print(
                f'{r["command"]}\t{inp}\t{r["result"]}\t{r["error_bound"]}\t{r["elapsed_ms"]}',
                file=out,
            )
        return
    for r in rows:  # human
        inp = ", ".join(f"{k}={v}" for k, v in sorted(r["inputs"].items()))
        print(f'{r["command"]}({inp}) = {r["result"]}   [err <= {r["error_bound"]}]', file=out)


def _cmd_erdos(args, out) -> list | dict:
    t0 = time.perf_counter()
    digits = _check_digits(args.digits)
    rep = erdos_number(args.D, digits)
    inputs = {
        "D": args.D,
        "digits": digits,
        "h": rep.inputs["h"],
        "w": rep.inputs["w"],
        "t": rep.inputs["t"],
        "v": _frac_str(rep.inputs["v"]),
    }
    return _record("erdos", inputs, rep.value.decimal(), _err_str(rep.value), t0)


def _cmd_table(args, out) -> list:
    digits = _check_digits(args.digits)
    t0 = time.perf_counter()
    records = []
    for n, rep in shanks_schmid_table(digits):
        records.append(
            _record(
                "table",
                {"table": args.name, "n": n, "D": rep.disc.D, "digits": digits},
                rep.value.decimal(),
                _err_str(rep.value),
                t0,
            )
        )
    return records


def _cmd_search(args, out) -> list:
    digits = _check_digits(args.digits)
    r = _parse_rational(args.below)
    t0 = time.perf_counter()
    result = search_below(r, digits)
    records = []
    for D, value in result.survivors:
        records.append(
            _record(
                "search",
                {"below": args.below, "D": D, "digits": digits, "cutoff": result.cutoff_D0},
                value.decimal(),
                _err_str(value),
                t0,
            )
        )
    return records

def _cmd_vd(args, out) -> dict:
    t0 = time.perf_counter()
    v = v_closed(as_discriminant(args.D))
    return _record("vd", {"D": args.D}, _frac_str(v), "0", t0)


def _cmd_genus(args, out) -> dict:
    t0 = time.perf_counter()
    if args.n < 1:
        raise ValueError("--n must be >= 1")
    g = g_count(args.n, as_discriminant(args.D))
    return _record("genus", {"D": args.D, "n": args.n}, str(g), "0", t0)


def _cmd_population(args, out) -> dict:
    t0 = time.perf_counter()
    parts = args.form.split(",")
    if len(parts) != 3:
        raise ValueError("--form wants three comma-separated integers a,b,c")
    form = QuadForm(*(int(p) for p in parts))
    if args.x < 1:
        raise ValueError("--x must be >= 1")
    count = population_count(form, args.x)
    return _record(
        "population", {"form": args.form, "x": args.x}, str(count), "0", t0
    )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="erdosnum",
        description="Erdos numbers of planar lattices and population constants "
        "of binary quadratic forms.",
    )
    ap.add_argument(
        "--format", choices=("human", "json", "tsv"), default="human",
        help="output format (default: human)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("erdos", help="E(D) to N certified digits")
    p.add_argument("-D", type=int, required=True, help="negative discriminant")
    p.add_argument("--digits", type=int, default=28)
    p.set_defaults(func=_cmd_erdos)

    p = sub.add_parser("table", help="classical C(X^2+nY^2) table")
    p.add_argument("name", choices=("shanks-schmid",))
    p.add_argument("--digits", type=int, default=28)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("search", help="all D with E(D) < r")
    p.add_argument("--below", required=True, help="threshold r as an exact rational")
    p.add_argument("--digits", type=int, default=28)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("vd", help="v(D) as an exact rational")
    p.add_argument("-D", type=int, required=True)
    p.set_defaults(func=_cmd_vd)

    p = sub.add_parser("genus", help="number of genera of discriminant D representing n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-D", type=int, required=True)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("population", help="count of distinct form values <= x")
    p.add_argument("--form", required=True, help="a,b,c")
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=_cmd_population)

    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return EXIT_INPUT if code else EXIT_OK
    try:
        records = args.func(args, out)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(records, args.format, out)
    return EXIT_OK
