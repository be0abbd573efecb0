"""Batch command-line front end.

Subcommands:
    expand   write a catalog object's exact expansion (series text or JSON)
    hecke    apply T(n) to an object
    faber    print the degree-n Faber polynomial of an object
    permorb  the S_n permutation-orbifold partition function of an object
    verify   run a verification suite and emit a machine-readable report

Exit codes: 0 success / all checks pass, 1 at least one check failed,
2 usage or precondition error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import catalog as cat
from .errors import CatalogError, QheckeError
from .hecke import hecke_classical
from .orbifold import perm_orbifold
from .series import FracSeries, faber
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _load_extra_catalog(directory: str | None) -> dict[str, FracSeries]:
    if not directory:
        return {}
    extra: dict[str, FracSeries] = {}
    root = Path(directory)
    if not root.is_dir():
        raise CatalogError(f"--catalog {directory} is not a directory")
    for path in sorted(root.glob("*.series")):
        parsed = cat.load_series(path)
        if parsed.group is None:
            extra[parsed.label] = parsed.series
    return extra


def _resolve(label: str, order: int, extra: dict[str, FracSeries]) -> FracSeries:
    if label in extra:
        return extra[label]
    obj = cat.catalog_get(label, order)
    if not isinstance(obj, FracSeries):
        raise CatalogError(f"{label!r} is a family; expand its sectors individually")
    return obj


def _emit_series(f: FracSeries, label: str, fmt: str) -> str:
    if fmt == "json":
        import math as _math

        n = 1
        for _, c in f.items():
            n = n * c.order // _math.gcd(n, c.order)
        return json.dumps(
            {
                "object": label,
                "weight": f.weight,
                "grading": f.grading,
                "cyclotomic": n,
                "coefficients": [[num, c.render_at(n)] for num, c in f.items()],
            },
            indent=2,
            sort_keys=True,
        ) + "\n"
    return cat.render_series(f, label)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qhecke",
        description="exact q-series engine: Hecke operators, Faber polynomials, orbifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=10):
        p.add_argument("--object", required=True, help="catalog label, e.g. J, 2A, 2B, Leech")
        p.add_argument("--order", type=int, default=order_default, help="truncation order (inclusive)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--catalog", help="directory of extra .series files")

    p_expand = sub.add_parser("expand", help="expand a catalog object")
    common(p_expand)

    p_hecke = sub.add_parser("hecke", help="apply the Hecke operator T(n)")
    common(p_hecke)
    p_hecke.add_argument("--n", type=int, required=True)

    p_faber = sub.add_parser("faber", help="Faber polynomial of an object")
    common(p_faber)
    p_faber.add_argument("--n", type=int, required=True)

    p_perm = sub.add_parser("permorb", help="S_n permutation-orbifold partition function")
    common(p_perm)
    p_perm.add_argument("--n", type=int, required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "--suite", required=True, choices=sorted(SUITES) + ["all"]
    )
    p_verify.add_argument("--report", help="write the JSON report to this path")
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument("--p-order", type=int, default=None, dest="p_order")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        extra = _load_extra_catalog(args.catalog)
        if args.command == "expand":
            f = _resolve(args.object, args.order, extra)
            sys.stdout.write(_emit_series(f, args.object, args.format))
            return EXIT_OK
        if args.command == "hecke":
            src = _resolve(args.object, args.order * args.n, extra)
            result = hecke_classical(src, args.n)
            sys.stdout.write(
                _emit_series(result, f"T{args.n}({args.object})", args.format)
            )
            return EXIT_OK
        if args.command == "faber":
            src = _resolve(args.object, max(args.order, args.n + 1), extra)
            poly = faber(src, args.n)
            if args.format == "json":
                payload = {
                    "object": args.object,
                    "degree": poly.degree,
                    "coefficients": [str(c) for c in poly.coeffs],
                }
                sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
            else:
                sys.stdout.write(f"P_{args.n}(x) = {poly}\n")
            return EXIT_OK
        if args.command == "permorb":
            src = _resolve(args.object, args.order * args.n, extra)
            result = perm_orbifold(src, args.n)
            sys.stdout.write(
                _emit_series(result, f"S{args.n}-orb({args.object})", args.format)
            )
            return EXIT_OK
        parser.error(f"unknown command {args.command}")
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QheckeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


def _cmd_verify(args) -> int:
    try:
        rep = run_suite(args.suite, order=args.order, p_order=args.p_order)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.timestamp = datetime.now(timezone.utc).isoformat()
    payload = rep.to_json()
    if args.report:
        try:
            Path(args.report).write_text(payload, encoding="utf-8")
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return EXIT_IO
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        for check in rep.checks:
            line = f"[{check.status:>12}] {check.id}: {check.description}"
            if check.conclusive_range:
                line += f" ({check.conclusive_range})"
            if check.max_numeric_error is not None:
                line += f" [err {check.max_numeric_error:.2e}]"
            print(line)
            if check.detail:
                print(f"               {check.detail}")
        counts = rep.as_dict()["counts"]
        print(
            f"suite {rep.suite}: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['inconclusive']} inconclusive"
        )
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
