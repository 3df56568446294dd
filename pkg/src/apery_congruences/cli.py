"""Command line front end.

Exit codes: 0 all checks passed, 1 some congruence failed, 2 usage error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from .exactnum import ConsistencyError
from .polyreduce import reduce_odd_power
from .sequences import apery_upto
from .verify import ODD_M, SUITES, BatchSummary, Ranges, run_batch

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("apery_congruences")


def parse_range(text: str) -> tuple[int, int]:
    """``lo..hi`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected lo..hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_m_list(text: str) -> tuple[int, ...]:
    """Comma separated integers and ``lo..hi`` spans, e.g. ``1,3,5..9``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = parse_range(part)
            out.extend(range(lo, hi + 1))
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad m value {part!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty m list")
    if any(m < 1 for m in out):
        raise argparse.ArgumentTypeError("m values must be positive")
    return tuple(out)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apery-congruences", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_opts(p: argparse.ArgumentParser, default: str) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"), default=default)
        p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")

    p = sub.add_parser("apery", help="print Apery numbers A_n")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--max", type=int, dest="max_index", help="print A_0..A_MAX")
    g.add_argument("--n", type=parse_range, help="index range lo..hi")
    output_opts(p, "text")

    p = sub.add_parser("cm", help="tabulate the constants c_m for odd m")
    p.add_argument("--m", type=parse_m_list, default=ODD_M, help="odd m values, e.g. 1,3,5..21")
    output_opts(p, "csv")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    p.add_argument("--primes", type=parse_range, default=Ranges.primes, help="prime range lo..hi")
    p.add_argument("--n", type=parse_range, default=Ranges.n, help="index range lo..hi")
    p.add_argument("--m", type=parse_m_list, default=None, help="m values; suite default if omitted")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    output_opts(p, "json")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _dumps(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_apery(args: argparse.Namespace) -> int:
    if args.n is not None:
        lo, hi = args.n
    elif args.max_index is not None:
        lo, hi = 0, args.max_index
    else:
        log.error("apery needs --max or --n")
        return EXIT_USAGE
    if lo < 0 or hi < lo:
        log.error("invalid index range %d..%d", lo, hi)
        return EXIT_USAGE
    table = apery_upto(hi)
    rows = [(n, table[n]) for n in range(lo, hi + 1)]
    if args.format == "json":
        text = _dumps([{"n": str(n), "value": str(a)} for n, a in rows])
    elif args.format == "csv":
        text = _csv([("n", "value"), *rows])
    else:
        text = "".join(f"{n} {a}\n" for n, a in rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_cm(args: argparse.Namespace) -> int:
    even = [m for m in args.m if m % 2 == 0]
    if even:
        log.error("c_m is only defined for odd m; got %s", ",".join(map(str, even)))
        return EXIT_USAGE
    rows = []
    for m in args.m:
        c = reduce_odd_power(m).c_m
        rows.append((m, c.numerator, c.denominator))
    if args.format == "json":
        text = _dumps([{"m": str(m), "numerator": str(a), "denominator": str(b)} for m, a, b in rows])
    elif args.format == "csv":
        text = _csv([("m", "numerator", "denominator"), *rows])
    else:
        text = "".join(f"c_{m} = {a}/{b}\n" for m, a, b in rows)
    _emit(text, args.out)
    return EXIT_OK


def render_batch(suite: str, batch: BatchSummary, fmt: str) -> str:
    if fmt == "json":
        return _dumps(
            {
                "suite": suite,
                "summary": {
                    "total": batch.total,
                    "failures": len(batch.failures),
                    "internal_errors": len(batch.internal_errors),
                },
                "reports": [r.to_dict() for r in batch.reports],
            }
        )
    if fmt == "csv":
        rows: list[Sequence[object]] = [("check", "params", "modulus", "lhs", "rhs", "diff_valuation", "pass")]
        for r in batch.reports:
            d = r.to_dict()
            params = ";".join(f"{k}={v}" for k, v in d["params"].items())
            rows.append((d["check"], params, d["modulus"], d["lhs"], d["rhs"], d["diff_valuation"], str(d["pass"]).lower()))
        return _csv(rows)
    lines = []
    for r in batch.reports:
        d = r.to_dict()
        params = " ".join(f"{k}={v}" for k, v in d["params"].items())
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.check} {params} mod={d['modulus']} lhs={d['lhs']} rhs={d['rhs']} v={d['diff_valuation']}"
        if r.error:
            line += f" error={r.error}"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        log.error("unknown suite %r; choose from %s", args.suite, ", ".join(sorted(SUITES)))
        return EXIT_USAGE
    if args.suite == "thm1" and args.m is not None and any(m % 2 == 0 for m in args.m):
        log.error("thm1 needs odd m")
        return EXIT_USAGE
    ranges = Ranges(primes=args.primes, n=args.n, m=args.m)
    batch = run_batch(args.suite, ranges, jobs=args.jobs)
    _emit(render_batch(args.suite, batch, args.format), args.out)
    log.info(
        "%s: %d checks, %d failures, %d internal errors in %.2fs",
        args.suite, batch.total, len(batch.failures), len(batch.internal_errors), batch.wall_time,
    )
    if batch.internal_errors:
        return EXIT_INTERNAL
    return EXIT_FAIL if batch.failures else EXIT_OK


COMMANDS = {"apery": cmd_apery, "cm": cmd_cm, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except ConsistencyError as exc:
        log.error("internal consistency failure: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
