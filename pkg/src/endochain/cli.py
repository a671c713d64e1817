"""Command-line interface: ``endochain {table,derivations,verify,closure}``.

Exit status is 0 on success, 1 when a verified claim fails and 2 on usage
errors (bad specs, unknown claims, n above ``CHAIN_SEMIRING_MAX_N``).
"""
from __future__ import annotations

import argparse
import os
import sys

from .chain_core import ChainError
from .derivations import analyze_derivation_set, delta, differential_closure
from .render import (
    BadFormat,
    render_closure,
    render_derivations,
    render_results,
    render_table,
)
from .specs import parse_derivation, parse_n_range, parse_string, parse_subset
from .strings import StringType2, SubfamilyKind, subfamily
from .verifier import (
    CLAIM_IDS,
    DEFAULT_MAX_N,
    BadParams,
    UnknownClaim,
    run_suite,
    suite_passed,
)

FORMATS = ("ascii", "csv", "json", "dot")
ALLOWED = {
    "table": FORMATS,
    "derivations": FORMATS,
    "verify": ("ascii", "json"),
    "closure": ("ascii", "json", "dot"),
}


class UsageError(Exception):
    pass


def max_n() -> int:
    raw = os.environ.get("CHAIN_SEMIRING_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CHAIN_SEMIRING_MAX_N must be an integer, got {raw!r}") from None


def _check_n(n: int) -> int:
    cap = max_n()
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")
    if n > cap:
        raise UsageError(f"n = {n} exceeds the ceiling {cap} (set CHAIN_SEMIRING_MAX_N)")
    return n


def _string(args):
    if args.string is None:
        raise UsageError("--string is required")
    return parse_string(_check_n(args.n), args.string)


def cmd_table(args) -> tuple[str, int]:
    string = _string(args)
    return render_table(string, args.op, args.format), 0


def cmd_derivations(args) -> tuple[str, int]:
    string = _string(args)
    if not isinstance(string, StringType2):
        raise UsageError("derivation sets are tabulated for two-anchor strings only")
    maps = [delta(x, string.elements, label=f"delta(a_{k})") for k, x in enumerate(string.elements)]
    report = analyze_derivation_set(maps)
    return render_derivations(report, string, args.format), 0


def cmd_closure(args) -> tuple[str, int]:
    string = _string(args)
    if args.over is not None:
        R = parse_subset(args.over, string)
    elif args.derivation.strip() == "D" and isinstance(string, StringType2):
        R = subfamily(string, SubfamilyKind.DS).carrier
    else:
        R = string.elements
    I = parse_subset(args.ideal, string)
    d = parse_derivation(args.derivation, string, R)
    closure = differential_closure(R, I, d)
    return render_closure(string, R, I, d, closure, args.format), 0


def cmd_verify(args) -> tuple[str, int]:
    n_range = parse_n_range(args.n)
    cap = max_n()
    if len(n_range) and (n_range.start < 2 or n_range[-1] > cap):
        raise UsageError(f"n range must lie within 2..{cap}")
    if args.claims.strip() == "all":
        claims = CLAIM_IDS
    else:
        claims = tuple(c.strip() for c in args.claims.split(",") if c.strip())
    results = run_suite(n_range, claims, max_n=cap)
    return render_results(results, args.format), 0 if suite_passed(results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endochain",
        description="Endomorphism semirings of finite chains, their strings and derivations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_type=int, n_help="chain size"):
        p.add_argument("--n", type=n_type, required=True, help=n_help)
        p.add_argument("--string", help='anchors, e.g. "2,3", "0,1,2,3" or "n-2,n-1"')
        p.add_argument("--format", choices=FORMATS, default="ascii")
        p.add_argument("--out", help="write to FILE instead of stdout")

    p = sub.add_parser("table", help="addition or multiplication table of a string")
    common(p)
    p.add_argument("--op", choices=("add", "mul"), default="mul")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("derivations", help="the Jordan maps of a two-anchor string")
    common(p)
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("verify", help="run registered claim checks")
    common(p, str, 'a size or an inclusive range such as "2..6"')
    p.add_argument("--claims", default="all", help='"all" or a comma list such as "3.2,7.4"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("closure", help="elements driven into an ideal by a derivation")
    common(p)
    p.add_argument("--ideal", required=True, help='"I:j", "CO", a named subfamily or "{0,n}"')
    p.add_argument("--derivation", required=True, help='"D", "delta:k" or "delta:k,l"')
    p.add_argument("--over", help="domain of the derivation (default: DS for D, else the string)")
    p.set_defaults(func=cmd_closure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format not in ALLOWED[args.command]:
        parser.error(f"{args.command} does not support --format {args.format}")
    try:
        text, code = args.func(args)
    except UnknownClaim as exc:
        print(f"error: unknown claim {exc.args[0]}", file=sys.stderr)
        return 2
    except (UsageError, BadParams, BadFormat, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
