"""Command-line front end.

    stablematroid catalog NAME
    stablematroid verify CLAIM [--m M] [--seed S] [--samples N]
    stablematroid verify --all
    stablematroid falsify FILE [--samples N] [--seed S]

Exit codes: 0 success or expected status, 1 claim mismatch, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from typing import Sequence

from .claims import REGISTRY, Options, run_claim
from .io import dumps, matroid_to_json, read_polynomial
from .matroid import MatroidError, UnknownName, catalog
from .poly import PolynomialError, stability_falsify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--samples", type=_positive, default=None)
    common.add_argument("--timing", action="store_true", help="add runtime_ms to reports (breaks byte-identity)")

    parser = _Parser(prog="stablematroid", description="Exact checks for stable polynomials and matroid supports.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", parents=[common], help="print a named matroid")
    p.add_argument("name")

    p = sub.add_parser("verify", parents=[common], help="run registered claims")
    p.add_argument("claim", nargs="?", choices=sorted(REGISTRY))
    p.add_argument("--all", action="store_true")
    p.add_argument("--m", type=_positive, default=None)

    p = sub.add_parser("falsify", parents=[common], help="search for a non-stability witness")
    p.add_argument("file")

    sub.add_parser("list", parents=[common], help="list claim ids")
    return parser


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(dumps(report))
        return
    if "claim" in report:
        flag = "ok" if report.get("matches") else "MISMATCH"
        sys.stdout.write(f"{report['claim']}: {report['status']} (expected {report['expected']}) {flag}\n")
    else:
        sys.stdout.write(dumps(report))


def _timed(fn, timing: bool):
    start = time.perf_counter()
    out = fn()
    if timing:
        out["runtime_ms"] = round((time.perf_counter() - start) * 1000)
    return out


def cmd_catalog(args) -> int:
    try:
        M = catalog(args.name)
    except UnknownName as exc:
        sys.stderr.write(f"{exc.args[0]}\n")
        return EXIT_USAGE
    data = matroid_to_json(M)
    data["name"] = args.name
    sys.stdout.write(dumps(data))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all == (args.claim is not None):
        sys.stderr.write("give exactly one of CLAIM or --all\n")
        return EXIT_USAGE
    opts = Options(seed=args.seed, m=args.m, samples=args.samples)
    ids = sorted(REGISTRY) if args.all else [args.claim]
    reports = [_timed(lambda cid=cid: run_claim(cid, opts), args.timing) for cid in ids]
    ok = all(r["matches"] for r in reports)
    if args.all:
        if args.json:
            sys.stdout.write(dumps({"all_match": ok, "reports": reports}))
        else:
            for r in reports:
                _emit(r, False)
    else:
        _emit(reports[0], args.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def _random_samples(rng: random.Random, n: int, dim: int) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(dim)) for _ in range(n)]


def cmd_falsify(args) -> int:
    try:
        P = read_polynomial(args.file)
    except OSError as exc:
        sys.stderr.write(f"cannot read {args.file}: {exc.strerror}\n")
        return EXIT_USAGE
    except PolynomialError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    P = P.compact()

    def run() -> dict:
        rng = random.Random(args.seed)
        samples = _random_samples(rng, args.samples or 0, len(P.vars))
        try:
            w = stability_falsify(P, samples)
        except PolynomialError as exc:
            return {"claim": "falsify", "status": "error", "error": str(exc)}
        report = {
            "claim": "falsify",
            "polynomial": P.to_text(),
            "vars": list(P.vars),
            "seed": args.seed,
            "extra_samples": len(samples),
        }
        if w is None:
            report.update(status="none-found", witness=None)
        else:
            report.update(status="falsified", witness=w.to_json(), reverified=w.verify(P))
        return report

    report = _timed(run, args.timing)
    if report["status"] == "error":
        sys.stderr.write(f"{report['error']}\n")
        return EXIT_USAGE
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(f"{report['status']}\n")
        if report["witness"] is not None:
            sys.stdout.write(dumps(report["witness"]))
    return EXIT_OK


def cmd_list(args) -> int:
    for cid in sorted(REGISTRY):
        c = REGISTRY[cid]
        sys.stdout.write(f"{cid}\t{c.expected}\t{c.summary}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"catalog": cmd_catalog, "verify": cmd_verify, "falsify": cmd_falsify, "list": cmd_list}[args.command]
    try:
        return handler(args)
    except MatroidError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
