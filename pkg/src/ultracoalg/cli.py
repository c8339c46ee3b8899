"""Command-line batch runner: ``ultracoalg run --suite coalg,comod ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import ConfigInvalid, UltracoalgError
from .suites import INJECTIONS, SUITES, RunConfig, run

SCHEMA = 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ultracoalg",
                                 description="Verify p-adic coalgebra, comodule and duality checks at truncation.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command")
    r = sub.add_parser("run", help="run verification suites and emit a JSON report")
    r.add_argument("--prime", type=int, default=5)
    r.add_argument("--precision", type=int, default=30, help="working relative precision")
    r.add_argument("--tol", type=int, default=20, help="tolerance exponent: residuals must be below p^-tol")
    r.add_argument("--rank", type=int, default=8, help="truncation rank of the Mahler models")
    r.add_argument("--window", type=int, default=4, help="number of levels of the inductive systems")
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--suite", default="all", help=f"comma-separated subset of {','.join(SUITES)}, or 'all'")
    r.add_argument("--inject", default="none",
                   help=f"defect to inject: {', '.join(INJECTIONS)} (level-taking ones as name:N)")
    r.add_argument("--out", default="-", help="report path ('-' for stdout)")
    return ap


def parse_suites(text: str) -> tuple:
    if text.strip() == "all":
        return SUITES
    return tuple(s.strip() for s in text.split(",") if s.strip())


def config_from_args(args) -> RunConfig:
    return RunConfig(prime=args.prime, precision=args.precision, tol=args.tol, rank=args.rank,
                     window=args.window, seed=args.seed, suites=parse_suites(args.suite),
                     inject=args.inject).validate()


def report(cfg: RunConfig, records: list) -> dict:
    counted = [r for r in records if not r.injected]
    return {
        "schema": SCHEMA,
        "version": __version__,
        "config": cfg.to_dict(),
        "summary": {
            "records": len(records),
            "ok": sum(r.ok for r in counted),
            "not_ok": sum(not r.ok for r in counted),
            "tail_dominated": sum(r.status == "tail-dominated" for r in records),
            "injected": sum(r.injected for r in records),
            "injected_failed": sum(r.injected and r.status == "fail" for r in records),
        },
        "records": [r.to_dict() for r in records],
    }


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command != "run":
        ap.print_help(sys.stderr)
        return 2
    try:
        cfg = config_from_args(args)
        records = run(cfg)
    except ConfigInvalid as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except UltracoalgError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    doc = report(cfg, records)
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if doc["summary"]["not_ok"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
