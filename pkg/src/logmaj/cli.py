"""Command-line entry point.

Exit codes: 0 when every evaluated check holds, 1 when a violation (or a
failed campaign trial) is recorded, 2 on usage, parse, config or precondition
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from ._backend import BACKEND
from .errors import ConfigError, LogMajError, ParseError, PreconditionFailed
from .harness import CampaignConfig, list_checks, run_campaign, verify
from .linalg import load_matrix

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="logmaj", description="Verify eigenvalue and determinant inequalities numerically.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list registered checks")

    c = sub.add_parser("check", help="run one check over random instances")
    c.add_argument("--name", required=True)
    c.add_argument("--n", type=int, required=True, help="matrix dimension")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=None)
    c.add_argument("--delta", type=float, default=None, help="contraction margin")
    f = c.add_mutually_exclusive_group()
    f.add_argument("--complex", dest="field", action="store_const", const="complex")
    f.add_argument("--real", dest="field", action="store_const", const="real")
    c.add_argument("--json", action="store_true", help="print the report as JSON")

    v = sub.add_parser("verify", help="evaluate one check on matrix files")
    v.add_argument("--name", required=True)
    v.add_argument("--a", help="first matrix file (Matrix JSON)")
    v.add_argument("--b", help="second matrix file (Matrix JSON)")
    v.add_argument("--index", help="index set '1,3,4', k, 'i,j' or m depending on the check")
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--json", action="store_true", help="also print the report as JSON")

    g = sub.add_parser("campaign", help="run a configured campaign")
    g.add_argument("--config", help="CampaignConfig JSON (defaults when omitted)")
    g.add_argument("--out", help="write the report JSON here")
    g.add_argument("--workers", type=int, default=None)
    return p


def _cmd_list(_: argparse.Namespace) -> int:
    print(list_checks())
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    kw: dict = {"checks": (args.name,), "dims": (args.n,), "trials": args.trials, "master_seed": args.seed}
    if args.tol is not None:
        kw["tolerance"] = args.tol
    if args.delta is not None:
        kw["contraction_margin"] = args.delta
    if args.field:
        kw["field"] = args.field
    report = run_campaign(CampaignConfig(**kw))
    print(report.to_json() if args.json else report.summary())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _cmd_verify(args: argparse.Namespace) -> int:
    a = load_matrix(args.a) if args.a else None
    b = load_matrix(args.b) if args.b else None
    report = verify(args.name, a, b, args.index, args.tol)
    print(report.summary())
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK if report.satisfied else EXIT_VIOLATION


def _cmd_campaign(args: argparse.Namespace) -> int:
    cfg = CampaignConfig.load(args.config) if args.config else CampaignConfig()
    report = run_campaign(cfg, workers=args.workers)
    out = args.out or cfg.output
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_VIOLATION


_COMMANDS = {"list": _cmd_list, "check": _cmd_check, "verify": _cmd_verify, "campaign": _cmd_campaign}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PreconditionFailed as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
    except (ParseError, ConfigError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    except (LogMajError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
