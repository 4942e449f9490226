"""
Command-line interface for permstat.

Exit codes: 0 success, 1 a verified identity failed, 2 usage, parse or
budget error. Logging goes to stderr; stdout carries only results.
"""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from permstat import __version__
from permstat.config import settings
from permstat.core.alternating import a_decompose
from permstat.core.canonical import decompose
from permstat.core.permutation import Permutation
from permstat.exceptions import PermstatError
from permstat.models.records import CliConfig
from permstat.services import numbers
from permstat.services.distributions import FilterSpec, class_table, distribution
from permstat.services.verification import THEOREMS, verify
from permstat.stats.covering import f_q, fiber
from permstat.stats.patterns import contains_pat_q, h_q_count
from permstat.stats.qstats import stat_record

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _csv(header: List[str], rows: List[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _positions(values) -> str:
    return " ".join(str(v) for v in values or [])


def cmd_stats(args, config: CliConfig) -> int:
    record = stat_record(Permutation.parse(args.perm), config.q)
    if config.format == "csv":
        fields = list(record.model_dump())
        row = [_positions(v) if isinstance(v, list) else v for v in record.model_dump().values()]
        print(_csv(fields, [row]))
    else:
        print(record.model_dump_json())
    return EXIT_OK


def cmd_decompose(args, config: CliConfig) -> int:
    p = Permutation.parse(args.perm)
    word = a_decompose(p) if args.group == "a" else decompose(p)
    if config.format == "json":
        print(json.dumps({"group": args.group, "degree": word.degree, "word": str(word)}))
    else:
        print(str(word))
    return EXIT_OK


def cmd_dist(args, config: CliConfig) -> int:
    poly = distribution(
        config.m,
        config.q,
        config.stats,
        FilterSpec.parse(config.filter),
        threads=config.threads,
        budget=config.budget,
    )
    if config.format == "json":
        print(json.dumps({"stats": config.stats, "filter": config.filter, "terms": poly.to_json()}))
    elif config.format == "csv":
        header = [f"t{i}" for i in range(1, poly.arity + 1)] + ["coef"]
        print(_csv(header, [list(e) + [c] for e, c in poly.sorted_terms()]))
    else:
        print(poly.to_text())
    return EXIT_OK


def cmd_verify(args, config: CliConfig) -> int:
    result = verify(args.theorem, config.n, config.q, threads=config.threads, budget=config.budget)
    if config.format == "json":
        print(result.model_dump_json())
    else:
        print("PASS" if result.passed else "FAIL")
        if not result.passed:
            print(json.dumps(result.witness, sort_keys=True))
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_numbers(args, config: CliConfig) -> int:
    value = numbers.number_of_kind(args.kind, config.n, config.k, config.q)
    if config.format == "csv":
        print(_csv(["n", "k", "value"], [[config.n, "" if config.k is None else config.k, value]]))
    elif config.format == "json":
        print(json.dumps({"kind": args.kind, "n": config.n, "k": config.k, "q": config.q, "value": str(value)}))
    else:
        print(value)
    return EXIT_OK


def cmd_map(args, config: CliConfig) -> int:
    image = f_q(Permutation.parse(args.perm), config.q)
    print(json.dumps([str(image)]) if config.format == "json" else str(image))
    return EXIT_OK


def cmd_fiber(args, config: CliConfig) -> int:
    members = [" ".join(str(v) for v in w) for w in fiber(Permutation.parse(args.perm), config.q).members]
    print(json.dumps(members) if config.format == "json" else "\n".join(members))
    return EXIT_OK


def cmd_avoid(args, config: CliConfig) -> int:
    results = []
    for text in args.perms:
        p = Permutation.parse(text)
        witness = contains_pat_q(p, config.q)
        results.append(
            {
                "window": str(p),
                "avoids": witness is None,
                "witness": None if witness is None else witness.model_dump(),
            }
        )
    if config.format == "json":
        print(json.dumps(results))
    elif config.format == "csv":
        rows = [
            [r["window"], str(r["avoids"]).lower(), "" if r["witness"] is None else json.dumps(r["witness"])]
            for r in results
        ]
        print(_csv(["window", "avoids", "witness"], rows))
    else:
        for r in results:
            line = f"{r['window']}\t{str(r['avoids']).lower()}"
            if r["witness"] is not None:
                line += "\t" + json.dumps(r["witness"])
            print(line)
    return EXIT_OK


def cmd_count(args, config: CliConfig) -> int:
    rows = [[m, config.q, h_q_count(m, config.q, budget=config.budget)] for m in range(config.m + 1)]
    if config.format == "json":
        print(json.dumps([{"m": m, "q": q, "h_q": str(h)} for m, q, h in rows]))
    else:
        print(_csv(["m", "q", "h_q"], rows))
    return EXIT_OK


def cmd_classes(args, config: CliConfig) -> int:
    rows = class_table(
        config.m,
        config.q,
        with_del=not args.no_del,
        spec=FilterSpec.parse(config.filter),
        threads=config.threads,
        budget=config.budget,
    )
    if config.format == "json":
        print(json.dumps([row.model_dump() for row in rows]))
    else:
        table = [
            [_positions(r.B1), _positions(r.B2) if r.B2 is not None else "", r.size, r.poly_inv, r.poly_rmaj, str(r.equal).lower()]
            for r in rows
        ]
        print(_csv(["B1", "B2", "size", "poly_inv", "poly_rmaj", "equal"], table))
    return EXIT_FAILED if any(not r.equal for r in rows) else EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, CliConfig], int]] = {
    "stats": cmd_stats,
    "decompose": cmd_decompose,
    "dist": cmd_dist,
    "verify": cmd_verify,
    "numbers": cmd_numbers,
    "map": cmd_map,
    "fiber": cmd_fiber,
    "avoid": cmd_avoid,
    "count": cmd_count,
    "classes": cmd_classes,
}


def _make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: PERMSTAT_THREADS or cpu count)")
    common.add_argument("--budget", type=int, default=None, help="largest degree to enumerate (default: PERMSTAT_ENUMERATION_BUDGET)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--log-level", default=None, help="logging level for stderr")

    parser = argparse.ArgumentParser(
        prog="permstat",
        description="q-statistics, covering maps and equidistribution checks on symmetric groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="all q-statistics of one permutation")
    p.add_argument("perm")
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("decompose", parents=[common], help="canonical word of a permutation")
    p.add_argument("perm")
    p.add_argument("--group", choices=["s", "a"], default="s")

    p = sub.add_parser("dist", parents=[common], help="generating polynomial over S_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--stats", required=True, help="comma-separated statistic ids")
    p.add_argument("--filter", default="all")

    p = sub.add_parser("verify", parents=[common], help="check one identity exhaustively")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("numbers", parents=[common], help="exact Stirling, q-Bell and h_q values")
    p.add_argument("--kind", required=True, choices=list(numbers.NUMBER_KINDS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("map", parents=[common], help="image under the covering map f_q")
    p.add_argument("perm")
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("fiber", parents=[common], help="preimage of a permutation under f_q")
    p.add_argument("perm")
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("avoid", parents=[common], help="Pat(q) containment with witnesses")
    p.add_argument("perms", nargs="+")
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("count", parents=[common], help="h_q(m) for m = 0..M")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("classes", parents=[common], help="inverse Des_q/Del_q classes and their polynomials")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--filter", default="all")
    p.add_argument("--no-del", action="store_true", help="classify by Des_q of the inverse only")

    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    stats = getattr(args, "stats", None)
    return CliConfig(
        command=args.command,
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        q=getattr(args, "q", 1),
        k=getattr(args, "k", None),
        stats=[s.strip() for s in stats.split(",") if s.strip()] if stats else [],
        filter=getattr(args, "filter", "all"),
        format=args.format,
        threads=settings.effective_threads(args.threads),
        budget=settings.effective_budget(args.budget),
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = _make_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except ValidationError as e:
        print(f"error: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except PermstatError as e:
        logger.debug(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
