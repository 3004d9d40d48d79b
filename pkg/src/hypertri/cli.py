"""Command-line front end.

Subcommands::

    count <file> [--out json|csv|text] [--output PATH]
                 [--dump-degrees DIR] [--dump-edge-degrees PATH]
    verify [--seed N] [--instances K] [--max-n N] [--max-m M]
    patterns --dump-table

Exit codes: 0 success; 1 verification mismatch; 2 parse/configuration/IO
error; 3 internal consistency error; 4 count overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from collections import Counter
from typing import Sequence

from . import __version__
from .core import Hypergraph, IngestReport, parse_edge_list, stats
from .counters import CensusResult, count_all
from .edge_degrees import write_edge_degree_csv
from .errors import (
    ConsistencyError,
    CountOverflowError,
    EmptyInputError,
    HypertriError,
    ParseError,
)
from .orientation import OrientedHypergraph
from .patterns import REGION_NAMES, TABLE
from .verify import BatterySettings, run_battery

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3
EXIT_OVERFLOW = 4


def build_report(
    g: Hypergraph, result: CensusResult, ingest: IngestReport
) -> dict:
    """Assemble the machine-readable census report."""
    st = stats(g)
    counts = result.counts
    closed = counts.closed_total
    opened = counts.open_total
    report = {
        "stats": {
            "n": st.n,
            "m": st.m,
            "h": st.h,
            "rank": st.rank,
            "max_degree": st.max_degree,
            "kappa": result.kappa,
        },
        "counts": counts.as_dict(),
        "totals": {"closed": closed, "open": opened},
        "shares": {
            "p9_closed": counts[9] / closed if closed else 0.0,
            "p26_open": counts[26] / opened if opened else 0.0,
        },
        "timings": {
            **{k: v for k, v in result.timings.millis.items()},
            "counters": dict(result.timings.counters),
        },
        "ingest": ingest.as_dict(),
    }
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["key", "value"])
    for key, value in report["stats"].items():
        writer.writerow([f"stats.{key}", value])
    for pid in range(1, 27):
        writer.writerow([f"count.{pid}", report["counts"][str(pid)]])
    writer.writerow(["totals.closed", report["totals"]["closed"]])
    writer.writerow(["totals.open", report["totals"]["open"]])
    writer.writerow(["shares.p9_closed", f"{report['shares']['p9_closed']:.6f}"])
    writer.writerow(["shares.p26_open", f"{report['shares']['p26_open']:.6f}"])
    for key, value in report["ingest"].items():
        writer.writerow([f"ingest.{key}", value])
    return buf.getvalue()


def render_text(report: dict) -> str:
    lines = []
    st = report["stats"]
    lines.append(
        f"n={st['n']} m={st['m']} h={st['h']} rank={st['rank']} "
        f"max_degree={st['max_degree']} degeneracy={st['kappa']}"
    )
    lines.append("")
    lines.append(f"{'id':>4}  {'count':>16}  family")
    for pid in range(1, 27):
        lines.append(
            f"{pid:>4}  {report['counts'][str(pid)]:>16}  {TABLE.family(pid)}"
        )
    lines.append("")
    lines.append(
        f"closed total = {report['totals']['closed']}   "
        f"open total = {report['totals']['open']}"
    )
    lines.append(
        f"pattern 9 share of closed = {report['shares']['p9_closed']:.1%}   "
        f"pattern 26 share of open = {report['shares']['p26_open']:.1%}"
    )
    timings = report["timings"]
    phase_ms = ", ".join(
        f"{k}={v:.1f}ms" for k, v in timings.items() if k != "counters"
    )
    lines.append(f"phases: {phase_ms}")
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, payload: str) -> None:
    """Write via a temp file and rename, so failures leave no partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hypertri-")
    try:
        with os.fdopen(fd, "w") as stream:
            stream.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_output(payload: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(payload)
    else:
        _atomic_write(path, payload)


def _distribution_csv(values: Sequence[int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["value", "count"])
    for value, count in sorted(Counter(values).items()):
        writer.writerow([value, count])
    return buf.getvalue()


def dump_distributions(g: Hypergraph, dah: OrientedHypergraph, directory: str) -> None:
    """Write ``degree_dist.csv`` and ``outdegree_dist.csv`` under directory."""
    os.makedirs(directory, exist_ok=True)
    degrees = [g.degree(v) for v in range(g.n)]
    _atomic_write(
        os.path.join(directory, "degree_dist.csv"), _distribution_csv(degrees)
    )
    _atomic_write(
        os.path.join(directory, "outdegree_dist.csv"),
        _distribution_csv(dah.dout),
    )


def cmd_count(args: argparse.Namespace) -> int:
    try:
        with open(args.file, "r") as stream:
            g, ingest = parse_edge_list(stream)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, EmptyInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        result = count_all(g)
    except CountOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY

    report = build_report(g, result, ingest)
    renderer = {"json": render_json, "csv": render_csv, "text": render_text}[args.out]
    try:
        _write_output(renderer(report), args.output)
        if args.dump_degrees:
            dump_distributions(g, result.dah, args.dump_degrees)
        if args.dump_edge_degrees:
            buf = io.StringIO()
            write_edge_degree_csv(result.degree_table, result.dah, buf)
            _atomic_write(args.dump_edge_degrees, buf.getvalue())
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        settings = BatterySettings(
            seed=args.seed,
            instances=args.instances,
            max_n=args.max_n,
            max_m=args.max_m,
        )
        settings.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    result = run_battery(settings)
    if result.passed:
        print(
            f"verify: PASS ({result.instances_run} instances, "
            f"duality checked on {result.duality_checked})"
        )
        return EXIT_OK
    failure = result.failure
    print(f"verify: FAIL on instance {failure.index} ({failure.check})")
    print(failure.detail)
    print("instance (edge list):")
    sys.stdout.write(failure.instance_text)
    return EXIT_VERIFY_FAILED


def cmd_patterns(args: argparse.Namespace) -> int:
    if not args.dump_table:
        print("nothing to do; pass --dump-table", file=sys.stderr)
        return EXIT_INPUT
    print("id  kind    family                          " + " ".join(REGION_NAMES))
    for pid in range(1, 27):
        sig = TABLE.canonical[pid]
        bits = " ".join(
            f"{(sig >> i) & 1:>{len(name)}}" for i, name in enumerate(REGION_NAMES)
        )
        kind = "closed" if TABLE.is_closed(pid) else "open"
        print(f"{pid:<3} {kind:<7} {TABLE.family(pid):<31} {bits}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypertri",
        description="Exact census of three-hyperedge intersection patterns.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="run the census on an edge-list file")
    count.add_argument("file")
    count.add_argument("--out", choices=("json", "csv", "text"), default="text")
    count.add_argument("--output", help="write the report here instead of stdout")
    count.add_argument(
        "--dump-degrees",
        metavar="DIR",
        help="write degree_dist.csv and outdegree_dist.csv into DIR",
    )
    count.add_argument(
        "--dump-edge-degrees",
        metavar="PATH",
        help="write the per-edge degree table as CSV",
    )
    count.set_defaults(func=cmd_count)

    verify = sub.add_parser("verify", help="run the oracle-equivalence battery")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--instances", type=int, default=200)
    verify.add_argument("--max-n", type=int, default=12)
    verify.add_argument("--max-m", type=int, default=15)
    verify.set_defaults(func=cmd_verify)

    patterns = sub.add_parser("patterns", help="taxonomy utilities")
    patterns.add_argument(
        "--dump-table",
        action="store_true",
        help="print the 26 canonical signatures with family labels",
    )
    patterns.set_defaults(func=cmd_patterns)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CountOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except HypertriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
