"""
Command-line surface.

    unitcodes graph 5 5 --invariants
    unitcodes code 3 2 --field 3 --exact
    unitcodes dual 3 4 --field 3
    unitcodes verify --n 2..12 --m 2..12 --fields 2,3,5 --json report.json
    unitcodes conjecture --n 2..10 --m 2..10 --fields 2,3

Exit codes: 0 success, 1 usage error, 2 theorem-check failure, 3 I/O error.
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple, Union

from .core.field import GfMatrix
from .core.ring import RingSpec, classify, is_prime
from .objects.code import DEFAULT_BUDGET, DEFAULT_DUAL_CAP, LinearCode, predict
from .objects.export import ExportFormat, write_export
from .objects.graph import UnitGraph
from .types import CheckStatus, SweepConfig, SweepReport
from .types.records import MAX_MODULUS, MIN_BUDGET
from .verify import CONJECTURE_CHECKS, sweep, write_csv, write_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_THEOREM_FAIL = 2
EXIT_IO = 3

_STATUS_COLUMNS = [status.value for status in CheckStatus]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports errors as UsageError instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_range(text: str) -> Tuple[int, int]:
    """Inclusive range "A..B"; a single integer "A" means A..A."""
    low, sep, high = text.partition("..")
    try:
        if not sep:
            return int(low), int(low)
        return int(low), int(high)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid range {text!r}, expected A..B")


def parse_fields(text: str) -> Tuple[int, ...]:
    try:
        fields = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid field list {text!r}, expected e.g. 2,3,5")
    if not fields:
        raise argparse.ArgumentTypeError("Field list is empty")
    return fields


def prime(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid field size {text!r}")
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"Field size {value} is not prime")
    return value


def _bounded(text: str, label: str, low: int, high: Optional[int] = None) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid {label} {text!r}")
    if value < low or (high is not None and value > high):
        bound = f"{low}..{high}" if high is not None else f"at least {low}"
        raise argparse.ArgumentTypeError(f"{label.capitalize()} {value} must be {bound}")
    return value


def modulus(text: str) -> int:
    return _bounded(text, "modulus", 2, MAX_MODULUS)


def budget(text: str) -> int:
    return _bounded(text, "enumeration budget", MIN_BUDGET)


def subset_cap(text: str) -> int:
    return _bounded(text, "dual search cap", 2)


def worker_count(text: str) -> int:
    return _bounded(text, "worker count", 1)


def parse_incidence_text(data: Union[str, bytes], r: int = 2) -> GfMatrix:
    """
    Read an IncidenceText export back into a matrix over GF(r).

    Raises:
        ValueError: header and body disagree, or an entry is not 0/1
    """
    if isinstance(data, bytes):
        data = data.decode("ascii")
    lines = data.splitlines()
    if not lines:
        raise ValueError("Empty incidence text")
    try:
        vertices, edges = (int(token) for token in lines[0].split())
    except ValueError:
        raise ValueError(f"Malformed header {lines[0]!r}")
    body = lines[1:]
    if len(body) != vertices:
        raise ValueError(f"Header announces {vertices} rows, found {len(body)}")
    rows: List[List[int]] = []
    for line in body:
        tokens = line.split()
        if len(tokens) != edges or any(token not in ("0", "1") for token in tokens):
            raise ValueError(f"Row {line!r} is not {edges} space-separated 0/1 entries")
        rows.append([int(token) for token in tokens])
    return GfMatrix.from_rows(r, rows, cols=edges)


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _print_rows(rows: List[Tuple[str, object]]) -> None:
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")


def cmd_graph(args: argparse.Namespace) -> int:
    spec = RingSpec(args.n, args.m)
    graph = UnitGraph.build(spec)
    profile = classify(spec)
    rows: List[Tuple[str, object]] = [
        ("ring", f"Z{spec.n} + Z{spec.m}"),
        ("case", profile.case_tag.value),
        ("vertices", graph.num_vertices),
        ("edges", graph.num_edges),
    ]
    if args.invariants:
        inv = graph.invariants()
        rows += [
            ("connected", _yes_no(inv.connected)),
            ("components", inv.num_components),
            ("bipartite", _yes_no(inv.bipartite)),
            ("diameter", inv.diameter),
            ("girth", inv.girth),
            ("min degree", inv.min_degree),
            ("edge connectivity", inv.edge_connectivity),
        ]
    if args.field is not None:
        rows.append((f"rank over GF({args.field})", graph.incidence_matrix(args.field).rank()))
    _print_rows(rows)

    exports = (
        (args.export_edges, ExportFormat.EDGE_LIST),
        (args.export_dot, ExportFormat.DOT),
        (args.export_incidence, ExportFormat.INCIDENCE_TEXT),
    )
    for path, fmt in exports:
        if path:
            write_export(graph, fmt, path)
    return EXIT_OK


def cmd_code(args: argparse.Namespace) -> int:
    spec = RingSpec(args.n, args.m)
    code = LinearCode.from_incidence(UnitGraph.build(spec), args.field)
    if args.exact:
        params = code.params(args.budget)
        print(f"{params}_{args.field}")
    else:
        print(code)
    predicted = predict(classify(spec), args.field)
    if predicted.primal is not None:
        print(f"predicted {predicted.primal}_{args.field} ({predicted.source.value})")
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    spec = RingSpec(args.n, args.m)
    code = LinearCode.from_incidence(UnitGraph.build(spec), args.field)
    distance = code.dual_min_distance(args.cap)
    print(f"dual [{code.length},{code.dual_dimension()},{distance}]_{args.field}")
    predicted = predict(classify(spec), args.field)
    if predicted.dual is not None and predicted.dual.min_distance is not None:
        print(f"predicted {predicted.dual}_{args.field} ({predicted.source.value})")
    return EXIT_OK


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    return SweepConfig(
        n_range=args.n,
        m_range=args.m,
        fields=args.fields,
        budget=args.budget,
        dual_cap=args.cap,
        jobs=args.jobs,
    )


def _print_summary(report: SweepReport, names: Optional[Tuple[str, ...]] = None) -> None:
    counts = report.summary["by_check"]
    selected = [name for name in counts if names is None or name in names]
    width = max([len("check")] + [len(name) for name in selected])
    print(f"{'check':<{width}}  " + "  ".join(f"{c:>14}" for c in _STATUS_COLUMNS))
    for name in selected:
        cells = "  ".join(f"{counts[name].get(c, 0):>14}" for c in _STATUS_COLUMNS)
        print(f"{name:<{width}}  {cells}")
    print(f"instances: {report.summary['instances']}")


def _write_reports(report: SweepReport, args: argparse.Namespace) -> None:
    if args.json:
        write_json(report, args.json)
    if args.csv:
        write_csv(report, args.csv)


def cmd_verify(args: argparse.Namespace) -> int:
    report = sweep(_sweep_config(args))
    _print_summary(report)
    _write_reports(report, args)
    for record in report.records:
        for result in record.checks:
            if result.status == CheckStatus.FAIL:
                print(f"FAIL {record.key} {result.name}: predicted {result.predicted}, "
                      f"observed {result.observed}", file=sys.stderr)
    return report.exit_code


def cmd_conjecture(args: argparse.Namespace) -> int:
    report = sweep(_sweep_config(args))
    _print_summary(report, CONJECTURE_CHECKS)
    _write_reports(report, args)
    for record in report.records:
        for result in record.checks:
            if result.status == CheckStatus.CONJECTURE_FAIL:
                print(f"counterexample n={record.n} m={record.m} r={record.r} ({record.case_tag.value}) "
                      f"{result.name}: predicted {result.predicted}, observed {result.observed}")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug)")

    parser = _Parser(prog="unitcodes", description="Unit graphs of Zn+Zm and their incidence codes")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    graph = sub.add_parser("graph", parents=[common], help="build a unit graph, print invariants, export")
    graph.add_argument("n", type=modulus)
    graph.add_argument("m", type=modulus)
    graph.add_argument("--invariants", action="store_true", help="compute structural invariants")
    graph.add_argument("--export-edges", metavar="PATH", help="write an EdgeList export")
    graph.add_argument("--export-dot", metavar="PATH", help="write a Dot export")
    graph.add_argument("--export-incidence", metavar="PATH", help="write an IncidenceText export")
    graph.add_argument("--field", type=prime, help="also report the incidence rank over GF(r)")
    graph.set_defaults(handler=cmd_graph)

    code = sub.add_parser("code", parents=[common], help="parameters of the incidence code")
    code.add_argument("n", type=modulus)
    code.add_argument("m", type=modulus)
    code.add_argument("--field", type=prime, required=True)
    code.add_argument("--exact", action="store_true", help="compute the minimum distance exhaustively")
    code.add_argument("--budget", type=budget, default=DEFAULT_BUDGET, help="max codeword enumerations")
    code.set_defaults(handler=cmd_code)

    dual = sub.add_parser("dual", parents=[common], help="parameters of the dual code")
    dual.add_argument("n", type=modulus)
    dual.add_argument("m", type=modulus)
    dual.add_argument("--field", type=prime, required=True)
    dual.add_argument("--cap", type=subset_cap, default=DEFAULT_DUAL_CAP, help="largest column subset searched")
    dual.set_defaults(handler=cmd_dual)

    for name, handler, text in (
        ("verify", cmd_verify, "check every applicable theorem over a parameter sweep"),
        ("conjecture", cmd_conjecture, "report evidence for the open conjectures"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("--n", type=parse_range, default=(2, 12), metavar="A..B")
        cmd.add_argument("--m", type=parse_range, default=(2, 12), metavar="A..B")
        cmd.add_argument("--fields", type=parse_fields, default=(2, 3, 5), metavar="LIST")
        cmd.add_argument("--budget", type=budget, default=DEFAULT_BUDGET)
        cmd.add_argument("--cap", type=subset_cap, default=DEFAULT_DUAL_CAP)
        cmd.add_argument("--jobs", type=worker_count, default=1, help="worker processes")
        cmd.add_argument("--json", metavar="PATH", help="write the JSON report")
        cmd.add_argument("--csv", metavar="PATH", help="write the CSV report")
        cmd.set_defaults(handler=handler)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(message)s")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch the subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"unitcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ValueError as e:
        print(f"unitcodes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"unitcodes: {e}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())
