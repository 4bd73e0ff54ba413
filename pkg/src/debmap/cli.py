"""Command line interface.

Subcommands: scan (directory -> Packages index), graph (index -> DOT),
check (installability report for one root), info (control stanza of a
.deb).  Payload goes to stdout or --out; diagnostics go to stderr.  Exit
codes: 0 clean, 1 check findings, 2 usage/parse/IO errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dot import DotStyle, emit_dot
from .errors import DebmapError
from .graph import DEFAULT_GRAPH_KINDS, build_graph, check_installability
from .relations import RelationKind
from .repo import load_universe, render_index, scan_repository
from .debfile import read_deb

PROG = "debmap"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description=__doc__, add_help=True)
    commands = parser.add_subparsers(dest="command", metavar="command")

    scan = commands.add_parser("scan", help="index a directory of .deb files")
    scan.add_argument("inputs", nargs="+", metavar="dir")
    scan.add_argument("--out", help="write the index here instead of stdout")

    graph = commands.add_parser("graph", help="emit a DOT dependency graph")
    graph.add_argument("inputs", nargs="+", metavar="packages-file")
    graph.add_argument("--out", help="write the DOT text here instead of stdout")
    graph.add_argument("--root", help="limit the graph to this package's reach")
    graph.add_argument(
        "--relations",
        default=None,
        help="comma-separated relation fields to draw "
        "(default: Depends,Pre-Depends,Recommends,Provides,Conflicts)",
    )
    graph.add_argument("--max-depth", type=int, default=None)
    graph.add_argument("--include-external", action="store_true")

    check = commands.add_parser("check", help="report whether a package is installable")
    check.add_argument("inputs", nargs="+", metavar="packages-file")
    check.add_argument("--out", help="write the report here instead of stdout")
    check.add_argument("--root", required=True, help="package whose closure to check")
    check.add_argument("--with-recommends", action="store_true")

    info = commands.add_parser("info", help="print the control stanza of a .deb")
    info.add_argument("inputs", nargs="+", metavar="deb-file")
    info.add_argument("--out", help="write the output here instead of stdout")
    info.add_argument("--field", help="print only this field's value")

    return parser


def _parse_relations(raw: str | None) -> frozenset[RelationKind]:
    if raw is None:
        return DEFAULT_GRAPH_KINDS
    kinds = set()
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        kind = RelationKind.from_field_name(token)
        if kind is None:
            valid = ", ".join(k.field_name for k in RelationKind)
            raise _UsageError(f"unknown relation {token!r} (expected one of: {valid})")
        kinds.add(kind)
    if not kinds:
        raise _UsageError("--relations names no relation fields")
    return frozenset(kinds)


def _emit(payload: str, out: str | None):
    if out is not None:
        Path(out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _style_enabled(out: str | None) -> bool:
    return out is None and not os.environ.get("NO_COLOR") and sys.stdout.isatty()


def _paint(text: str, code: str, enabled: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if enabled else text


def _read_inputs(paths) -> list[str]:
    return [Path(path).read_text(encoding="utf-8") for path in paths]


def _cmd_scan(args) -> int:
    if len(args.inputs) != 1:
        raise _UsageError("scan takes exactly one repository directory")
    failures = []

    def on_error(path, exc):
        failures.append(path)
        print(f"{PROG}: {path}: {exc}", file=sys.stderr)

    entries = scan_repository(args.inputs[0], on_error=on_error)
    _emit(render_index(entries), args.out)
    return 2 if failures else 0


def _cmd_graph(args) -> int:
    if args.max_depth is not None and args.max_depth < 1:
        raise _UsageError("--max-depth must be a positive integer")
    universe = load_universe(_read_inputs(args.inputs))
    kinds = _parse_relations(args.relations)
    graph = build_graph(
        universe,
        roots=[args.root] if args.root else None,
        kinds=kinds,
        max_depth=args.max_depth,
        include_external=args.include_external,
    )
    _emit(emit_dot(graph, DotStyle.covering(kinds)), args.out)
    return 0


def _cmd_check(args) -> int:
    universe = load_universe(_read_inputs(args.inputs))
    report = check_installability(universe, args.root, args.with_recommends)
    paint = _style_enabled(args.out)
    lines = ["closure: " + " ".join(report.closure)]
    for dependent, group in report.missing:
        lines.append(_paint(f"missing: {dependent} -> {group}", "31", paint))
    for left, right, via in report.conflicts:
        lines.append(_paint(f"conflict: {left} <-> {right} (via {via})", "31", paint))
    for cycle in report.predepends_cycles:
        chain = " -> ".join(cycle + [cycle[0]])
        lines.append(_paint(f"pre-depends cycle: {chain}", "31", paint))
    lines.append(
        "missing={} conflicts={} cycles={}".format(
            len(report.missing), len(report.conflicts), len(report.predepends_cycles)
        )
    )
    _emit("".join(line + "\n" for line in lines), args.out)
    return 0 if report.is_clean else 1


def _cmd_info(args) -> int:
    if len(args.inputs) != 1:
        raise _UsageError("info takes exactly one .deb file")
    archive = read_deb(Path(args.inputs[0]).read_bytes())
    if args.field is not None:
        value = archive.control.get(args.field)
        if value is None:
            print(f"{PROG}: no field {args.field!r} in {args.inputs[0]}", file=sys.stderr)
            return 2
        _emit(value + "\n", args.out)
    else:
        _emit(archive.control.render(), args.out)
    return 0


_COMMANDS = {
    "scan": _cmd_scan,
    "graph": _cmd_graph,
    "check": _cmd_check,
    "info": _cmd_info,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help prints and exits itself
            return int(exc.code or 0)
        if args.command is None:
            raise _UsageError("no command given (expected scan, graph, check, or info)")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except (DebmapError, OSError) as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
