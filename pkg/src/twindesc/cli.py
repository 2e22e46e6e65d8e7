"""Command-line front end.

Exit codes: 0 clean, 1 validation error, 2 parse or I/O error, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .aas import SUPPORT_LEVELS, SupportLevel, map_to_aas, serialize_aas, support_level
from .analysis import Verdict, classify, validate
from .constellation import enumerate_slices, extract_slice, to_dot
from .model import CharacteristicId, Severity, TwinDescError
from .parser import SourceFile, parse
from .report import ReportOptions, render_report

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 64

_COLORS = {Severity.ERROR: "\033[31m", Severity.WARNING: "\033[33m", Severity.INFO: "\033[36m"}


class _UsageError(Exception):
    pass


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="twindesc",
        description="Parse, check, classify and transform digital-twin descriptions (.dtd).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    def add(name, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if with_input:
            p.add_argument("input", help="description file, or '-' for stdin")
        p.add_argument("--no-color", action="store_true", help="disable ANSI colours")
        return p

    add("check", "print diagnostics")
    add("classify", "print the digital model/shadow/twin verdict")
    p = add("slices", "print slice memberships")
    p.add_argument("--usage", metavar="NAME", help="print only the slice of this usage")
    p = add("graph", "write the constellation as Graphviz DOT")
    p.add_argument("--format", choices=["dot"], default="dot")
    p.add_argument("--slice", metavar="NAME", help="highlight the slice of this usage")
    p.add_argument("--out", metavar="PATH")
    p = add("report", "write the Markdown checklist report")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--graph-link", action="store_true", help="link a DOT file of the graph")
    p.add_argument("--mapping-summary", action="store_true",
                   help="append the AAS support-level table")
    p = add("aas", "write the AAS skeleton as canonical JSON")
    p.add_argument("--out", metavar="PATH")
    p = add("support", "print AAS support levels", with_input=False)
    p.add_argument("characteristics", nargs="*", metavar="CHARACTERISTIC",
                   help="C1 .. C14; all buckets when omitted")
    return parser


def _use_color(args, stream) -> bool:
    if args.no_color or os.environ.get("TWINDESC_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_diagnostics(diags, path, color, stream):
    for d in diags:
        line = d.format(path)
        if color:
            line = f"{_COLORS[d.severity]}{line}\033[0m"
        print(line, file=stream)


def _load(args):
    """Parse the input file; raises _Exit(2) when it cannot be read or parsed."""
    path = args.input
    try:
        if path == "-":
            src = SourceFile("<stdin>", sys.stdin.read())
        else:
            src = SourceFile.read(path)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"twindesc: cannot read {path}: {exc}", file=sys.stderr)
        raise _Exit(EXIT_PARSE) from None
    result = parse(src)
    if not result.ok:
        _print_diagnostics(result.diagnostics, src.path, _use_color(args, sys.stderr),
                           sys.stderr)
        raise _Exit(EXIT_PARSE)
    return result, src.path


def _cmd_check(args, result, path):
    diags = list(result.diagnostics) + validate(result.description)
    _print_diagnostics(diags, path, _use_color(args, sys.stdout), sys.stdout)
    return EXIT_INVALID if any(d.is_error for d in diags) else EXIT_OK


def _cmd_classify(args, result, path):
    c = classify(result.description)
    if c.verdict is Verdict.AMBIGUOUS:
        print(c.verdict.value)
        for v in c.candidates:
            print(v.value)
    else:
        print(c.verdict.value)
    return EXIT_OK


def _require_valid(args, result, path):
    diags = validate(result.description)
    if any(d.is_error for d in diags):
        _print_diagnostics([d for d in diags if d.is_error], path,
                           _use_color(args, sys.stderr), sys.stderr)
        return False
    return True


def _cmd_slices(args, result, path):
    c = result.description.constellation
    if args.usage is not None:
        if c is None:
            raise _UsageError(f"no usage named {args.usage!r}")
        slices = [extract_slice(c, args.usage)]
    else:
        slices = enumerate_slices(c)
    for s in slices:
        print(f"{s.usage}: {', '.join(s.nodes)}")
    return EXIT_OK


def _cmd_graph(args, result, path):
    d = result.description
    highlight = None
    if args.slice is not None:
        if d.constellation is None:
            raise _UsageError(f"no usage named {args.slice!r}")
        highlight = extract_slice(d.constellation, args.slice)
    _emit(to_dot(d.constellation, highlight, name=d.name), args.out)
    return EXIT_OK


def _cmd_report(args, result, path):
    opts = ReportOptions(args.graph_link, args.mapping_summary)
    _emit(render_report(result.description, opts), args.out)
    return EXIT_OK


def _cmd_aas(args, result, path):
    _emit(serialize_aas(map_to_aas(result.description)), args.out)
    return EXIT_OK


def _cmd_support(args):
    if not args.characteristics:
        for level in SupportLevel:
            members = sorted(SUPPORT_LEVELS[level])
            print(f"{level.value}: {' '.join(c.code for c in members)}")
        return EXIT_OK
    try:
        cids = [CharacteristicId.from_code(c) for c in args.characteristics]
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if len(cids) == 1:
        print(support_level(cids[0]).value)
    else:
        for c in cids:
            print(f"{c.code}: {support_level(c).value}")
    return EXIT_OK


_COMMANDS = {
    "check": (_cmd_check, False),
    "classify": (_cmd_classify, False),
    "slices": (_cmd_slices, True),
    "graph": (_cmd_graph, True),
    "report": (_cmd_report, True),
    "aas": (_cmd_aas, True),
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "support":
            return _cmd_support(args)
        result, path = _load(args)
        handler, generator = _COMMANDS[args.command]
        if generator and not _require_valid(args, result, path):
            return EXIT_INVALID
        return handler(args, result, path)
    except _Exit as exc:
        return exc.code
    except (_UsageError, TwinDescError) as exc:
        print(f"twindesc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"twindesc: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
