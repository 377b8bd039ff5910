"""Command-line front end: ``eil invariants``, ``eil verify``, ``eil make-cw``.

Exit codes: 0 success or all instances pass, 1 a counterexample was found,
2 usage or parse error, 3 the Betti cutoff blocked part of the request.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cameron_walker import CWError, CWStructure, build_cw, classify_special, cw_invariants, recognize_cw
from .families import FamilyError, family_graph, looks_like_family, parse_family
from .graph_core import GraphError, SimpleGraph, graph_from_dict, parse_graph
from .hilbert import h_polynomial
from .invariants import independence_domination, independence_number, induced_matching_number, matching_number
from .resolution import CutoffExceeded, Field, default_cutoff, homological_report
from .verify import THEOREMS, VerifyError, default_ranges, merge_ranges, parse_config, run_verify

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_CUTOFF = 0, 1, 2, 3

_BETTI_FIELDS = ("depth", "reg", "projdim", "star_equality", "extremal_betti_positions", "betti")


class InputError(ValueError):
    pass


def load_input(source: str, stdin_text: Optional[str] = None) -> tuple[SimpleGraph, Optional[CWStructure]]:
    """Read a graph from a file, stdin ("-") or a family spec like ``path:4``.

    JSON input with an "m" key is a Cameron-Walker spec; other JSON is a graph
    with "vertices" and "edges"; anything else is the line-based graph format.
    """
    if source == "-":
        text = sys.stdin.read() if stdin_text is None else stdin_text
    elif looks_like_family(source) and not Path(source).exists():
        return family_graph(parse_family(source)), None
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError(f"{source}: no such file, and not a family spec such as path:4")
        text = path.read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise InputError("JSON input must be an object")
        if "m" in data:
            spec = CWStructure.from_dict(data)
            spec.validate()
            return build_cw(spec), spec
        return graph_from_dict(data), None
    return parse_graph(text), None


def run_invariants(
    g: SimpleGraph,
    spec: Optional[CWStructure] = None,
    field_spec: str | Field | None = None,
    cutoff: Optional[int] = None,
) -> tuple[dict, int]:
    """The full invariant report for one graph, and the exit code it implies."""
    fld = Field.parse(field_spec)
    limit = default_cutoff() if cutoff is None else cutoff
    dim = independence_number(g)
    h = h_polynomial(g, dim.value)
    m, im, i = matching_number(g), induced_matching_number(g), independence_domination(g)
    report: dict = {
        "vertices": g.order,
        "edges": g.size,
        "field": str(fld),
        "dim": dim.value,
        "deg_h": h.degree,
        "a_invariant": h.degree - dim.value,
        "h_polynomial": h.to_list(),
        "m": m.value,
        "im": im.value,
        "i": i.value,
        "witnesses": {"m": m.witness, "im": im.witness, "i": i.witness, "dim": dim.witness},
    }
    code = EXIT_OK
    try:
        rep = homological_report(g, fld, limit)
    except CutoffExceeded as exc:
        for key in _BETTI_FIELDS:
            report[key] = {"skipped": "cutoff"}
        report["note"] = f"{exc}; raise --cutoff or EIL_CUTOFF to compute Betti-derived fields"
        code = EXIT_CUTOFF
    else:
        report.update(
            depth=rep.depth,
            reg=rep.reg,
            projdim=rep.projdim,
            star_equality=rep.star_equality,
            extremal_betti_positions=[list(p) for p in rep.extremal_betti_positions],
            betti=rep.betti.to_dict(),
        )
    recog = recognize_cw(g)
    report["cw_recognition"] = recog.to_dict()
    structure = spec if spec is not None else recog.structure
    if structure is not None:
        cw = cw_invariants(structure)
        report["cw"] = cw.to_dict()
        report.update(classify_special(structure).to_dict())
    report = {k: report[k] for k in _ORDER if k in report} | {k: v for k, v in report.items() if k not in _ORDER}
    return report, code


_ORDER = (
    "vertices", "edges", "field", "dim", "depth", "reg", "projdim", "deg_h", "a_invariant", "h_polynomial",
    "m", "im", "i", "star_equality", "extremal_betti_positions",
)


def render_table(report: dict) -> str:
    width = max(len(k) for k in report)
    lines = []
    for key, value in report.items():
        if key in ("betti", "witnesses", "cw", "cw_recognition") and isinstance(value, dict) and "skipped" not in value:
            continue
        lines.append(f"{key.ljust(width)}  {json.dumps(value)}")
    if isinstance(report.get("betti"), dict) and "entries" in report["betti"]:
        from .resolution import BettiTable

        entries = {(i, j): b for i, j, b in report["betti"]["entries"]}
        table = BettiTable(entries, Field.parse(report["betti"].get("characteristic")), report["vertices"])
        lines += ["", "betti table:", table.render()]
    recog = report.get("cw_recognition", {})
    lines.append(f"{'cameron_walker'.ljust(width)}  {json.dumps(recog.get('tag'))}")
    return "\n".join(lines)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.replace(";", ",").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition("-")
        try:
            out.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad bipartite edge {chunk!r}; use i-j") from None
        if not sep:
            raise argparse.ArgumentTypeError(f"bad bipartite edge {chunk!r}; use i-j")
    return out


def _range_item(text: str) -> tuple[str, int]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"value in {text!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eil", description="Exact invariants of edge ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="invariants of one graph")
    inv.add_argument("input", help="graph file (text or JSON), CW spec JSON, family spec like path:4, or - for stdin")
    inv.add_argument("--field", default="q", help="q for the rationals or a prime p (default q)")
    inv.add_argument("--cutoff", type=int, default=None, help="max vertices for Betti tables")
    fmt = inv.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")

    ver = sub.add_parser("verify", help="replay a theorem over its corpus")
    ver.add_argument("theorem", help="theorem id, or 'list' to show the ids")
    ver.add_argument("--range", dest="ranges", action="append", type=_range_item, default=[], metavar="KEY=VALUE")
    ver.add_argument("--config", type=Path, help="key = value file overriding the default ranges")
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--field", default="q")
    ver.add_argument("--cutoff", type=int, default=None)
    ver.add_argument("--output", "-o", type=Path, help="write the JSON report here instead of stdout")
    ver.add_argument("--csv", type=Path, help="also write per-instance rows as CSV")
    ver.add_argument("--no-timing", action="store_true", help="omit wall time so reports are byte-identical")
    ver.add_argument("--table", action="store_true", help="print a one-line-per-instance summary instead of JSON")

    mk = sub.add_parser("make-cw", help="build a Cameron-Walker graph from its parameters")
    mk.add_argument("--m", type=int, required=True)
    mk.add_argument("--n", type=int, required=True)
    mk.add_argument("--s", type=_int_list, required=True)
    mk.add_argument("--t", type=_int_list, required=True)
    mk.add_argument("--bip", type=_pairs, required=True, help='bipartite edges, e.g. "1-1,2-1"')
    mk.add_argument("--format", choices=("text", "json", "spec"), default="text")
    return parser


def _cmd_invariants(args: argparse.Namespace) -> int:
    g, spec = load_input(args.input)
    report, code = run_invariants(g, spec, args.field, args.cutoff)
    if args.fmt == "table":
        print(render_table(report))
    else:
        print(json.dumps(report, indent=2))
    return code


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.theorem == "list":
        for tid, thm in THEOREMS.items():
            print(f"{tid:16} {thm.statement}")
        return EXIT_OK
    overrides: dict[str, int] = {}
    if args.config is not None:
        overrides.update(parse_config(args.config.read_text(), str(args.config)))
    overrides.update(dict(args.ranges))
    merge_ranges(default_ranges(), overrides)
    report = run_verify(args.theorem, overrides, args.field, args.cutoff, args.jobs)
    text = json.dumps(report.to_dict(timing=not args.no_timing), indent=2)
    if args.output is not None:
        args.output.write_text(text + "\n")
    if args.csv is not None:
        with args.csv.open("w", newline="") as fh:
            csv.writer(fh).writerows(report.csv_rows())
    if args.table:
        for r in report.instances:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.index:5}  {r.label}")
        print(f"{report.theorem}: {len(report.instances) - len(report.failures)}/{len(report.instances)} pass")
    elif args.output is None:
        print(text)
    return EXIT_OK if report.all_pass else EXIT_COUNTEREXAMPLE


def _cmd_make_cw(args: argparse.Namespace) -> int:
    spec = CWStructure(args.m, args.n, args.s, args.t, args.bip)
    spec.validate()
    if args.format == "spec":
        print(json.dumps(spec.to_dict()))
    elif args.format == "json":
        print(build_cw(spec).to_json())
    else:
        print(build_cw(spec).to_text())
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"invariants": _cmd_invariants, "verify": _cmd_verify, "make-cw": _cmd_make_cw}[args.command]
    try:
        return handler(args)
    except CutoffExceeded as exc:
        print(f"eil: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    except GraphError as exc:
        print(f"eil: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, FamilyError, CWError, VerifyError, ValueError, OSError) as exc:
        print(f"eil: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
