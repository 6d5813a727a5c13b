"""Batch command line front-end.

Exit codes: 0 success / found, 1 clean not-found, 2 usage or input error,
3 an extraction failed to verify.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .constructions import (BadOrder, Infeasible, LinearGreedy, PlantedBook, UniformM,
                            bose_sts, fig1, random_hypergraph)
from .core import HypergraphError, dumps, read, write
from .detect import find_berge_book, find_berge_cycle, find_berge_triangle
from .pipeline import ExtractionFailed, run_pipeline
from .search import turan_branch_bound

TOOL = f"bergebook {__version__}"
CSV_FIELDS = ["n", "k", "max_edges", "nodes_explored", "optimal_flag", "seconds",
              "tool", "config"]


class UsageError(Exception):
    pass


def _config(args: argparse.Namespace) -> dict:
    return {key: val for key, val in sorted(vars(args).items()) if key != "func"}


def _dump_json(obj: dict, compact: bool) -> str:
    if compact:
        return json.dumps(obj, separators=(",", ":"))
    return json.dumps(obj, indent=2)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def parse_budget(text: str) -> float:
    """'1s', '250ms', '2m' or a bare number of seconds."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d*)?)\s*(ms|s|m|h)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad time budget {text!r}")
    scale = {"ms": 1e-3, "s": 1.0, "m": 60.0, "h": 3600.0}[m.group(2) or "s"]
    return float(m.group(1)) * scale


# -- subcommands --------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        if args.model == "fig1":
            h = fig1(args.n)
        elif args.model == "sts":
            h = bose_sts(args.n)
        elif args.model == "uniform":
            h = random_hypergraph(UniformM(args.n, args.m), args.seed)
        elif args.model == "linear":
            h = random_hypergraph(LinearGreedy(args.n, args.m), args.seed)
        else:
            h = random_hypergraph(PlantedBook(args.n, args.k, args.m), args.seed)
    except (ValueError, BadOrder, Infeasible) as exc:
        raise UsageError(str(exc)) from exc
    header = [TOOL, "config: " + json.dumps(_config(args), separators=(",", ":"))]
    if args.output:
        write(h, args.output, header)
        print(f"vertices={h.n} edges={len(h)}")
    else:
        sys.stdout.write(dumps(h, header))
        print(f"vertices={h.n} edges={len(h)}", file=sys.stderr)
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    h = read(args.input)
    result: dict = {"found": False}
    if args.book is not None:
        cert = find_berge_book(h, args.book)
        if cert is not None:
            result = {"found": True, "kind": "book", "k": args.book,
                      "certificate": cert.to_json()}
    elif args.cycle is not None:
        cyc = find_berge_cycle(h, args.cycle)
        if cyc is not None:
            result = {"found": True, "kind": "cycle", "length": args.cycle,
                      "certificate": {"core": list(cyc.core),
                                      "edges": [list(e) for e in cyc.edges]}}
    else:
        tri = find_berge_triangle(h)
        if tri is not None:
            result = {"found": True, "kind": "triangle",
                      "certificate": {"core": list(tri.core),
                                      "edges": [list(e) for e in tri.edges]}}
    result["tool"] = TOOL
    result["config"] = _config(args)
    _emit(_dump_json(result, compact=True) + "\n", args.output)
    return 0 if result["found"] else 1


def cmd_extract(args: argparse.Namespace) -> int:
    h = read(args.input)
    try:
        report = run_pipeline(h, args.k)
    except ExtractionFailed as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        print(exc.dump(), file=sys.stderr)
        return 3
    doc = {"tool": TOOL, "config": _config(args), "report": report.to_json()}
    _emit(_dump_json(doc, compact=False) + "\n", args.output)
    return 0


def cmd_turan(args: argparse.Namespace) -> int:
    start = time.monotonic()
    res = turan_branch_bound(args.n, args.k, args.budget,
                             node_budget=args.node_budget, workers=args.workers)
    seconds = f"{time.monotonic() - start:.3f}" if args.timing else ""
    row = {
        "n": res.n, "k": res.k, "max_edges": res.max_edges,
        "nodes_explored": res.nodes_explored,
        "optimal_flag": "true" if res.optimal else "false",
        "seconds": seconds, "tool": TOOL,
        "config": json.dumps(_config(args), separators=(",", ":")),
    }
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    if args.output:
        path = Path(args.output)
        fresh = not path.exists() or path.stat().st_size == 0
        if fresh:
            writer.writeheader()
        writer.writerow(row)
        with path.open("a", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        writer.writeheader()
        writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    if args.witness:
        write(res.witness, args.witness, [TOOL, f"witness for ex_3({res.n}, B_{res.k})"])
    return 0


# -- parser -------------------------------------------------------------------


def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bergebook", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated hypergraph as .3hg")
    g.add_argument("model", choices=["fig1", "sts", "uniform", "linear", "planted"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=0,
                   help="edges (uniform), target edges (linear) or noise edges (planted)")
    g.add_argument("--k", type=_positive, default=2, help="book size for 'planted'")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("detect", help="search a .3hg file for a Berge substructure")
    d.add_argument("input")
    what = d.add_mutually_exclusive_group()
    what.add_argument("--book", type=_positive, metavar="K")
    what.add_argument("--cycle", type=int, metavar="LENGTH")
    what.add_argument("--triangle", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_detect)

    e = sub.add_parser("extract", help="run the extraction / reduction pipeline")
    e.add_argument("input")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_extract)

    t = sub.add_parser("turan", help="exact ex_3(n, B_k) by branch and bound, as CSV")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=_positive, required=True)
    t.add_argument("--budget", type=parse_budget, default=None,
                   help="wall-clock budget, e.g. 1s or 500ms")
    t.add_argument("--node-budget", type=_positive, default=None)
    t.add_argument("--workers", type=_positive, default=1)
    t.add_argument("--timing", action="store_true",
                   help="fill the seconds column (makes output run-dependent)")
    t.add_argument("--witness", help="also write the witness hypergraph here")
    t.add_argument("-o", "--output", help="CSV file to append to")
    t.set_defaults(func=cmd_turan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.model in ("uniform", "linear", "planted") \
            and args.seed is None:
        parser.error(f"gen {args.model} needs an explicit --seed")
    if args.command == "extract" and args.k < 2:
        parser.error("extract needs --k >= 2")
    if args.command == "detect" and args.cycle is not None and args.cycle < 2:
        parser.error("--cycle needs a length >= 2")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bergebook: error: {exc}", file=sys.stderr)
        return 2
    except (HypergraphError, OSError) as exc:
        print(f"bergebook: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
