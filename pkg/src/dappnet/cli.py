"""Command-line entry point: ``dappnet <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .export import FORMATS, export_graph
from .graph import GraphOptions
from .pipeline import ScanConfig, ScanError, load_records, scan
from .reports import TARGETS, analyze_report, backbone_report, resilience_report, select_graph

log = logging.getLogger("dappnet")


def _graph_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--include-constructors", action="store_true", help="keep constructor self-calls")
    p.add_argument("--include-global", action="store_true", help="keep contract-scope (Global) calls")
    p.add_argument("--no-external", action="store_true", help="drop calls to the External node")


def _options(args) -> GraphOptions:
    return GraphOptions(
        include_constructors=args.include_constructors,
        include_global=args.include_global,
        include_external=not args.no_external,
    )


def _emit(text: str, out) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dappnet",
        description="Extract contract-call graphs from Solidity DApps and analyze them.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers (env DAPPNET_WORKERS wins)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="scan a DApp directory and write <name>.csv")
    p.add_argument("dir", type=Path)
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--name", help="DApp name (default: directory name)")

    p = sub.add_parser("graph", help="export the dependency graph")
    p.add_argument("source", type=Path, help="DApp directory or call-record CSV")
    p.add_argument("--format", choices=FORMATS, required=True)
    p.add_argument("--target", choices=TARGETS, default="bipartite")
    p.add_argument("--out", help="output file (default: stdout)")
    _graph_flags(p)

    p = sub.add_parser("analyze", help="summary metrics as JSON")
    p.add_argument("source", type=Path)
    p.add_argument("--target", choices=TARGETS, default="bipartite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    _graph_flags(p)

    p = sub.add_parser("backbone", help="disparity-filter backbone as JSON")
    p.add_argument("source", type=Path)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--target", choices=TARGETS, default="functions")
    p.add_argument("--out")
    _graph_flags(p)

    p = sub.add_parser("resilience", help="node-removal curves as JSON")
    p.add_argument("source", type=Path)
    p.add_argument("--strategy", choices=("targeted", "random", "both"), default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--target", choices=TARGETS, default="functions")
    p.add_argument("--out")
    _graph_flags(p)

    p = sub.add_parser("batch", help="scan every subdirectory of ROOT as its own DApp")
    p.add_argument("root", type=Path)
    p.add_argument("--out", type=Path, default=Path("."))
    return parser


def _config(args, inputs, **extra) -> ScanConfig:
    flags = {}
    if hasattr(args, "no_external"):
        flags = dict(
            include_constructors=args.include_constructors,
            include_global=args.include_global,
            include_external=not args.no_external,
        )
    return ScanConfig(inputs=inputs, workers=args.workers, **flags, **extra)


def cmd_scan(args) -> int:
    config = _config(args, [args.dir], out_dir=args.out, name=args.name)
    csv_path, result = scan(config)
    print(result.report.summary())
    print(f"csv: {csv_path}")
    return 0


def cmd_batch(args) -> int:
    if not args.root.is_dir():
        raise ScanError(f"not a directory: {args.root}")
    done = 0
    for sub in sorted(p for p in args.root.iterdir() if p.is_dir()):
        config = _config(args, [sub], out_dir=args.out, name=sub.name)
        try:
            csv_path, result = scan(config)
        except ScanError as exc:
            print(f"{sub.name}: {exc}", file=sys.stderr)
            continue
        report_path = args.out / f"{sub.name}.report.json"
        report_path.write_text(_dump(result.report.to_dict()), encoding="utf-8")
        print(f"{sub.name}: {result.report.records} records, "
              f"{result.report.seconds:.3f}s -> {csv_path}")
        done += 1
    if not done:
        raise ScanError(f"no DApp subdirectories with .sol files under {args.root}")
    return 0


def cmd_graph(args) -> int:
    records, kinds = load_records(args.source, _config(args, [args.source]))
    graph = select_graph(records, args.target, _options(args), kinds)
    _emit(export_graph(graph, args.format, name=args.source.stem), args.out)
    return 0


def cmd_analyze(args) -> int:
    records, kinds = load_records(args.source, _config(args, [args.source]))
    report = analyze_report(records, args.target, _options(args), kinds, seed=args.seed)
    _emit(_dump(report), args.out)
    return 0


def cmd_backbone(args) -> int:
    if not 0 < args.alpha <= 1:
        raise ValueError(f"--alpha must be in (0, 1], got {args.alpha}")
    records, kinds = load_records(args.source, _config(args, [args.source]))
    report = backbone_report(records, args.target, args.alpha, _options(args), kinds)
    _emit(_dump(report), args.out)
    return 0


def cmd_resilience(args) -> int:
    records, kinds = load_records(args.source, _config(args, [args.source], step=args.step, seed=args.seed))
    strategies = ("targeted", "random") if args.strategy == "both" else (args.strategy,)
    report = resilience_report(
        records, args.target, strategies, step=args.step, seed=args.seed,
        options=_options(args), kinds=kinds,
    )
    _emit(_dump(report), args.out)
    return 0


COMMANDS = {
    "scan": cmd_scan,
    "batch": cmd_batch,
    "graph": cmd_graph,
    "analyze": cmd_analyze,
    "backbone": cmd_backbone,
    "resilience": cmd_resilience,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (ScanError, ValueError, OSError) as exc:
        print(f"dappnet {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
