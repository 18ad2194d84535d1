"""JSON-ready analysis reports; the shapes are documented in docs/report_schema.json."""
from __future__ import annotations

from typing import Mapping, Optional

from .extract import CallRecord
from .graph import (
    GraphOptions,
    build_bipartite,
    out_degree_histogram,
    project_contracts,
    project_functions,
)
from .netanalysis import disparity_backbone, resilience, summary_metrics

TARGETS = ("bipartite", "functions", "contracts")


def select_graph(records, target: str, options: GraphOptions, kinds: Optional[Mapping[str, str]] = None):
    bipartite = build_bipartite(records, options, kinds)
    if target == "bipartite":
        return bipartite
    if target == "functions":
        return project_functions(bipartite)
    if target == "contracts":
        return project_contracts(records, options, kinds)
    raise ValueError(f"unknown target {target!r}; choose one of {', '.join(TARGETS)}")


def _options_dict(options: GraphOptions) -> dict:
    return {
        "include_constructors": options.include_constructors,
        "include_global": options.include_global,
        "include_external": options.include_external,
    }


def analyze_report(
    records: list[CallRecord],
    target: str,
    options: GraphOptions = GraphOptions(),
    kinds: Optional[Mapping[str, str]] = None,
    seed: int = 0,
) -> dict:
    graph = select_graph(records, target, options, kinds)
    metrics = summary_metrics(graph, seed=seed)
    bipartite = build_bipartite(records, options, kinds)
    report = {"report": "analyze", "target": target, "seed": seed, "options": _options_dict(options)}
    report.update(metrics.to_dict())
    report["function_out_degree_histogram"] = {
        str(k): v for k, v in out_degree_histogram(bipartite).items()
    }
    return report


def backbone_report(
    records: list[CallRecord],
    target: str,
    alpha: float,
    options: GraphOptions = GraphOptions(),
    kinds: Optional[Mapping[str, str]] = None,
    keep_degree_one: bool = True,
) -> dict:
    graph = select_graph(records, target, options, kinds)
    result = disparity_backbone(graph, alpha, keep_degree_one=keep_degree_one)
    kept_nodes = sorted({str(x) for e in result.retained for x in e})
    return {
        "report": "backbone",
        "target": target,
        "alpha": alpha,
        "options": _options_dict(options),
        "nodes": len(graph.nodes),
        "edges": len(result.significance),
        "retained_nodes": kept_nodes,
        "retained_edges": [
            {"source": str(u), "target": str(v), "weight": result.weights[(u, v)], "significance": sig}
            for (u, v), sig in result.retained.items()
        ],
        "node_retention": result.node_retention,
        "edge_retention": result.edge_retention,
    }


def resilience_report(
    records: list[CallRecord],
    target: str,
    strategies=("targeted", "random"),
    step: float = 0.02,
    seed: int = 0,
    options: GraphOptions = GraphOptions(),
    kinds: Optional[Mapping[str, str]] = None,
) -> dict:
    graph = select_graph(records, target, options, kinds)
    curves = {}
    for strategy in strategies:
        curve = resilience(graph, strategy, step=step, seed=seed)
        curves[strategy] = {
            "seed": curve.seed,
            "points": [[x, y] for x, y in curve.points],
            "relative": [[x, y] for x, y in curve.relative],
        }
    return {
        "report": "resilience",
        "target": target,
        "step": step,
        "seed": seed,
        "options": _options_dict(options),
        "nodes": len(graph.nodes),
        "curves": curves,
    }
