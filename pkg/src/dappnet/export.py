"""Serializers for graphs: GraphML 1.0, Graphviz DOT and a flat JSON edge list.

Output is byte-stable: nodes and edges are written in sorted order and no
timestamps or environment-dependent values are emitted.
"""
from __future__ import annotations

import json
from xml.sax.saxutils import escape, quoteattr

from .graph import BipartiteGraph, ProjectedGraph

FORMATS = ("graphml", "dot", "json-edges")


def _nodes_and_edges(graph):
    """[(id, kind, side)], [(u, v, weight)] for either graph type."""
    if isinstance(graph, BipartiteGraph):
        nodes = [(a, k, "A") for a, k in sorted(graph.nodes_a.items())]
        nodes += [(b, k, "B") for b, k in sorted(graph.nodes_b.items())]
        return nodes, sorted((a, b, w) for (a, b), w in graph.edges.items()), False
    if isinstance(graph, ProjectedGraph):
        nodes = [(u, graph.kind(u), "A" if "." in u else "B") for u in sorted(graph.nodes)]
        return nodes, sorted((u, v, w) for (u, v), w in graph.edges.items()), graph.directed
    raise TypeError(f"cannot export {type(graph).__name__}")


def _num(w) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def to_graphml(graph) -> str:
    nodes, edges, directed = _nodes_and_edges(graph)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns" '
        'xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" '
        'xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns '
        'http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key id="kind" for="node" attr.name="kind" attr.type="string"/>',
        '  <key id="part" for="node" attr.name="part" attr.type="string"/>',
        '  <key id="multiplicity" for="edge" attr.name="multiplicity" attr.type="double"/>',
        f'  <graph id="G" edgedefault="{"directed" if directed else "undirected"}">',
    ]
    for node, kind, side in nodes:
        out.append(
            f"    <node id={quoteattr(node)}>"
            f'<data key="kind">{escape(kind)}</data>'
            f'<data key="part">{side}</data></node>'
        )
    for u, v, w in edges:
        out.append(
            f"    <edge source={quoteattr(u)} target={quoteattr(v)}>"
            f'<data key="multiplicity">{_num(w)}</data></edge>'
        )
    out += ["  </graph>", "</graphml>", ""]
    return "\n".join(out)


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph, name: str = "dapp") -> str:
    nodes, edges, directed = _nodes_and_edges(graph)
    keyword, arrow = ("digraph", "->") if directed else ("graph", "--")
    out = [f"{keyword} {_dot_id(name)} {{"]
    for node, kind, side in nodes:
        shape = "ellipse" if side == "A" else "box"
        out.append(f"  {_dot_id(node)} [shape={shape}, kind={_dot_id(kind)}];")
    for u, v, w in edges:
        out.append(f"  {_dot_id(u)} {arrow} {_dot_id(v)} [weight={_num(w)}];")
    out += ["}", ""]
    return "\n".join(out)


def to_json_edges(graph) -> str:
    _, edges, _ = _nodes_and_edges(graph)
    payload = [
        {"source": u, "target": v, "weight": int(w) if float(w).is_integer() else w}
        for u, v, w in edges
    ]
    return json.dumps(payload, indent=2) + "\n"


def export_graph(graph, fmt: str, name: str = "dapp") -> str:
    if fmt == "graphml":
        return to_graphml(graph)
    if fmt == "dot":
        return to_dot(graph, name)
    if fmt == "json-edges":
        return to_json_edges(graph)
    raise ValueError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
