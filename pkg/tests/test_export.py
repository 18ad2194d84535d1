import io
import json
from collections import Counter

import networkx as nx
import pytest

from dappnet.export import FORMATS, export_graph, to_dot, to_graphml, to_json_edges
from dappnet.graph import BipartiteGraph, build_bipartite, project_contracts, project_functions


@pytest.fixture
def three_contracts_graph(scan_fixture):
    return build_bipartite(scan_fixture("three_contracts").records)


def test_dot_statement_counts(three_contracts_graph):
    dot = to_dot(three_contracts_graph, "three_contracts")
    lines = dot.splitlines()
    assert lines[0] == 'graph "three_contracts" {' and lines[-1] == "}"
    node_lines = [l for l in lines if "[shape=" in l]
    edge_lines = [l for l in lines if " -- " in l]
    assert len(node_lines) == 6 and len(edge_lines) == 6
    assert sum("shape=ellipse" in l for l in node_lines) == 3
    assert sum("shape=box" in l for l in node_lines) == 3


def test_directed_dot(scan_fixture):
    dot = to_dot(project_contracts(scan_fixture("ownable").records))
    assert dot.startswith("digraph")
    assert '"Ownable" -> "Ownable" [weight=2];' in dot


def test_graphml_round_trip(three_contracts_graph):
    g = nx.read_graphml(io.BytesIO(to_graphml(three_contracts_graph).encode()))
    assert not g.is_directed()
    assert set(g.nodes) == set(three_contracts_graph.nodes)
    assert g.nodes["Contract1.func1"]["kind"] == "function"
    assert g.nodes["Contract2"]["part"] == "B"
    got = Counter((frozenset((u, v)), d["multiplicity"]) for u, v, d in g.edges(data=True))
    want = Counter((frozenset(e), float(w)) for e, w in three_contracts_graph.edges.items())
    assert got == want


def test_graphml_escapes_and_directed_projection(scan_fixture):
    graph = BipartiteGraph({'A.f"<&>': "function"}, {"B&C": "contract"}, {('A.f"<&>', "B&C"): 3})
    g = nx.read_graphml(io.BytesIO(to_graphml(graph).encode()))
    assert g.edges['A.f"<&>', "B&C"]["multiplicity"] == 3.0
    directed = nx.read_graphml(io.BytesIO(to_graphml(project_contracts(scan_fixture("three_contracts").records)).encode()))
    assert directed.is_directed() and directed.number_of_edges() == 6


def test_json_edges(three_contracts_graph):
    payload = json.loads(to_json_edges(project_functions(three_contracts_graph)))
    assert payload == [
        {"source": "Contract1.func1", "target": "Contract2.func2", "weight": 1},
        {"source": "Contract1.func1", "target": "Contract3.func3", "weight": 1},
        {"source": "Contract2.func2", "target": "Contract3.func3", "weight": 1},
    ]


@pytest.mark.parametrize("fmt", FORMATS)
def test_empty_graph_documents(fmt):
    text = export_graph(BipartiteGraph(), fmt)
    if fmt == "graphml":
        assert nx.read_graphml(io.BytesIO(text.encode())).number_of_nodes() == 0
    elif fmt == "dot":
        assert text == 'graph "dapp" {\n}\n'
    else:
        assert json.loads(text) == []


@pytest.mark.parametrize("fmt", FORMATS)
def test_byte_stable(fmt, scan_fixture):
    a = export_graph(build_bipartite(scan_fixture("mint").records), fmt)
    b = export_graph(build_bipartite(scan_fixture("mint").records), fmt)
    assert a == b


def test_unknown_format():
    with pytest.raises(ValueError, match="unknown format"):
        export_graph(BipartiteGraph(), "svg")
