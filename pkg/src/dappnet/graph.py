"""Bipartite function/contract graph and its one-mode projections."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .extract import CONSTRUCTOR, EXTERNAL, GLOBAL, CallRecord


@dataclass(frozen=True)
class GraphOptions:
    include_constructors: bool = False
    include_global: bool = False
    include_external: bool = True

    def keeps(self, record: CallRecord) -> bool:
        if record.source_function == CONSTRUCTOR and not self.include_constructors:
            return False
        if record.source_function == GLOBAL and not self.include_global:
            return False
        if record.target_contract == EXTERNAL and not self.include_external:
            return False
        return True


_KIND_FOR_SOURCE = {"constructor": "constructor", "global": "global-pseudo"}


@dataclass(frozen=True)
class BipartiteGraph:
    # construct id (`Contract.construct`) -> function | constructor | modifier | global-pseudo
    nodes_a: dict[str, str] = field(default_factory=dict)
    # contract name -> contract | interface | library | external
    nodes_b: dict[str, str] = field(default_factory=dict)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    directed = False

    @property
    def nodes(self) -> list[str]:
        return sorted(self.nodes_a) + sorted(self.nodes_b)

    def neighbors_a(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {a: set() for a in self.nodes_a}
        for a, b in self.edges:
            out[a].add(b)
        return out

    def kind(self, node: str) -> str:
        return self.nodes_a.get(node) or self.nodes_b[node]


@dataclass(frozen=True)
class ProjectedGraph:
    directed: bool
    nodes: tuple[str, ...] = ()
    edges: dict[tuple[str, str], float] = field(default_factory=dict)
    # node -> kind, informational
    kinds: dict[str, str] = field(default_factory=dict)

    def kind(self, node: str) -> str:
        return self.kinds.get(node, "function" if "." in node else "contract")


def _source_kind(record: CallRecord) -> str:
    if record.source_function == CONSTRUCTOR:
        return "constructor"
    if record.source_function == GLOBAL:
        return "global-pseudo"
    return "modifier" if record.source_kind == "modifier" else "function"


def _target_kind(name: str, contract_kinds: Optional[Mapping[str, str]]) -> str:
    if name == EXTERNAL:
        return "external"
    if contract_kinds and name in contract_kinds:
        return contract_kinds[name]
    return "contract"


def build_bipartite(
    records: Iterable[CallRecord],
    options: GraphOptions = GraphOptions(),
    contract_kinds: Optional[Mapping[str, str]] = None,
) -> BipartiteGraph:
    nodes_a: dict[str, str] = {}
    nodes_b: dict[str, str] = {}
    edges: Counter = Counter()
    for r in records:
        if not options.keeps(r):
            continue
        a = r.source_node
        nodes_a.setdefault(a, _source_kind(r))
        nodes_b.setdefault(r.target_contract, _target_kind(r.target_contract, contract_kinds))
        edges[(a, r.target_contract)] += 1
    return BipartiteGraph(
        nodes_a=dict(sorted(nodes_a.items())),
        nodes_b=dict(sorted(nodes_b.items())),
        edges=dict(sorted(edges.items())),
    )


def project_functions(bipartite: BipartiteGraph) -> ProjectedGraph:
    """Construct network: two constructs are linked by the number of contracts both call."""
    by_contract: dict[str, list[str]] = defaultdict(list)
    for a, b in bipartite.edges:
        by_contract[b].append(a)
    weights: Counter = Counter()
    for members in by_contract.values():
        for f, g in combinations(sorted(set(members)), 2):
            weights[(f, g)] += 1
    return ProjectedGraph(
        directed=False,
        nodes=tuple(sorted(bipartite.nodes_a)),
        edges=dict(sorted(weights.items())),
        kinds=dict(bipartite.nodes_a),
    )


def project_contracts(
    records: Iterable[CallRecord],
    options: GraphOptions = GraphOptions(),
    contract_kinds: Optional[Mapping[str, str]] = None,
) -> ProjectedGraph:
    """Directed contract network weighted by the number of surviving records."""
    weights: Counter = Counter()
    nodes: set[str] = set()
    for r in records:
        if not options.keeps(r):
            continue
        nodes.update((r.source_contract, r.target_contract))
        weights[(r.source_contract, r.target_contract)] += 1
    return ProjectedGraph(
        directed=True,
        nodes=tuple(sorted(nodes)),
        edges=dict(sorted(weights.items())),
        kinds={c: _target_kind(c, contract_kinds) for c in sorted(nodes)},
    )


def out_degree_histogram(bipartite: BipartiteGraph) -> dict[int, int]:
    """How many constructs call exactly k distinct contracts."""
    hist = Counter(len(t) for t in bipartite.neighbors_a().values())
    return dict(sorted(hist.items()))
