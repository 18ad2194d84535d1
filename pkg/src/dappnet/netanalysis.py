"""Network measures over the dependency graphs.

All functions accept a ``BipartiteGraph``, a ``ProjectedGraph`` or a plain
symmetric adjacency mapping ``{node: {neighbour: weight}}``. Directed
graphs are symmetrized (weights of both directions summed) and self-loops
are dropped before any measure is taken.
"""
from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

Node = Hashable
Adjacency = dict[Node, dict[Node, float]]


def to_adjacency(graph) -> tuple[Adjacency, bool]:
    """Symmetric, loop-free adjacency plus a flag telling whether the input was directed."""
    if isinstance(graph, Mapping):
        adj: Adjacency = {u: {} for u in graph}
        for u, nbrs in graph.items():
            for v, w in nbrs.items():
                if u == v:
                    continue
                adj.setdefault(v, {})
                adj[u][v] = w
                adj[v][u] = w
        return adj, False
    nodes = list(graph.nodes)
    adj = {u: {} for u in nodes}
    for (u, v), w in graph.edges.items():
        if u == v:
            continue
        adj[u][v] = adj[u].get(v, 0) + w
        if graph.directed:
            adj[v][u] = adj[v].get(u, 0) + w
        else:
            adj[v][u] = adj[u][v]
    return adj, bool(graph.directed)


def _adj(graph) -> Adjacency:
    return to_adjacency(graph)[0]


def edge_list(adj: Adjacency) -> dict[tuple, float]:
    """Each undirected edge once, keyed by (u, v) in first-seen node order."""
    index = {u: i for i, u in enumerate(adj)}
    out = {}
    for u, nbrs in adj.items():
        for v, w in nbrs.items():
            if index[u] < index[v]:
                out[(u, v)] = w
    return out


# -- paths and components ----------------------------------------------------


def bfs_distances(adj: Adjacency, source: Node) -> dict[Node, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(adj: Adjacency) -> list[list[Node]]:
    seen: set = set()
    comps = []
    for u in adj:
        if u in seen:
            continue
        comp = list(bfs_distances(adj, u))
        seen.update(comp)
        comps.append(comp)
    return comps


def largest_component(adj: Adjacency) -> list[Node]:
    comps = connected_components(adj)
    # earliest-seen component wins ties
    return max(comps, key=len) if comps else []


def local_clustering(adj: Adjacency, u: Node) -> float:
    nbrs = list(adj[u])
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = sum(1 for i, v in enumerate(nbrs) for w in nbrs[i + 1 :] if w in adj[v])
    return 2.0 * links / (k * (k - 1))


@dataclass
class MetricsReport:
    nodes: int
    edges: int
    degree_histogram: dict[int, int]
    modularity: Optional[float]
    communities: dict
    diameter: Optional[int]
    average_path_length: Optional[float]
    average_clustering: Optional[float]
    largest_component: int = 0
    symmetrized: bool = False

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "degree_histogram": {str(k): v for k, v in self.degree_histogram.items()},
            "modularity": self.modularity,
            "communities": {str(k): v for k, v in self.communities.items()},
            "community_count": len(set(self.communities.values())),
            "diameter": self.diameter,
            "average_path_length": self.average_path_length,
            "average_clustering": self.average_clustering,
            "largest_component": self.largest_component,
            "symmetrized": self.symmetrized,
        }


def path_metrics(adj: Adjacency) -> tuple[Optional[int], Optional[float], int]:
    """(diameter, average path length, size) of the largest component, in hops."""
    lcc = largest_component(adj)
    if not lcc:
        return None, None, 0
    if len(lcc) == 1:
        return 0, None, 1
    total = 0
    diameter = 0
    for u in lcc:
        dist = bfs_distances(adj, u)
        total += sum(dist.values())
        diameter = max(diameter, max(dist.values()))
    pairs = len(lcc) * (len(lcc) - 1)
    return diameter, total / pairs, len(lcc)


def summary_metrics(graph, seed: int = 0) -> MetricsReport:
    adj, directed = to_adjacency(graph)
    if not adj:
        return MetricsReport(0, 0, {}, None, {}, None, None, None, 0, directed)
    degrees = Counter(len(nbrs) for nbrs in adj.values())
    diameter, apl, lcc = path_metrics(adj)
    q, communities = modularity_communities(adj, seed=seed)
    clustering = sum(local_clustering(adj, u) for u in adj) / len(adj)
    return MetricsReport(
        nodes=len(adj),
        edges=len(edge_list(adj)),
        degree_histogram=dict(sorted(degrees.items())),
        modularity=q,
        communities=communities,
        diameter=diameter,
        average_path_length=apl,
        average_clustering=clustering,
        largest_component=lcc,
        symmetrized=directed,
    )


# -- disparity filter --------------------------------------------------------


@dataclass
class BackboneResult:
    alpha: float
    # every input edge -> its significance (None when both endpoints have degree 1)
    significance: dict[tuple, Optional[float]]
    retained: dict[tuple, Optional[float]]
    weights: dict[tuple, float] = field(default_factory=dict)
    node_retention: float = 0.0
    edge_retention: float = 0.0


def edge_significance(weight: float, strength: float, degree: int) -> float:
    """Probability of a normalized weight at least this large under a uniform split."""
    # (s - w) / s rounds better than 1 - w / s when w/s is a short decimal
    return ((strength - weight) / strength) ** (degree - 1)


def disparity_backbone(graph, alpha: float, keep_degree_one: bool = True) -> BackboneResult:
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    adj = _adj(graph)
    edges = edge_list(adj)
    for (u, v), w in edges.items():
        if not w > 0:
            raise ValueError(f"edge ({u!r}, {v!r}) has non-positive weight {w!r}")
    strength = {u: math.fsum(nbrs.values()) for u, nbrs in adj.items()}
    significance: dict[tuple, Optional[float]] = {}
    retained: dict[tuple, Optional[float]] = {}
    for (u, v), w in edges.items():
        values = [
            edge_significance(w, strength[x], len(adj[x])) for x in (u, v) if len(adj[x]) > 1
        ]
        sig = min(values) if values else None
        significance[(u, v)] = sig
        if sig is None:
            if keep_degree_one:
                retained[(u, v)] = None
        elif sig < alpha:
            retained[(u, v)] = sig
    kept_nodes = {x for e in retained for x in e}
    return BackboneResult(
        alpha=alpha,
        significance=significance,
        retained=retained,
        weights=edges,
        node_retention=len(kept_nodes) / len(adj) if adj else 0.0,
        edge_retention=len(retained) / len(edges) if edges else 0.0,
    )


# -- modularity --------------------------------------------------------------


def modularity(graph, assignment: Mapping[Node, Hashable]) -> Optional[float]:
    """Newman modularity of a partition; None for an edgeless graph."""
    adj = graph if isinstance(graph, dict) else _adj(graph)
    m = sum(w for u, nbrs in adj.items() for v, w in nbrs.items() if u != v) / 2.0
    m += sum(nbrs.get(u, 0) for u, nbrs in adj.items())
    if m == 0:
        return None
    intra: Counter = Counter()
    total: Counter = Counter()
    for u, nbrs in adj.items():
        cu = assignment[u]
        for v, w in nbrs.items():
            if u == v:
                intra[cu] += w
                total[cu] += 2 * w
            else:
                total[cu] += w
                if assignment[v] == cu:
                    intra[cu] += w / 2.0
    return sum(intra[c] / m - (total[c] / (2.0 * m)) ** 2 for c in total)


def _strengths(adj: Adjacency) -> dict[Node, float]:
    return {u: sum(w for v, w in nbrs.items() if v != u) + 2 * nbrs.get(u, 0) for u, nbrs in adj.items()}


def _local_moves(adj: Adjacency, order: list[Node], m: float) -> tuple[dict[Node, Node], bool]:
    k = _strengths(adj)
    comm = {u: u for u in adj}
    tot = dict(k)
    improved = False
    for _ in range(1000):
        moved = False
        for u in order:
            cu = comm[u]
            links: dict[Node, float] = {}
            for v, w in adj[u].items():
                if v != u:
                    links[comm[v]] = links.get(comm[v], 0.0) + w
            tot[cu] -= k[u]
            best = cu
            best_gain = links.get(cu, 0.0) - tot[cu] * k[u] / (2.0 * m)
            for c, kin in links.items():
                gain = kin - tot[c] * k[u] / (2.0 * m)
                if gain > best_gain + 1e-12:
                    best, best_gain = c, gain
            tot[best] += k[u]
            comm[u] = best
            if best != cu:
                moved = improved = True
        if not moved:
            break
    return comm, improved


def _aggregate(adj: Adjacency, comm: dict[Node, Node]) -> tuple[Adjacency, dict[Node, int]]:
    labels: dict[Node, int] = {}
    for u in adj:
        labels.setdefault(comm[u], len(labels))
    new: Adjacency = {i: {} for i in range(len(labels))}
    for u, nbrs in adj.items():
        cu = labels[comm[u]]
        for v, w in nbrs.items():
            cv = labels[comm[v]]
            # off-diagonal edges are seen from both ends
            share = w if u == v else w / 2.0
            if cu == cv:
                new[cu][cu] = new[cu].get(cu, 0.0) + share
            else:
                new[cu][cv] = new[cu].get(cv, 0.0) + share
                new[cv][cu] = new[cu][cv]
    return new, {u: labels[comm[u]] for u in adj}


def modularity_communities(graph, seed: int = 0) -> tuple[Optional[float], dict[Node, int]]:
    """Greedy multilevel (Louvain-style) modularity maximization.

    Node visiting order is a seeded shuffle of the node list, so the result
    is a deterministic function of (graph, seed). Community ids are numbered
    by first appearance in node order.
    """
    adj = _adj(graph)
    nodes = list(adj)
    if not edge_list(adj):
        return None, {u: i for i, u in enumerate(nodes)}
    rng = random.Random(seed)
    m = sum(edge_list(adj).values())
    membership = {u: u for u in nodes}
    level = adj
    while True:
        order = list(level)
        rng.shuffle(order)
        comm, improved = _local_moves(level, order, m)
        if not improved:
            break
        level, relabel = _aggregate(level, comm)
        membership = {u: relabel[membership[u]] for u in nodes}
    ids: dict = {}
    assignment = {u: ids.setdefault(membership[u], len(ids)) for u in nodes}
    return modularity(adj, assignment), assignment


# -- betweenness -------------------------------------------------------------


def betweenness(graph, directed: bool = False) -> dict[Node, float]:
    """Exact shortest-path betweenness (unweighted, unnormalized).

    Undirected pairs are counted once. With ``directed=True`` the input
    mapping is read as out-neighbour lists and ordered pairs are counted.
    """
    if directed and isinstance(graph, Mapping):
        adj = {u: {v: w for v, w in nbrs.items() if v != u} for u, nbrs in graph.items()}
    else:
        adj = _adj(graph)
    bc = {u: 0.0 for u in adj}
    for s in adj:
        stack = []
        preds: dict[Node, list[Node]] = {u: [] for u in adj}
        sigma = dict.fromkeys(adj, 0)
        sigma[s] = 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(adj, 0.0)
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    if not directed:
        bc = {u: b / 2.0 for u, b in bc.items()}
    return bc


# -- resilience --------------------------------------------------------------


@dataclass
class ResilienceCurve:
    strategy: str
    seed: Optional[int]
    step: float
    # (fraction of nodes removed, LCC size / initial LCC size)
    points: list[tuple[float, float]]
    # LCC size / nodes still present, same x positions (None once empty)
    relative: list[tuple[float, Optional[float]]] = field(default_factory=list)

    def lcc_at(self, removed_fraction: float) -> float:
        """LCC fraction at the first recorded point at or beyond ``removed_fraction``."""
        for x, y in self.points:
            if x >= removed_fraction - 1e-12:
                return y
        return self.points[-1][1]


def _remove(adj: Adjacency, victims) -> None:
    for u in victims:
        for v in adj.pop(u):
            adj[v].pop(u, None)


def resilience(
    graph,
    strategy: str = "targeted",
    step: float = 0.02,
    seed: int = 0,
    until: float = 1.0,
) -> ResilienceCurve:
    """Remove ``ceil(step * n)`` nodes per round and track the largest component.

    Targeted removal recomputes betweenness every round (ties by node order);
    random removal follows one seeded permutation. Stops once the removed
    fraction reaches ``until`` (default: the graph is emptied).
    """
    if strategy not in ("targeted", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not 0 < step <= 0.5:
        raise ValueError(f"step fraction must be in (0, 0.5], got {step}")
    adj = {u: dict(nbrs) for u, nbrs in _adj(graph).items()}
    total = len(adj)
    if total == 0:
        raise ValueError("resilience needs a non-empty graph")
    per_round = math.ceil(step * total)
    order = list(adj)
    rank = {u: i for i, u in enumerate(order)}
    random_order = random.Random(seed).sample(order, total)
    initial = len(largest_component(adj))
    points = [(0.0, 1.0)]
    relative: list[tuple[float, Optional[float]]] = [(0.0, initial / total)]
    removed = 0
    while adj and removed / total < until - 1e-12:
        if strategy == "targeted":
            bc = betweenness(adj)
            victims = sorted(adj, key=lambda u: (-bc[u], rank[u]))[:per_round]
        else:
            victims = random_order[removed : removed + per_round]
        _remove(adj, victims)
        removed += len(victims)
        lcc = len(largest_component(adj))
        x = removed / total
        points.append((x, lcc / initial))
        relative.append((x, lcc / len(adj) if adj else None))
    return ResilienceCurve(strategy, seed if strategy == "random" else None, step, points, relative)
