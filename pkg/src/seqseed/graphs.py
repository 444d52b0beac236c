"""Undirected simple graphs: loading, generation, components, serialization."""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, TextIO, Tuple


class GraphParseError(ValueError):
    """Malformed edge-list input."""


class ParameterError(ValueError):
    """Generator or strategy parameter outside its valid range."""


class Graph:
    """Immutable undirected simple graph with dense node ids 0..n-1.

    Adjacency lists are kept sorted so traversal order is deterministic.
    `labels[i]` is the external label node i was loaded with (stringified id
    for generated graphs). `dropped_self_loops` / `dropped_duplicates` report
    how much cleanup the loader did.
    """

    def __init__(self, node_count: int, edges: Iterable[Tuple[int, int]],
                 labels: Optional[Sequence[str]] = None):
        if node_count < 1:
            raise ParameterError("graph needs at least one node")
        adjacency: List[List[int]] = [[] for _ in range(node_count)]
        seen = set()
        for u, v in edges:
            if u == v or (u, v) in seen or (v, u) in seen:
                raise ValueError("Graph constructor expects clean simple edges")
            seen.add((u, v))
            adjacency[u].append(v)
            adjacency[v].append(u)
        for lst in adjacency:
            lst.sort()
        self.node_count = node_count
        self.adjacency = adjacency
        self.edge_count = len(seen)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(node_count)]
        self.dropped_self_loops = 0
        self.dropped_duplicates = 0

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterable[Tuple[int, int]]:
        for u, neigh in enumerate(self.adjacency):
            for v in neigh:
                if u < v:
                    yield (u, v)


def load_edge_list(source) -> Graph:
    """Parse an edge list (one `u v` pair per line, '#' comments).

    Labels are mapped to dense ids in first-appearance order. Self-loops and
    duplicate edges are dropped; the counts are kept on the returned graph.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = list(source)
    label_ids = {}
    labels: List[str] = []
    edge_set = set()
    self_loops = 0
    duplicates = 0
    saw_data = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        saw_data = True
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected two labels, got {len(parts)}")
        ids = []
        for lab in parts:
            if lab not in label_ids:
                label_ids[lab] = len(labels)
                labels.append(lab)
            ids.append(label_ids[lab])
        u, v = ids
        if u == v:
            self_loops += 1
            continue
        key = (min(u, v), max(u, v))
        if key in edge_set:
            duplicates += 1
            continue
        edge_set.add(key)
    if not saw_data:
        raise GraphParseError("empty edge list")
    g = Graph(len(labels), sorted(edge_set), labels)
    g.dropped_self_loops = self_loops
    g.dropped_duplicates = duplicates
    return g


def serialize(graph: Graph, out: TextIO) -> None:
    """Write the edge set back, one edge per line, using the retained labels."""
    labels = graph.labels
    for u, v in graph.edges():
        out.write(f"{labels[u]} {labels[v]}\n")


def generate_ba(n: int, m: int, rng) -> Graph:
    """Barabasi-Albert preferential attachment.

    Starts from a clique on m0 = min(max(m, 3), n) nodes; every later node
    attaches to m distinct existing nodes chosen with probability proportional
    to degree. Result is simple and connected.
    """
    if m < 1:
        raise ParameterError("m must be >= 1")
    if n <= m:
        raise ParameterError("need n > m")
    m0 = min(max(m, 3), n)
    edges = [(i, j) for i in range(m0) for j in range(i + 1, m0)]
    # each node appears once per incident edge; sampling from this list is
    # degree-proportional
    repeated: List[int] = []
    for u, v in edges:
        repeated.append(u)
        repeated.append(v)
    for new in range(m0, n):
        targets = set()
        while len(targets) < m:
            targets.add(repeated[int(rng.random() * len(repeated))])
        for t in sorted(targets):
            edges.append((t, new))
            repeated.append(t)
            repeated.append(new)
    return Graph(n, edges)


def generate_er(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p): each unordered pair independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must be in [0, 1]")
    if n < 1:
        raise ParameterError("need n >= 1")
    rand = rng.random
    edges = []
    if p > 0.0:
        for u in range(n):
            for v in range(u + 1, n):
                if rand() < p:
                    edges.append((u, v))
    return Graph(n, edges)


def components(graph: Graph) -> List[List[int]]:
    """Connected components as sorted node lists, ordered by smallest member."""
    seen = bytearray(graph.node_count)
    out = []
    adj = graph.adjacency
    for start in range(graph.node_count):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    comp.append(v)
                    stack.append(v)
        comp.sort()
        out.append(comp)
    return out
