"""Simple undirected graphs, family generators and graph operations.

Vertex numbering is fixed per generator so certificates are reproducible:

* path / cycle: traversal order ``0-1-...-(n-1)`` (cycle closes ``(n-1, 0)``)
* complete: ``0..n-1``
* star: centre ``0``, leaves ``1..n-1`` (``n`` is the order)
* hypercube ``Q_k``: vertex ``x`` is the k-bit integer, adjacent to ``x ^ (1 << b)``;
  this coincides with iterating :func:`cartesian_k2` from ``K_2``
* gk: vertex ``i`` carries the subset whose bitmask is ``i + 1``
* cubic_caterpillar: spine ``0..s-1``, pendant of spine vertex ``i`` is ``s + i - 1``
* corona: pendant of ``i`` is ``i + n``; cartesian_k2: copy-2 of ``i`` is ``i + n``
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]

FAMILIES = ("path", "cycle", "complete", "star", "hypercube", "gk", "cubic_caterpillar")


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored as a sorted tuple of ``(u, v)`` pairs with ``u < v``.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            e = edge_key(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def is_connected(self) -> bool:
        return len(_bfs_order(self, 0)) == self.n

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges + (edge_key(u, v),))

    def complement(self) -> "Graph":
        return Graph(self.n, [e for e in combinations(range(self.n), 2) if not self.has_edge(*e)])

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    parameter: int

    def __post_init__(self):
        lo = {"path": 3, "cycle": 3, "complete": 1, "star": 2, "hypercube": 1, "gk": 2,
              "cubic_caterpillar": 3}
        if self.family not in lo:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.parameter < lo[self.family]:
            raise ValueError(f"{self.family} needs parameter >= {lo[self.family]}, got {self.parameter}")


@dataclass(frozen=True)
class Metrics:
    order: int
    size: int
    min_degree: int
    max_degree: int
    connected: bool
    diameter: float  # math.inf when disconnected


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def star(n: int) -> Graph:
    """Star of order ``n`` (``K_{1,n-1}``)."""
    return Graph(n, [(0, i) for i in range(1, n)])


def hypercube(k: int) -> Graph:
    if k < 1:
        raise ValueError("hypercube needs k >= 1")
    n = 1 << k
    return Graph(n, [(x, x ^ (1 << b)) for x in range(n) for b in range(k) if x < x ^ (1 << b)])


def gk_graph(k: int) -> Graph:
    """Intersection graph on the nonempty subsets of [k]; vertex i has subset i + 1."""
    if k < 1:
        raise ValueError("gk needs k >= 1")
    size = (1 << k) - 1
    return Graph(size, [(i, j) for i in range(size) for j in range(i + 1, size) if (i + 1) & (j + 1)])


def cubic_caterpillar(n_spine: int) -> Graph:
    if n_spine < 3:
        raise ValueError("cubic caterpillar needs a spine of at least 3 vertices")
    edges = [(i, i + 1) for i in range(n_spine - 1)]
    edges += [(i, n_spine + i - 1) for i in range(1, n_spine - 1)]
    return Graph(2 * n_spine - 2, edges)


def corona(g: Graph) -> Graph:
    n = g.n
    return Graph(2 * n, list(g.edges) + [(i, i + n) for i in range(n)])


def cartesian_k2(g: Graph) -> Graph:
    n = g.n
    edges = list(g.edges) + [(u + n, v + n) for u, v in g.edges] + [(i, i + n) for i in range(n)]
    return Graph(2 * n, edges)


_BUILDERS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "hypercube": hypercube,
    "gk": gk_graph,
    "cubic_caterpillar": cubic_caterpillar,
}


def generate(spec: GeneratorSpec | str, parameter: int | None = None) -> Graph:
    if isinstance(spec, str):
        spec = GeneratorSpec(spec.replace("-", "_"), int(parameter))
    return _BUILDERS[spec.family](spec.parameter)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of free trees of order ``n``.

    Backed by networkx's level-sequence generator (Wright-Richmond-Odlyzko-McKay),
    so the output order is deterministic.
    """
    if not 1 <= n <= 18:
        raise ValueError("tree enumeration supports 1 <= n <= 18")
    if n == 1:
        yield Graph(1)
        return
    import networkx as nx

    for t in nx.nonisomorphic_trees(n):
        yield Graph(n, t.edges())


def _bfs_order(g: Graph, source: int) -> list[int]:
    seen = [False] * g.n
    seen[source] = True
    order = [source]
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                q.append(w)
    return order


def _eccentricity(g: Graph, source: int) -> int:
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return max(dist)


def metrics(g: Graph) -> Metrics:
    degs = g.degrees()
    connected = g.is_connected()
    diameter = max(_eccentricity(g, v) for v in range(g.n)) if connected else float("inf")
    return Metrics(g.n, g.m, min(degs), max(degs), connected, diameter)


def spanning_tree(g: Graph, strategy: str = "bfs", seed: int | None = None, root: int = 0) -> Graph:
    """Spanning tree by BFS, DFS, or randomised DFS (``strategy='random'``)."""
    if not g.is_connected():
        raise ValueError("spanning tree requires a connected graph")
    rng = random.Random(seed)
    if strategy == "random":
        root = rng.randrange(g.n)
    parent = {root: None}
    edges = []
    if strategy == "bfs":
        q = deque([root])
        while q:
            u = q.popleft()
            for w in g.adjacency[u]:
                if w not in parent:
                    parent[w] = u
                    edges.append((u, w))
                    q.append(w)
    elif strategy in ("dfs", "random"):
        stack = [(root, None)]
        visited = set()
        while stack:
            u, p = stack.pop()
            if u in visited:
                continue
            visited.add(u)
            if p is not None:
                edges.append((p, u))
            nbrs = list(g.adjacency[u])
            if strategy == "random":
                rng.shuffle(nbrs)
            else:
                nbrs.reverse()
            stack.extend((w, u) for w in nbrs if w not in visited)
    else:
        raise ValueError(f"unknown spanning tree strategy {strategy!r}")
    return Graph(g.n, edges)
