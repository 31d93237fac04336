"""Exact strong royal / royal index computation.

The search runs over vertex labelings rather than edge colorings. A strong
royal k-edge coloring exists iff there is an injective labeling
``l: V -> nonempty subsets of [k]`` such that

(a) adjacent labels intersect, and
(b) every label is contained in the union of its neighbours' labels.

Given such ``l``, the edge coloring ``c(uv) = l(u) & l(v)`` induces exactly
``l``; conversely the induced coloring of any strong royal coloring is such a
labeling. For royal (non-strong) colorings injectivity is relaxed to
"adjacent labels differ". ``brute_force_exists`` enumerates edge colorings
directly and is kept as an independent check of this equivalence.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .coloring import EdgeColoring, verify_royal, verify_strong_royal
from .graphs import Graph, spanning_tree

log = logging.getLogger(__name__)

DEFAULT_TIMEOUT_S = 300.0
BRUTE_FORCE_GUARD = 10**8


class SearchTimeout(Exception):
    def __init__(self, k: int, nodes: int):
        super().__init__(f"search at k={k} timed out after {nodes} nodes")
        self.k = k
        self.nodes = nodes


class SolveTimeout(Exception):
    """Index computation ran out of time; the index lies in ``[lower, upper]``."""

    def __init__(self, lower: int, upper: int | None, nodes: int):
        super().__init__(f"timed out; index in [{lower}, {upper if upper is not None else '?'}]")
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


class SolverBug(RuntimeError):
    pass


@dataclass(frozen=True)
class VertexLabeling:
    palette_k: int
    labels: tuple[int, ...]


@dataclass
class SolveResult:
    index: int
    certificate: EdgeColoring
    witness_labeling: VertexLabeling
    nodes: int = 0
    ms: int = 0
    mode: str = "strong"


@dataclass
class Classification:
    verdict: str  # royal-zero | royal-one | anomaly
    k_floor: int
    index: int
    method: str  # exact-search | min-degree-shortcut | size-shortcut+search | spanning-tree-bound+search
    certificate: EdgeColoring | None = None
    nodes: int = 0
    ms: int = 0


def k_floor(n: int) -> int:
    """The unique k with 2^(k-1) <= n <= 2^k - 1."""
    if n < 3:
        raise ValueError("k_floor is defined for n >= 3")
    return n.bit_length()


def gk_size(k: int) -> int:
    return (4**k - 3**k - 2**k + 1) // 2


# --------------------------------------------------------------------------
# static infeasibility checks


def _greedy_cliques(g: Graph) -> list[list[int]]:
    """Partition V into cliques, greedily taking the largest greedy clique first."""
    adj = g.adjacency_sets
    left = set(range(g.n))
    parts = []
    while left:
        best: list[int] = []
        for s in sorted(left, key=lambda v: (-len(adj[v] & left), v)):
            cl = [s]
            cand = adj[s] & left
            while cand:
                w = max(cand, key=lambda x: (len(adj[x] & cand), -x))
                cl.append(w)
                cand &= adj[w]
            if len(cl) > len(best):
                best = cl
        parts.append(sorted(best))
        left -= set(best)
    return parts


def clique_infeasible(g: Graph, k: int, strong: bool = True) -> str | None:
    """Reason why no labeling with palette k can exist, or None.

    Labels on a clique form a pairwise-intersecting family of distinct sets, so
    a clique holds at most 2^(k-1) vertices and at most one singleton label.
    In strong mode at least ``n - (2^k - 1 - k)`` singletons are needed, and a
    clique partition into t parts allows at most ``min(k, t)`` of them.
    """
    parts = _greedy_cliques(g)
    big = max(len(p) for p in parts)
    if big > 1 << (k - 1):
        return f"clique of order {big} exceeds the intersecting-family bound {1 << (k - 1)}"
    if strong:
        need = g.n - ((1 << k) - 1 - k)
        if need > min(k, len(parts)):
            return (f"needs {need} singleton labels but a partition into {len(parts)} "
                    f"cliques admits at most {min(k, len(parts))}")
    return None


# --------------------------------------------------------------------------
# labeling search


class _Tables:
    """Per-k lookup tables; label sets are bitsets indexed by label value."""

    _cache: dict[int, "_Tables"] = {}

    def __init__(self, k: int):
        size = (1 << k) - 1
        self.k = k
        self.size = size
        self.full = ((1 << (size + 1)) - 1) & ~1
        self.order = sorted(range(1, size + 1), key=lambda x: (x.bit_count(), x))
        self.compat = [0] * (size + 1)
        for x in range(1, size + 1):
            m = 0
            for y in range(1, size + 1):
                if x & y:
                    m |= 1 << y
            self.compat[x] = m
        self._sub: dict[int, int] = {}
        self._sup: dict[int, int] = {}

    @classmethod
    def get(cls, k: int) -> "_Tables":
        t = cls._cache.get(k)
        if t is None:
            t = cls._cache[k] = cls(k)
        return t

    def subsets(self, u: int) -> int:
        """Labels that are nonempty subsets of ``u``."""
        m = self._sub.get(u)
        if m is None:
            m = 0
            s = u
            while s:
                m |= 1 << s
                s = (s - 1) & u
            self._sub[u] = m
        return m

    def supersets(self, req: int) -> int:
        m = self._sup.get(req)
        if m is None:
            m = 0
            rest = self.size & ~req
            s = rest
            while True:
                m |= 1 << (s | req)
                if s == 0:
                    break
                s = (s - 1) & rest
            self._sup[req] = m
        return m


class _Search:
    def __init__(self, g: Graph, k: int, strong: bool, coverage: bool, symmetry: bool,
                 domains: Mapping[int, Iterable[int]] | None, deadline: float | None):
        self.g = g
        self.k = k
        self.t = _Tables.get(k)
        self.strong = strong
        self.coverage = coverage
        self.symmetry = symmetry and not domains
        self.deadline = deadline
        self.nodes = 0
        self.adj = g.adjacency
        self.deg = g.degrees()
        dom = [self.t.full] * g.n
        for v, allowed in (domains or {}).items():
            m = 0
            for x in allowed:
                if 1 <= x <= self.t.size:
                    m |= 1 << x
            dom[v] &= m
        # state: labels, domains, free-neighbour counts, assigned-neighbour unions, colors used
        self.root = ([0] * g.n, dom, list(self.deg), [0] * g.n, 0)

    def _choose(self, state) -> int:
        lab, dom, free, _, _ = state
        best = -1
        key = None
        for v in range(self.g.n):
            if lab[v]:
                continue
            kv = (dom[v].bit_count(), free[v] - self.deg[v], -self.deg[v])
            if key is None or kv < key:
                key, best = kv, v
        return best

    def _assign(self, state, v: int, x: int):
        lab, dom, free, nbu, tcol = state
        t = self.t
        lab = lab[:]
        dom = dom[:]
        free = free[:]
        nbu = nbu[:]
        lab[v] = x
        bit = 1 << x
        if self.strong:
            nb = ~bit
            for u in range(self.g.n):
                if not lab[u]:
                    dom[u] &= nb
        compat = t.compat[x]
        for w in self.adj[v]:
            nbu[w] |= x
            free[w] -= 1
            if not lab[w]:
                d = dom[w] & compat
                if not self.strong:
                    d &= ~bit
                if self.coverage and free[w] == 0:
                    d &= t.subsets(nbu[w])
                if not d:
                    return None
                dom[w] = d
            elif self.coverage:
                if not self._cover_check(lab, dom, free, nbu, w):
                    return None
        if self.coverage and not self._cover_check(lab, dom, free, nbu, v):
            return None
        unassigned = 0
        union = 0
        for u in range(self.g.n):
            if not lab[u]:
                if not dom[u]:
                    return None
                unassigned += 1
                union |= dom[u]
        if self.strong and union.bit_count() < unassigned:
            return None
        return lab, dom, free, nbu, max(tcol, x.bit_length())

    def _cover_check(self, lab, dom, free, nbu, w) -> bool:
        missing = lab[w] & ~nbu[w]
        if not missing:
            return True
        if free[w] == 0:
            return False
        if free[w] == 1:
            for z in self.adj[w]:
                if not lab[z]:
                    d = dom[z] & self.t.supersets(missing)
                    if not d:
                        return False
                    dom[z] = d
                    break
        return True

    def children(self, state):
        v = self._choose(state)
        d = state[1][v]
        tcol = state[4]
        for x in self.t.order:
            if not d >> x & 1:
                continue
            if self.symmetry:
                high = x >> tcol
                if high & (high + 1):
                    continue
            nxt = self._assign(state, v, x)
            if nxt is not None:
                yield nxt

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 255 and time.monotonic() > self.deadline:
            raise SearchTimeout(self.k, self.nodes)
        if _STOP is not None and not self.nodes & 1023 and _STOP.is_set():
            raise _Stopped()

    def run(self, state=None) -> list[int] | None:
        state = self.root if state is None else state
        if any(not d for d in state[1]):
            return None
        return self._dfs(state, sum(1 for x in state[0] if not x))

    def _dfs(self, state, left: int) -> list[int] | None:
        self._tick()
        if left == 0:
            return state[0]
        for child in self.children(state):
            found = self._dfs(child, left - 1)
            if found is not None:
                return found
        return None

    def frontier(self, depth: int) -> list:
        """Search states at the given depth, in DFS order (for splitting work)."""
        level = [self.root]
        for _ in range(depth):
            level = [c for s in level for c in self.children(s)]
        return level


class _Stopped(Exception):
    pass


_STOP = None


def _pool_init(stop):
    global _STOP
    _STOP = stop


def _pool_task(args):
    g, k, strong, coverage, symmetry, domains, deadline, state = args
    s = _Search(g, k, strong, coverage, symmetry, domains, deadline)
    try:
        return s.run(state), s.nodes, False
    except SearchTimeout:
        return None, s.nodes, True
    except _Stopped:
        return None, s.nodes, False


def search_labeling(g: Graph, k: int, *, strong: bool = True, coverage: bool = True,
                    symmetry: bool = True, domains: Mapping[int, Iterable[int]] | None = None,
                    timeout: float | None = None, workers: int = 1,
                    stats: dict | None = None) -> list[int] | None:
    """Find a labeling meeting the constraints, or None if none exists.

    ``domains`` pins vertices to allowed label values (disables symmetry
    breaking). ``coverage=False`` drops the union-cover condition, which turns
    the search into an embedding test into the intersection graph of [k].
    Raises :class:`SearchTimeout` when ``timeout`` seconds elapse.
    """
    if stats is None:
        stats = {}
    stats.setdefault("nodes", 0)
    if strong and g.n > (1 << k) - 1:
        return None
    reason = clique_infeasible(g, k, strong)
    if reason:
        log.debug("k=%d infeasible without search: %s", k, reason)
        stats["pruned"] = reason
        return None
    deadline = None if timeout is None else time.monotonic() + timeout
    s = _Search(g, k, strong, coverage, symmetry, domains, deadline)
    if workers <= 1:
        try:
            return s.run()
        finally:
            stats["nodes"] += s.nodes
    return _parallel(s, workers, stats, (g, k, strong, coverage, symmetry, domains, deadline))


def _parallel(s: _Search, workers: int, stats: dict, args) -> list[int] | None:
    depth = 1
    tasks = s.frontier(depth)
    while 0 < len(tasks) < 4 * workers and depth < min(3, s.g.n - 1):
        depth += 1
        tasks = s.frontier(depth)
    stats["nodes"] += s.nodes
    done = [t[0] for t in tasks if all(t[0])]
    if done:
        return done[0]
    if not tasks:
        return None
    ctx = mp.get_context("fork")
    stop = ctx.Event()
    timed_out = False
    with ctx.Pool(workers, initializer=_pool_init, initargs=(stop,)) as pool:
        for found, nodes, to in pool.imap(_pool_task, [args + (t,) for t in tasks]):
            stats["nodes"] += nodes
            timed_out |= to
            if found is not None:
                stop.set()
                pool.terminate()
                return found
    if timed_out:
        raise SearchTimeout(s.k, stats["nodes"])
    return None


def intersection_certificate(g: Graph, labels: list[int] | tuple[int, ...], k: int) -> EdgeColoring:
    colors = {}
    for u, v in g.edges:
        s = labels[u] & labels[v]
        if not s:
            raise ValueError(f"adjacent labels at {(u, v)} are disjoint")
        colors[(u, v)] = s
    return EdgeColoring(k, colors)


def _check_input(g: Graph) -> None:
    if g.n < 3:
        raise ValueError("royal colorings need order at least 3")
    if not g.is_connected():
        raise ValueError("graph is disconnected")


def _solve_level(g: Graph, k: int, strong: bool, timeout: float | None, workers: int,
                 stats: dict) -> SolveResult | None:
    t0 = time.perf_counter()
    before = stats.get("nodes", 0)
    labels = search_labeling(g, k, strong=strong, timeout=timeout, workers=workers, stats=stats)
    if labels is None:
        return None
    cert = intersection_certificate(g, labels, k)
    bad = (verify_strong_royal if strong else verify_royal)(g, cert)
    if bad:
        raise SolverBug(f"search produced an invalid certificate: {bad[0]}")
    return SolveResult(k, cert, VertexLabeling(k, tuple(labels)), stats["nodes"] - before,
                       int((time.perf_counter() - t0) * 1000), "strong" if strong else "royal")


def exists_strong_royal(g: Graph, k: int, *, timeout: float | None = DEFAULT_TIMEOUT_S,
                        workers: int = 1) -> SolveResult | None:
    _check_input(g)
    if not 1 <= k <= 16:
        raise ValueError("k must lie in 1..16")
    if g.n > (1 << k) - 1:
        raise ValueError(f"order {g.n} exceeds 2^{k}-1 nonempty subsets; infeasible by pigeonhole")
    return _solve_level(g, k, True, timeout, workers, {})


def exists_royal(g: Graph, k: int, *, timeout: float | None = DEFAULT_TIMEOUT_S,
                 workers: int = 1) -> SolveResult | None:
    _check_input(g)
    if not 1 <= k <= 16:
        raise ValueError("k must lie in 1..16")
    return _solve_level(g, k, False, timeout, workers, {})


def _index(g: Graph, strong: bool, start: int, timeout: float | None, workers: int) -> SolveResult:
    _check_input(g)
    stats: dict = {}
    t0 = time.perf_counter()
    cap = k_floor(g.n) + 3
    for k in range(start, cap + 1):
        try:
            res = _solve_level(g, k, strong, timeout, workers, stats)
        except SearchTimeout:
            raise SolveTimeout(k, k_floor(g.n) + 2 if strong else None, stats["nodes"]) from None
        if res is not None:
            res.nodes = stats["nodes"]
            res.ms = int((time.perf_counter() - t0) * 1000)
            return res
    raise SolverBug(f"no coloring found up to k={cap}; exceeds the known k_floor+2 bound")


def strong_royal_index(g: Graph, *, timeout: float | None = DEFAULT_TIMEOUT_S,
                       workers: int = 1) -> SolveResult:
    """sroy(g): tries k = k_floor(n), k_floor(n) + 1, ... and returns the first success."""
    _check_input(g)
    return _index(g, True, k_floor(g.n), timeout, workers)


def royal_index(g: Graph, *, timeout: float | None = DEFAULT_TIMEOUT_S, workers: int = 1) -> SolveResult:
    """roy(g): minimum k admitting a royal k-edge coloring."""
    return _index(g, False, 1, timeout, workers)


def brute_force_exists(g: Graph, k: int, strong: bool) -> bool:
    """Enumerate every edge coloring with nonempty subsets of [k] (oracle only)."""
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    size = (1 << k) - 1
    if size**g.m > BRUTE_FORCE_GUARD:
        raise ValueError(f"{size}^{g.m} colorings exceeds the brute-force guard")
    n = g.n
    edges = g.edges
    for colors in product(range(1, size + 1), repeat=g.m):
        vc = [0] * n
        for (u, v), s in zip(edges, colors):
            vc[u] |= s
            vc[v] |= s
        if strong:
            if len(set(vc)) == n:
                return True
        elif all(vc[u] != vc[v] for u, v in edges):
            return True
    return False


def spanning_lift(g: Graph, tree_cert: EdgeColoring) -> EdgeColoring:
    """Width-(k+1) coloring of g from a width-k strong royal coloring of a spanning subgraph.

    Edges outside the subgraph get ``{k+1}``; a vertex then shows either its old
    color or its old color plus ``k+1``, which keeps all vertex colors distinct.
    """
    k = tree_cert.k
    top = 1 << k
    colors = {e: tree_cert.colors.get(e, top) for e in g.edges}
    return EdgeColoring(k + 1, colors)


def spanning_tree_upper(g: Graph, samples: int = 4, *, timeout: float | None = DEFAULT_TIMEOUT_S) -> int:
    """1 + min sroy(T) over BFS, DFS and ``samples`` random spanning trees."""
    _check_input(g)
    trees = {spanning_tree(g, "bfs"), spanning_tree(g, "dfs")}
    trees |= {spanning_tree(g, "random", seed=i) for i in range(samples)}
    best = min(strong_royal_index(t, timeout=timeout).index for t in sorted(trees, key=lambda t: t.edges))
    return best + 1


def gk_membership_bound(g: Graph, k: int | None = None, *,
                        timeout: float | None = DEFAULT_TIMEOUT_S) -> bool:
    """Does g embed in the intersection graph on nonempty subsets of [k]?

    False certifies sroy(g) > k.
    """
    _check_input(g)
    k = k_floor(g.n) if k is None else k
    labels = search_labeling(g, k, strong=True, coverage=False, timeout=timeout)
    return labels is not None


def _verdict(index: int, kf: int) -> str:
    return {0: "royal-zero", 1: "royal-one"}.get(index - kf, "anomaly" if index > kf else "below-floor")


def classify(g: Graph, *, timeout: float | None = DEFAULT_TIMEOUT_S, workers: int = 1,
             certify: bool = False) -> Classification:
    """royal-zero / royal-one / anomaly, using shortcuts before exact search.

    With ``certify=True`` the min-degree shortcut also produces a certificate.
    """
    _check_input(g)
    t0 = time.perf_counter()
    n, m = g.n, g.m
    kf = k_floor(n)
    stats: dict = {"nodes": 0}

    def done(index, method, cert):
        if cert is not None:
            bad = verify_strong_royal(g, cert)
            if bad:
                raise SolverBug(f"{method} produced an invalid certificate: {bad[0]}")
        return Classification(_verdict(index, kf), kf, index, method, cert, stats["nodes"],
                              int((time.perf_counter() - t0) * 1000))

    def level(k):
        try:
            return _solve_level(g, k, True, timeout, workers, stats)
        except SearchTimeout:
            raise SolveTimeout(k, kf + 2, stats["nodes"]) from None

    def upper_via_tree():
        for strategy in ("bfs", "dfs"):
            tree = spanning_tree(g, strategy)
            if tree == g:
                return None
            try:
                res = _solve_level(tree, kf, True, timeout, 1, stats)
            except SearchTimeout:
                continue
            if res is not None:
                return spanning_lift(g, res.certificate)
        return None

    if n >= 4 and min(g.degrees()) >= 1 << (kf - 1):
        cert = None
        if certify:
            cert = upper_via_tree()
            if cert is None:
                res = level(kf + 1)
                cert = res.certificate if res else None
            if cert is None:
                raise SolverBug("min-degree shortcut claims k+1 but no certificate found")
        return done(kf + 1, "min-degree-shortcut", cert)

    if n >= 4 and m > gk_size(kf):
        method = "size-shortcut+search"
        start = kf + 1
    else:
        method = "exact-search"
        res = level(kf)
        if res is not None:
            return done(kf, method, res.certificate)
        cert = upper_via_tree()
        if cert is not None:
            return done(kf + 1, "spanning-tree-bound+search", cert)
        start = kf + 1
    for k in range(start, kf + 4):
        res = level(k)
        if res is not None:
            if k >= kf + 2:
                log.warning("anomaly: sroy=%d exceeds k_floor+1=%d", k, kf + 1)
            return done(k, method, res.certificate)
    raise SolverBug(f"no strong royal coloring up to k={kf + 3}")
