"""Explicit strong royal colorings for the families with known indexes.

Cycles and paths are built by the doubling / vertex-insertion recursion from
small base colorings; the bases are found by the exact solver, with the path
bases pinned so that they carry the sub-path needed by the odd-cycle step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .coloring import (ColorSet, EdgeColoring, induced, palette_width, verify_strong_royal)
from .graphs import Graph, cartesian_k2, complete, corona, cubic_caterpillar, cycle, gk_graph, path
from .solver import (VertexLabeling, gk_size, intersection_certificate, k_floor, search_labeling,
                     spanning_lift, strong_royal_index)

__all__ = [
    "GkGraph", "gk_build", "gk_size", "gk_degree", "lift_corona", "lift_cartesian_k2",
    "corona_complete", "construct_cycle", "construct_path", "construct_cubic_caterpillar",
    "intersection_coloring", "spanning_lift", "find_cycle_hook",
]


class ConstructionError(RuntimeError):
    """A construction's premise failed (a base coloring could not be derived, ...)."""


def _require_valid(g: Graph, c: EdgeColoring, what: str) -> None:
    bad = verify_strong_royal(g, c)
    if bad:
        raise ValueError(f"{what} is not a strong royal coloring: {bad[0]}")


# --------------------------------------------------------------------------
# G_k


@dataclass(frozen=True)
class GkGraph:
    k: int
    graph: Graph
    labels: tuple[ColorSet, ...]
    partition: tuple[tuple[int, ...], ...]  # partition[i - 1] = vertices with |label| = i
    certificate: EdgeColoring


def gk_build(k: int) -> GkGraph:
    if not 2 <= k <= 10:
        raise ValueError("gk_build supports 2 <= k <= 10")
    g = gk_graph(k)
    labels = tuple(range(1, 1 << k))
    parts = tuple(tuple(v for v in range(g.n) if labels[v].bit_count() == i) for i in range(1, k + 1))
    return GkGraph(k, g, labels, parts, intersection_certificate(g, labels, k))


def gk_degree(k: int, i: int) -> int:
    """Degree in G_k of a vertex whose label has i elements."""
    if not 1 <= i <= k:
        raise ValueError("need 1 <= i <= k")
    return ((1 << i) - 1) * (1 << (k - i)) - 1


def gk_partition_sizes(k: int) -> list[int]:
    return [comb(k, i) for i in range(1, k + 1)]


def intersection_coloring(g: Graph, labels, k: int | None = None) -> EdgeColoring:
    """Edge colors ``l(u) & l(v)``; induces ``l`` whenever every label is covered by its neighbours."""
    if isinstance(labels, VertexLabeling):
        k = labels.palette_k if k is None else k
        labels = labels.labels
    if k is None:
        k = max(x.bit_length() for x in labels)
    return intersection_certificate(g, list(labels), k)


# --------------------------------------------------------------------------
# lifts


def lift_corona(g: Graph, c: EdgeColoring) -> tuple[Graph, EdgeColoring]:
    """Width k -> k+1 coloring of cor(g): old edges gain k+1, pendant i gets c'(v_i)."""
    _require_valid(g, c, "input coloring")
    k = palette_width(c)
    top = 1 << k
    cp = induced(g, c).colors
    h = corona(g)
    colors = {e: s | top for e, s in c.colors.items()}
    colors.update({(i, i + g.n): cp[i] for i in range(g.n)})
    return h, EdgeColoring(k + 1, colors)


def lift_cartesian_k2(g: Graph, c: EdgeColoring) -> tuple[Graph, EdgeColoring]:
    """Width k -> k+1 coloring of g x K_2: copy 2 gains k+1, rung i gets c'(u_i)."""
    _require_valid(g, c, "input coloring")
    k = palette_width(c)
    top = 1 << k
    cp = induced(g, c).colors
    n = g.n
    colors = dict(c.colors)
    colors.update({(u + n, v + n): s | top for (u, v), s in c.colors.items()})
    colors.update({(i, i + n): cp[i] for i in range(n)})
    return cartesian_k2(g), EdgeColoring(k + 1, colors)


def corona_complete(n: int) -> tuple[Graph, EdgeColoring]:
    """Strong royal (k+1)-coloring of cor(K_n) for 2^(k-1) < n < 2^k.

    Pendant edges get the subsets 1, 2, ..., n (as bitmasks, ascending) and
    clique edges get ``{k+1}``.
    """
    if n < 5 or n & (n - 1) == 0:
        raise ValueError("corona_complete needs n >= 5 and n not a power of 2")
    k = k_floor(n)
    g = corona(complete(n))
    colors = {e: 1 << k for e in complete(n).edges}
    colors.update({(i, i + n): i + 1 for i in range(n)})
    return g, EdgeColoring(k + 1, colors)


# --------------------------------------------------------------------------
# paths and cycles

BASE_PATHS = range(7, 16)
BASE_CYCLES = range(3, 14)
_HOOK_LEFT = 0b11  # v_i must contain {1, 2}
_HOOK = (0b11, 0b10)  # v_{i+1} = {1, 2}, v_{i+2} = {2}


def _path_edge_colors(c: EdgeColoring, n: int) -> list[ColorSet]:
    return [c.colors[(i, i + 1)] for i in range(n - 1)]


@lru_cache(maxsize=None)
def _base_path(r: int) -> tuple[tuple[ColorSet, ...], int]:
    """Edge colors of P_r (width k_floor(r)) with the insertion hook; returns (colors, hook index).

    The hook is 0-based position a (1-based i = a + 1, 3 <= i, i + 4 <= r) with
    l(v_a) >= {1,2}, l(v_{a+1}) = {1,2}, l(v_{a+2}) = {2}. The smallest feasible a is used.
    """
    k = k_floor(r)
    g = path(r)
    allowed_left = [x for x in range(1, 1 << k) if x & _HOOK_LEFT == _HOOK_LEFT]
    for a in range(2, r - 4):
        doms = {a: allowed_left, a + 1: [_HOOK[0]], a + 2: [_HOOK[1]]}
        labels = search_labeling(g, k, domains=doms, timeout=120)
        if labels is not None:
            c = intersection_certificate(g, labels, k)
            _require_valid(g, c, f"derived base coloring of P_{r}")
            return tuple(_path_edge_colors(c, r)), a
    raise ConstructionError(f"no base coloring of P_{r} with the insertion hook exists")


def _double(cols: list[ColorSet], k: int) -> list[ColorSet]:
    """P_r (width k-1) -> P_2r (width k): v_1..v_r then u_r..u_1."""
    r = len(cols) + 1
    top = 1 << (k - 1)
    return cols + [cols[-1]] + [s | top for s in reversed(cols)]


@lru_cache(maxsize=None)
def _path_colors(n: int) -> tuple[tuple[ColorSet, ...], int | None]:
    if n < 3:
        raise ValueError("paths need order at least 3")
    if n < 7:
        res = strong_royal_index(path(n))
        return tuple(_path_edge_colors(res.certificate, n)), None
    if n in BASE_PATHS:
        return _base_path(n)
    r = n // 2
    half, hook = _path_colors(r)
    k = k_floor(n)
    cols = _double(list(half), k)
    if n % 2:
        cols.append(1 << (k - 1))  # pendant u_0 coloured {k}
    return tuple(cols), hook


def construct_path(n: int) -> EdgeColoring:
    """Strong royal coloring of P_n with width k_floor(n) (n >= 3)."""
    cols, _ = _path_colors(n)
    c = EdgeColoring(k_floor(n), {(i, i + 1): s for i, s in enumerate(cols)})
    return c


def _doubled_cycle(r: int) -> tuple[EdgeColoring, int | None]:
    half, hook = _path_colors(r)
    k = k_floor(2 * r)
    cols = _double(list(half), k)
    colors = {(i, i + 1): s for i, s in enumerate(cols)}
    colors[(0, 2 * r - 1)] = half[0]
    return EdgeColoring(k, colors), hook


def find_cycle_hook(g: Graph, c: EdgeColoring, r: int, a: int) -> tuple[int, int]:
    """Locate u_{i+1}, u_{i+2} in the doubled cycle and check their colors.

    Raises ConstructionError if the structure expected by the insertion step is absent.
    """
    k = c.k
    top = 1 << (k - 1)
    x, y = 2 * r - 1 - (a + 1), 2 * r - 1 - (a + 2)
    cp = induced(g, c).colors
    want = (_HOOK[0] | top, _HOOK[1] | top, _HOOK[1] | top)
    got = (cp[x], c[(x, y)], cp[y])
    if got != want:
        raise ConstructionError(f"hook absent at u-copy positions {(x, y)}: {got} != {want}")
    return x, y


@lru_cache(maxsize=None)
def _cycle_colors(n: int) -> EdgeColoring:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    if n in BASE_CYCLES:
        return strong_royal_index(cycle(n)).certificate
    r = n // 2
    c2, hook = _doubled_cycle(r)
    if n % 2 == 0:
        return c2
    g2 = cycle(2 * r)
    x, y = find_cycle_hook(g2, c2, r, hook)
    # y = x - 1; insert a vertex between them and shift everything after y
    k = c2.k
    top = 1 << (k - 1)

    def shift(v):
        return v + 1 if v > y else v

    colors = {}
    for (u, v), s in c2.colors.items():
        if {u, v} == {x, y}:
            continue
        a, b = sorted((shift(u), shift(v)))
        colors[(a, b)] = s
    colors[(y, y + 1)] = top
    colors[(y + 1, x + 1)] = top
    return EdgeColoring(k, colors)


def construct_cycle(n: int) -> EdgeColoring:
    """Strong royal coloring of C_n with width sroy(C_n), on :func:`graphs.cycle` numbering."""
    c = _cycle_colors(n)
    _require_valid(cycle(n), c, f"constructed coloring of C_{n}")
    return c


# --------------------------------------------------------------------------
# cubic caterpillars


def _all_one_path(n: int) -> list[ColorSet]:
    """Edge colors of P_n, n = 2^(k-1) >= 4, where every color contains 1 and c'(v_1) = {1}."""
    if n == 4:
        return [0b001, 0b011, 0b101]
    h = n // 2
    half = _all_one_path(h)
    k = k_floor(n)
    top = 1 << (k - 1)
    # c(v_h v_{h+1}) = c'(v_h) = last half edge color (v_h is an end of P_h)
    mirror = [s | top for s in reversed(half)]
    return half + [half[-1]] + mirror


def construct_cubic_caterpillar(n_spine: int) -> EdgeColoring:
    """Strong royal coloring of :func:`graphs.cubic_caterpillar` with width k_floor(2*n_spine - 2)."""
    if n_spine < 3:
        raise ValueError("cubic caterpillar needs a spine of at least 3 vertices")
    s = n_spine
    g = cubic_caterpillar(s)
    spine_graph = path(s)
    if s >= 4 and s & (s - 1) == 0:
        cols = _all_one_path(s)
        k = k_floor(s)
        spine = EdgeColoring(k, {(i, i + 1): x for i, x in enumerate(cols)})
        cp = induced(spine_graph, spine).colors
        colors = dict(spine.colors)
        colors.update({(i, s + i - 1): cp[i] & ~1 for i in range(1, s - 1)})
        c = EdgeColoring(k, colors)
    else:
        spine = construct_path(s)
        k = spine.k
        top = 1 << k
        cp = induced(spine_graph, spine).colors
        colors = {e: x | top for e, x in spine.colors.items()}
        colors.update({(i, s + i - 1): cp[i] for i in range(1, s - 1)})
        c = EdgeColoring(k + 1, colors)
    _require_valid(g, c, f"constructed coloring of the cubic caterpillar with spine {s}")
    return c
