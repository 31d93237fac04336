"""Set-valued colors, the induced vertex coloring and certificate verification.

A color set over ``[k] = {1..k}`` is stored as an ``int`` bitmask with bit
``i - 1`` standing for color ``i``; so ``{1, 3}`` is ``0b101``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graphs import Edge, Graph, edge_key

ColorSet = int

K_MAX = 16


def colorset(*colors: int) -> ColorSet:
    """``colorset(1, 3) == 0b101``."""
    mask = 0
    for c in colors:
        if not 1 <= c <= K_MAX:
            raise ValueError(f"color {c} outside 1..{K_MAX}")
        mask |= 1 << (c - 1)
    return mask


def from_list(colors: Iterable[int]) -> ColorSet:
    return colorset(*colors)


def to_list(mask: ColorSet) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def fmt(mask: ColorSet) -> str:
    """Compact figure-style name: ``{1,2,4}`` -> ``"124"``; two-digit colors are comma separated."""
    cols = to_list(mask)
    sep = "" if all(c < 10 for c in cols) else ","
    return sep.join(map(str, cols)) or "{}"


def width(mask: ColorSet) -> int:
    """Largest color in the set."""
    return mask.bit_length()


@dataclass(frozen=True)
class EdgeColoring:
    k: int
    colors: Mapping[Edge, ColorSet]

    def __getitem__(self, e: Edge) -> ColorSet:
        return self.colors[edge_key(*e)]

    def to_json(self, n: int, **extra) -> dict:
        return certificate_dict(n, self, **extra)


@dataclass(frozen=True)
class VertexColoring:
    k: int
    colors: tuple[ColorSet, ...]

    def __getitem__(self, v: int) -> ColorSet:
        return self.colors[v]


@dataclass(frozen=True)
class Violation:
    kind: str  # adjacent-equal | duplicate-pair | empty-color | palette-overflow | non-singleton-edge | missing-edge
    witness: tuple[int, int]
    detail: str = field(default="", compare=False)

    def __str__(self) -> str:
        return f"{self.kind} {self.witness}" + (f": {self.detail}" if self.detail else "")


class ColoringError(ValueError):
    """Precondition failure (isolated vertex, uncoloured edge, ...), distinct from a violation."""


def make_coloring(k: int, colors: Mapping[Edge, ColorSet] | Iterable[tuple[Edge, ColorSet]]) -> EdgeColoring:
    items = colors.items() if isinstance(colors, Mapping) else colors
    return EdgeColoring(k, {edge_key(*e): c for e, c in items})


def palette_width(c: EdgeColoring) -> int:
    return max((width(s) for s in c.colors.values()), default=0)


def induced(g: Graph, c: EdgeColoring) -> VertexColoring:
    missing = [e for e in g.edges if e not in c.colors]
    if missing:
        raise ColoringError(f"edge {missing[0]} has no color")
    out = [0] * g.n
    for u, v in g.edges:
        s = c.colors[(u, v)]
        out[u] |= s
        out[v] |= s
    for v in range(g.n):
        if not g.adjacency[v]:
            raise ColoringError(f"vertex {v} is isolated; its induced color is undefined")
    return VertexColoring(c.k, tuple(out))


def _check_pre(g: Graph, c: EdgeColoring) -> None:
    if g.n < 3:
        raise ColoringError("royal colorings are defined for graphs of order at least 3")
    if not g.is_connected():
        raise ColoringError("graph is disconnected")
    extra = [e for e in c.colors if e not in set(g.edges)]
    if extra:
        raise ColoringError(f"coloring names non-edge {extra[0]}")


def _edge_violations(g: Graph, c: EdgeColoring, singleton: bool) -> list[Violation]:
    out = []
    limit = (1 << c.k) - 1
    for e in g.edges:
        s = c.colors[e]
        if s == 0:
            out.append(Violation("empty-color", e))
        elif s & ~limit:
            out.append(Violation("palette-overflow", e, f"{to_list(s)} exceeds k={c.k}"))
        elif singleton and s & (s - 1):
            out.append(Violation("non-singleton-edge", e, str(to_list(s))))
    return out


def verify_royal(g: Graph, c: EdgeColoring) -> list[Violation]:
    """All violations of properness of the induced coloring (empty list = valid)."""
    return _verify(g, c, strong=False, singleton=False)


def verify_strong_royal(g: Graph, c: EdgeColoring) -> list[Violation]:
    """All pairs of vertices sharing an induced color, plus malformed edge colors."""
    return _verify(g, c, strong=True, singleton=False)


def verify_singleton_mode(g: Graph, c: EdgeColoring, strong: bool) -> list[Violation]:
    """Majestic-style check: as royal / strong royal, but every edge color must be a singleton."""
    return _verify(g, c, strong=strong, singleton=True)


def _verify(g: Graph, c: EdgeColoring, strong: bool, singleton: bool) -> list[Violation]:
    _check_pre(g, c)
    cp = induced(g, c).colors
    out = _edge_violations(g, c, singleton)
    if strong:
        by_color: dict[int, list[int]] = {}
        for v, s in enumerate(cp):
            by_color.setdefault(s, []).append(v)
        for s, vs in by_color.items():
            for i, u in enumerate(vs):
                for w in vs[i + 1:]:
                    out.append(Violation("duplicate-pair", (u, w), f"both induced {to_list(s)}"))
        out.sort(key=lambda x: (x.kind != "duplicate-pair", x.witness))
    else:
        for u, v in g.edges:
            if cp[u] == cp[v]:
                out.append(Violation("adjacent-equal", (u, v), f"both induced {to_list(cp[u])}"))
    return out


def certificate_dict(n: int, c: EdgeColoring, **extra) -> dict:
    d = {"n": n, "k": c.k, "edges": [[u, v, to_list(s)] for (u, v), s in sorted(c.colors.items())]}
    d.update(extra)
    return d


def certificate_from_dict(d: dict) -> tuple[int, EdgeColoring]:
    """Parse ``{"n", "k", "edges": [[u, v, [colors]], ...]}``; returns ``(n, coloring)``."""
    try:
        n, k, rows = int(d["n"]), int(d["k"]), d["edges"]
        colors = {}
        for row in rows:
            u, v, cols = row
            e = edge_key(int(u), int(v))
            if e in colors:
                raise ValueError(f"edge {e} listed twice")
            colors[e] = from_list(int(x) for x in cols)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed certificate: {exc}") from None
    if k < 1 or n < 1:
        raise ValueError("malformed certificate: n and k must be positive")
    return n, EdgeColoring(k, colors)


def dumps_certificate(n: int, c: EdgeColoring, **extra) -> str:
    return json.dumps(certificate_dict(n, c, **extra))


def to_dot(g: Graph, c: EdgeColoring, name: str = "G") -> str:
    """DOT rendering with edge labels and induced vertex colors as node labels."""
    cp = induced(g, c).colors
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{v}: {fmt(cp[v])}"];')
    for u, v in g.edges:
        lines.append(f'  {u} -- {v} [label="{fmt(c.colors[(u, v)])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
