"""Reference values and explicit colorings, recomputed as a regression table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import constructions as con
from .coloring import colorset, palette_width, verify_strong_royal
from .graphs import (Graph, cartesian_k2, complete, corona, cubic_caterpillar, cycle, hypercube)
from .solver import classify, gk_size, k_floor, strong_royal_index

# K_6 x K_2 vertex colors: u_1..u_6 are vertices 0..5, v_1..v_6 are 6..11
K6K2_LABELS = (
    colorset(1, 4), colorset(1), colorset(1, 2, 4), colorset(1, 2, 3), colorset(1, 3), colorset(1, 2),
    colorset(4), colorset(1, 3, 4), colorset(1, 2, 3, 4), colorset(2, 4), colorset(3, 4), colorset(2, 3, 4),
)


def k6k2_certificate():
    g = cartesian_k2(complete(6))
    return g, con.intersection_coloring(g, K6K2_LABELS, 4)


def cycle_index_formula(n: int) -> int:
    return k_floor(n) + (1 if n in (3, 7) else 0)


def chords_of_c7() -> list[tuple[int, int]]:
    c7 = cycle(7)
    return [(u, v) for u in range(7) for v in range(u + 1, 7) if not c7.has_edge(u, v)]


@dataclass
class Row:
    claim: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def _sroy(g: Graph) -> int:
    return strong_royal_index(g).index


def _valid_width(g: Graph, c) -> int | str:
    bad = verify_strong_royal(g, c)
    return palette_width(c) if not bad else f"invalid: {bad[0]}"


def rows_cycles() -> list[Row]:
    rows = [Row(f"sroy(C_{n})", cycle_index_formula(n), _sroy(cycle(n))) for n in range(3, 16)]
    rows += [Row(f"construct_cycle({n}) width", cycle_index_formula(n),
                 _valid_width(cycle(n), con.construct_cycle(n))) for n in range(16, 64)]
    return rows


def rows_complete() -> list[Row]:
    rows = []
    for n in range(4, 9):
        verdict = "royal-zero" if n & (n - 1) == 0 else "royal-one"
        rows.append(Row(f"sroy(K_{n})", k_floor(n) + (verdict == "royal-one"), _sroy(complete(n))))
        rows.append(Row(f"K_{n} verdict", verdict, classify(complete(n)).verdict))
    return rows


def rows_products() -> list[Row]:
    g, c = k6k2_certificate()
    return [
        Row("sroy(K_5 x K_2)", 4, _sroy(cartesian_k2(complete(5)))),
        Row("sroy(K_6 x K_2)", 4, _sroy(cartesian_k2(complete(6)))),
        Row("sroy(K_7 x K_2)", 5, _sroy(cartesian_k2(complete(7)))),
        Row("sroy(C_7 x K_2)", 4, _sroy(cartesian_k2(cycle(7)))),
        Row("explicit K_6 x K_2 coloring width", 4, _valid_width(g, c)),
    ] + [Row(f"Q_{k} verdict", "royal-zero", classify(hypercube(k)).verdict) for k in range(2, 6)]


def rows_coronas() -> list[Row]:
    rows = [
        Row("sroy(cor(C_7))", 4, _sroy(corona(cycle(7)))),
        Row("cor(C_7) verdict", "royal-zero", classify(corona(cycle(7))).verdict),
    ]
    for n in (5, 6, 7):
        g, c = con.corona_complete(n)
        rows.append(Row(f"cor(K_{n}) construction width", k_floor(n) + 1, _valid_width(g, c)))
        rows.append(Row(f"sroy(cor(K_{n}))", k_floor(n) + 1, _sroy(g)))
    for s in (3, 4, 5, 8):
        g = cubic_caterpillar(s)
        rows.append(Row(f"cubic caterpillar spine {s} width", k_floor(g.n),
                        _valid_width(g, con.construct_cubic_caterpillar(s))))
    return rows


def rows_gk() -> list[Row]:
    rows = [Row("m_3", 15, con.gk_build(3).graph.m)]
    for k in range(2, 9):
        rows.append(Row(f"m_{k} = size of G_{k}", gk_size(k), con.gk_build(k).graph.m))
    g3 = con.gk_build(3).graph
    rows.append(Row("min degree of G_3", 3, min(g3.degrees())))
    rows.append(Row("complement of C_7 verdict", "royal-one", classify(cycle(7).complement()).verdict))
    return rows


def rows_chords() -> list[Row]:
    return [Row(f"sroy(C_7 + {e})", 3, _sroy(cycle(7).add_edge(*e))) for e in chords_of_c7()]


FIXTURE_SETS: dict[str, Callable[[], list[Row]]] = {
    "cycles": rows_cycles,
    "complete": rows_complete,
    "products": rows_products,
    "coronas": rows_coronas,
    "gk": rows_gk,
    "chords": rows_chords,
}
