import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from royalcolor.coloring import EdgeColoring, Violation, induced, palette_width, verify_strong_royal
from royalcolor.constructions import (ConstructionError, construct_cubic_caterpillar, construct_cycle,
                                      construct_path, corona_complete, find_cycle_hook, gk_build,
                                      gk_degree, gk_partition_sizes, intersection_coloring,
                                      lift_cartesian_k2, lift_corona)
from royalcolor.constructions import _doubled_cycle
from royalcolor.fixtures import K6K2_LABELS, cycle_index_formula
from royalcolor.graphs import (cartesian_k2, complete, corona, cubic_caterpillar, cycle,
                               enumerate_trees, path)
from royalcolor.solver import gk_size, k_floor, strong_royal_index


def test_gk_small():
    g2 = gk_build(2)
    assert (g2.graph.n, g2.graph.m) == (3, 2)
    assert sorted(g2.graph.degrees()) == [1, 1, 2]
    g3 = gk_build(3)
    assert g3.graph.degree(0b111 - 1) == 6
    assert [len(p) for p in g3.partition] == gk_partition_sizes(3) == [3, 3, 1]
    assert induced(g3.graph, g3.certificate).colors == g3.labels
    assert verify_strong_royal(g3.graph, g3.certificate) == []


def test_gk_sizes():
    assert (gk_size(3), gk_size(4), gk_size(1)) == (15, 80, 0)
    with pytest.raises(ValueError):
        gk_build(11)


@pytest.mark.parametrize("k", range(2, 8))
def test_gk_degree_formula(k):
    g = gk_build(k)
    for v, lab in enumerate(g.labels):
        assert g.graph.degree(v) == gk_degree(k, lab.bit_count())
    assert gk_degree(k, k) == 2**k - 2
    assert 2 * g.graph.m == sum(gk_degree(k, lab.bit_count()) for lab in g.labels)


def test_gk_degree_examples():
    assert gk_degree(3, 1) == 3
    assert gk_degree(3, 2) == 5
    assert gk_degree(4, 1) == 7


def test_lifts_raise_width_by_one():
    for g in (path(4), complete(4), cycle(4)):
        c = strong_royal_index(g).certificate
        k = palette_width(c)
        for lift in (lift_corona, lift_cartesian_k2):
            h, d = lift(g, c)
            assert verify_strong_royal(h, d) == [] and palette_width(d) == k + 1


def test_iterated_cartesian_to_q5():
    g = cycle(4)
    c = strong_royal_index(g).certificate
    assert palette_width(c) == 3
    for j in range(1, 4):
        g, c = lift_cartesian_k2(g, c)
        assert palette_width(c) == 3 + j and verify_strong_royal(g, c) == []
    assert g.n == 32 and palette_width(c) == k_floor(32)


def test_lift_rejects_invalid_input():
    bad = EdgeColoring(1, {e: 1 for e in path(4).edges})
    with pytest.raises(ValueError):
        lift_corona(path(4), bad)


def _royal_zero_small():
    out = []
    for n in range(3, 9):
        for t in enumerate_trees(n):
            out.append(t)
    return out


def test_corona_lift_transfers_royal_zero():
    # n in [2^(k-1), 2^k) gives 2n in [2^k, 2^(k+1)); width k+1 is the floor for cor(g)
    for g in _royal_zero_small() + [complete(5), complete(6), cycle(6), cycle(5)]:
        c = strong_royal_index(g).certificate
        if palette_width(c) != k_floor(g.n):
            continue
        h, d = lift_corona(g, c)
        assert palette_width(d) == k_floor(h.n)


@pytest.mark.parametrize("n", [5, 6, 7, 9, 12])
def test_corona_complete(n):
    g, c = corona_complete(n)
    assert g == corona(complete(n))
    assert verify_strong_royal(g, c) == []
    assert palette_width(c) == k_floor(2 * n)


def test_corona_complete_power_of_two_rejected():
    with pytest.raises(ValueError):
        corona_complete(4)
    with pytest.raises(ValueError):
        corona_complete(8)


@pytest.mark.parametrize("n", list(range(3, 40)) + [63, 64, 65, 100])
def test_construct_cycle_width(n):
    c = construct_cycle(n)
    assert verify_strong_royal(cycle(n), c) == []
    assert palette_width(c) == cycle_index_formula(n)


@pytest.mark.parametrize("n", list(range(3, 40)) + [64, 100])
def test_construct_path_width(n):
    c = construct_path(n)
    assert verify_strong_royal(path(n), c) == []
    assert palette_width(c) == k_floor(n)


def test_cycle_hook_structure():
    c, a = _doubled_cycle(7)
    x, y = find_cycle_hook(cycle(14), c, 7, a)
    assert y == x - 1
    # corrupting the hook edge must be detected
    colors = dict(c.colors)
    colors[(y, x)] = 0b1
    with pytest.raises(ConstructionError):
        find_cycle_hook(cycle(14), EdgeColoring(c.k, colors), 7, a)


@pytest.mark.parametrize("s", range(3, 33))
def test_cubic_caterpillar(s):
    g = cubic_caterpillar(s)
    c = construct_cubic_caterpillar(s)
    assert verify_strong_royal(g, c) == []
    assert palette_width(c) == k_floor(g.n)


def test_caterpillar_power_of_two_pendants():
    c = construct_cubic_caterpillar(4)
    spine = {e: s for e, s in c.colors.items() if e[1] < 4}
    cp = induced(path(4), EdgeColoring(c.k, spine)).colors
    for i in (1, 2):
        assert c[(i, 4 + i - 1)] == cp[i] & ~1
    assert all(s & 1 for s in spine.values())
    assert palette_width(construct_cubic_caterpillar(8)) == 4
    assert palette_width(construct_cubic_caterpillar(5)) == 4


def test_intersection_coloring_k6k2():
    g = cartesian_k2(complete(6))
    c = intersection_coloring(g, K6K2_LABELS, 4)
    assert induced(g, c).colors == tuple(K6K2_LABELS)
    assert verify_strong_royal(g, c) == []


def test_intersection_coloring_detects_uncovered_label():
    # {1,2} between two {1} leaves: label 12 is not covered
    g = path(3)
    c = intersection_coloring(g, [0b01, 0b11, 0b01], 2)
    assert induced(g, c).colors == (1, 1, 1)
    bad = verify_strong_royal(g, c)
    assert bad and all(isinstance(v, Violation) for v in bad)
    with pytest.raises(ValueError):
        intersection_coloring(g, [0b01, 0b10, 0b01], 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 200))
def test_cycles_property(n):
    c = construct_cycle(n)
    assert verify_strong_royal(cycle(n), c) == []
    assert palette_width(c) == cycle_index_formula(n)


def test_constructions_match_solver_on_small_cycles():
    for n in range(3, 16):
        assert palette_width(construct_cycle(n)) == strong_royal_index(cycle(n)).index
