import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from royalcolor.coloring import EdgeColoring, induced, palette_width, verify_royal, verify_strong_royal
from royalcolor.graphs import (Graph, cartesian_k2, complete, corona, cycle, enumerate_trees, gk_graph,
                               path, star)
from royalcolor.solver import (SolveTimeout, brute_force_exists, classify, clique_infeasible,
                               exists_royal, exists_strong_royal, gk_membership_bound, gk_size, k_floor,
                               royal_index, search_labeling, spanning_lift, spanning_tree_upper,
                               strong_royal_index)

import oracles


@st.composite
def connected_graphs(draw, min_n=3, max_n=9, extra=6):
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=extra)))
    return Graph(n, edges)


@pytest.mark.parametrize("n, k", [(3, 2), (4, 3), (7, 3), (8, 4), (15, 4), (16, 5)])
def test_k_floor(n, k):
    assert k_floor(n) == k
    assert 2 ** (k - 1) <= n <= 2**k - 1


def test_k_floor_rejects_small():
    with pytest.raises(ValueError):
        k_floor(2)


def test_exists_strong_royal_cycles():
    assert exists_strong_royal(cycle(7), 3) is None
    res = exists_strong_royal(cycle(7), 4)
    assert res is not None and verify_strong_royal(cycle(7), res.certificate) == []
    assert exists_strong_royal(cycle(6), 3) is not None


def test_exists_strong_royal_rejects():
    with pytest.raises(ValueError):
        exists_strong_royal(cycle(8), 3)
    with pytest.raises(ValueError):
        exists_strong_royal(Graph(4, [(0, 1), (2, 3)]), 3)


@pytest.mark.parametrize("g, expected", [(complete(4), 3), (complete(5), 4), (cycle(15), 4),
                                         (cycle(3), 3), (path(3), 2), (cycle(7), 4)])
def test_strong_royal_index(g, expected):
    res = strong_royal_index(g)
    assert res.index == expected
    assert palette_width(res.certificate) == expected
    assert verify_strong_royal(g, res.certificate) == []
    assert induced(g, res.certificate).colors == res.witness_labeling.labels


def test_royal_index_examples_agree_with_brute_force():
    for g in (cycle(4), complete(3), star(4), path(4), cycle(5)):
        r = royal_index(g).index
        assert verify_royal(g, royal_index(g).certificate) == []
        assert brute_force_exists(g, r, strong=False)
        assert r == 1 or not brute_force_exists(g, r - 1, strong=False)
    assert royal_index(cycle(4)).index == 2


def test_brute_force_examples():
    assert brute_force_exists(path(4), 3, strong=True)
    assert not brute_force_exists(cycle(3), 2, strong=True)
    assert brute_force_exists(cycle(3), 3, strong=True)
    with pytest.raises(ValueError):
        brute_force_exists(complete(8), 4, strong=True)


def _oracle_cases():
    graphs = [g for n in (3, 4) for g in oracles.connected_labeled_graphs(n)]
    graphs += [t for n in range(3, 8) for t in enumerate_trees(n)]
    return graphs


@pytest.mark.parametrize("strong", [True, False], ids=["strong", "royal"])
def test_labeling_search_matches_brute_force(strong):
    for g in _oracle_cases():
        for k in (2, 3):
            fast = search_labeling(g, k, strong=strong) is not None
            assert fast == brute_force_exists(g, k, strong), (g.edges, k)


@settings(max_examples=25, deadline=None)
@given(connected_graphs(max_n=6, extra=2))
def test_labeling_search_matches_brute_force_random(g):
    assume((2**3 - 1) ** g.m <= 2 * 10**5)
    for k in (2, 3):
        assert (search_labeling(g, k) is not None) == brute_force_exists(g, k, True)


def test_spanning_tree_upper():
    assert spanning_tree_upper(cycle(8)) <= 1 + strong_royal_index(path(8)).index == 5
    assert spanning_tree_upper(complete(4)) >= k_floor(4)


@settings(max_examples=30, deadline=None)
@given(connected_graphs(min_n=4, max_n=10))
def test_bound_sandwich(g):
    idx = strong_royal_index(g).index
    assert k_floor(g.n) <= idx <= spanning_tree_upper(g, samples=2)


def test_spanning_lift_is_valid():
    g = complete(7)
    tree = path(7)
    c = strong_royal_index(tree).certificate
    lifted = spanning_lift(g, c)
    assert verify_strong_royal(g, lifted) == [] and palette_width(lifted) == 4


def test_classify_examples():
    k8 = classify(complete(8))
    assert (k8.verdict, k8.k_floor) == ("royal-zero", 4)
    c7bar = classify(cycle(7).complement())
    assert (c7bar.verdict, c7bar.method) == ("royal-one", "min-degree-shortcut")
    cor = classify(corona(cycle(7)))
    assert cor.verdict == "royal-zero" and palette_width(cor.certificate) == 4
    assert classify(cycle(7)).verdict == "royal-one"


def test_classify_certify_min_degree():
    r = classify(complete(7), certify=True)
    assert r.method == "min-degree-shortcut"
    assert verify_strong_royal(complete(7), r.certificate) == [] and palette_width(r.certificate) == 4


def test_classify_size_shortcut():
    g = complete(7)
    g = Graph(7, g.edges[:16])
    assert g.is_connected() and min(g.degrees()) < 4
    r = classify(g)
    assert r.method == "size-shortcut+search" and r.verdict == "royal-one"


def _order_le_8_fixtures():
    gs = [cycle(n) for n in range(4, 9)] + [complete(n) for n in range(4, 9)]
    gs += [cycle(7).complement(), corona(path(4)), cartesian_k2(path(4)), cartesian_k2(cycle(4))]
    gs += [cycle(7).add_edge(0, e) for e in (2, 3)]
    gs += list(enumerate_trees(8))[:10]
    return gs


@pytest.mark.parametrize("g", _order_le_8_fixtures(), ids=lambda g: repr(g))
def test_shortcut_consistency(g):
    r = classify(g)
    exact = strong_royal_index(g).index
    assert r.index == exact
    assert r.verdict == {0: "royal-zero", 1: "royal-one"}[exact - k_floor(g.n)]


def test_gk_membership_bound():
    assert not gk_membership_bound(cartesian_k2(complete(7)), 4)
    assert gk_membership_bound(cycle(7), 3)
    assert gk_membership_bound(gk_graph(3), 3)
    assert not gk_membership_bound(cycle(7).complement(), 3)


def test_clique_pruning_reasons():
    assert clique_infeasible(complete(5), 3) is not None
    assert "singleton" in clique_infeasible(cartesian_k2(complete(7)), 4)
    assert clique_infeasible(cartesian_k2(complete(6)), 4) is None


@pytest.mark.parametrize("e", [(u, v) for u in range(7) for v in range(u + 2, 7) if (u, v) != (0, 6)])
def test_adding_a_chord_lowers_the_c7_index(e):
    assert strong_royal_index(cycle(7).add_edge(*e)).index == 3


def test_determinism_and_workers():
    g = corona(cycle(7))
    a = strong_royal_index(g)
    b = strong_royal_index(g)
    assert a.certificate == b.certificate and a.index == b.index
    c = strong_royal_index(g, workers=2)
    assert c.index == a.index and verify_strong_royal(g, c.certificate) == []
    d = strong_royal_index(cartesian_k2(complete(5)), workers=2)
    assert d.index == 4


def test_timeout_reports_bounds():
    with pytest.raises(SolveTimeout) as exc:
        strong_royal_index(gk_graph(5), timeout=0.0)
    assert exc.value.lower == 5


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 9), st.data())
def test_planted_duplicate_gives_exactly_that_witness(n, data):
    trees = list(enumerate_trees(n))
    t = data.draw(st.sampled_from(trees))
    c = strong_royal_index(t).certificate
    cp = induced(t, c).colors
    leaves = [v for v in range(n) if t.degree(v) == 1]
    plants = []
    for a in leaves:
        for b in leaves:
            if a == b:
                continue
            pb = t.neighbors(b)[0]
            eb = (min(b, pb), max(b, pb))
            ea = (min(a, t.neighbors(a)[0]), max(a, t.neighbors(a)[0]))
            others = 0
            for w in t.neighbors(pb):
                if w != b:
                    others |= c[(pb, w)]
            # parent's induced color must not move
            if (others | c[ea]) == cp[pb]:
                plants.append((a, b, ea, eb))
    assume(plants)
    a, b, ea, eb = data.draw(st.sampled_from(plants))
    colors = dict(c.colors)
    colors[eb] = colors[ea]
    bad = verify_strong_royal(t, EdgeColoring(c.k, colors))
    assert [v.witness for v in bad] == [tuple(sorted((a, b)))]


def test_exists_royal_mode():
    assert exists_royal(cycle(4), 1) is None
    assert exists_royal(cycle(4), 2) is not None
    assert gk_size(3) == 15
