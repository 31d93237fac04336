"""Write every order-7 graph with at least 16 edges, plus seeded random relabelings.

All such graphs are connected (a disconnected graph on 7 vertices has at most
15 edges). Output: one graph6 per line, isomorphism classes first.

    python scripts/make_dense_order7.py data/order7_m16plus.g6
"""

import random
import sys
from itertools import combinations

import networkx as nx

from royalcolor.graph6 import encode_graph6
from royalcolor.graphs import Graph

N = 7
MIN_SIZE = 16
EXTRA_RELABELED = 20


def classes():
    all_pairs = list(combinations(range(N), 2))
    reps: dict[str, list] = {}
    for j in range(len(all_pairs) - MIN_SIZE + 1):
        for missing in combinations(all_pairs, j):
            g = nx.Graph()
            g.add_nodes_from(range(N))
            g.add_edges_from(e for e in all_pairs if e not in missing)
            h = nx.weisfeiler_lehman_graph_hash(g)
            bucket = reps.setdefault(h, [])
            if not any(nx.is_isomorphic(g, r) for r in bucket):
                bucket.append(g)
    out = [Graph(N, r.edges()) for bucket in reps.values() for r in bucket]
    return sorted(out, key=lambda g: (-g.m, encode_graph6(g)))


def main(path):
    reps = classes()
    rng = random.Random(7)
    lines = [encode_graph6(g) for g in reps]
    for _ in range(EXTRA_RELABELED):
        g = rng.choice(reps)
        perm = list(range(N))
        rng.shuffle(perm)
        lines.append(encode_graph6(g.relabel(perm)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{len(reps)} isomorphism classes, {len(lines)} lines -> {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/order7_m16plus.g6")
