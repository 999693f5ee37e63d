"""Regenerates connected.g6, the bundled list of connected graphs.

    python3 generate.py > connected.g6

Contents, in order:
  * every connected graph of even order 2..6 (networkx graph atlas);
  * every connected graph on 8 vertices, obtained by adding a vertex with
    every nonempty neighbourhood to each connected 7-vertex atlas graph
    and removing isomorphic duplicates;
  * seeded random connected graphs on 10 vertices, general and bipartite;
  * 10-vertex splices of two matching covered graphs on 6+6 or 4+8
    vertices (these have a nontrivial tight cut by construction).

Only even orders are kept since odd graphs have no perfect matching.
"""

import itertools
import random
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

SEED = 20240611
RANDOM_10 = 1200
BIPARTITE_10 = 600
SPLICES_10 = 2400


def dedupe(graphs):
    buckets = {}
    out = []
    for g in graphs:
        key = (g.number_of_edges(), nx.weisfeiler_lehman_graph_hash(g, iterations=3))
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def has_perfect_matching(g):
    m = nx.max_weight_matching(g, maxcardinality=True)
    return 2 * len(m) == g.number_of_nodes()


def matching_covered(g):
    if g.number_of_nodes() % 2 or not nx.is_connected(g):
        return False
    if g.number_of_nodes() == 2:
        return True
    for u, v in g.edges():
        h = g.copy()
        h.remove_nodes_from([u, v])
        if not has_perfect_matching(h):
            return False
    return True


def splice(g1, u, g2, v):
    """Delete u and v, join the neighbours of u to those of v in order."""
    n1 = sorted(g1.neighbors(u))
    n2 = sorted(g2.neighbors(v))
    h = nx.Graph()
    a = {x: i for i, x in enumerate(sorted(set(g1) - {u}))}
    off = len(a)
    b = {y: off + i for i, y in enumerate(sorted(set(g2) - {v}))}
    h.add_nodes_from(range(off + len(b)))
    h.add_edges_from((a[x], a[y]) for x, y in g1.edges() if u not in (x, y))
    h.add_edges_from((b[x], b[y]) for x, y in g2.edges() if v not in (x, y))
    h.add_edges_from((a[x], b[y]) for x, y in zip(n1, n2))
    return h


def main():
    atlas = [g for g in graph_atlas_g() if g.number_of_nodes() > 0 and nx.is_connected(g)]
    small = [g for g in atlas if g.number_of_nodes() in (2, 4, 6)]
    seven = [g for g in atlas if g.number_of_nodes() == 7]

    eight = []
    for g in seven:
        for r in range(1, 8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_edges_from((7, x) for x in nbrs)
                eight.append(h)
    eight = dedupe(eight)

    rng = random.Random(SEED)
    rand10 = []
    while len(rand10) < RANDOM_10:
        p = rng.choice([0.3, 0.35, 0.4, 0.5, 0.6])
        g = nx.gnp_random_graph(10, p, seed=rng.randrange(1 << 30))
        if nx.is_connected(g):
            rand10.append(g)

    while len(rand10) < RANDOM_10 + BIPARTITE_10:
        p = rng.choice([0.4, 0.5, 0.6, 0.7])
        g = nx.bipartite.random_graph(5, 5, p, seed=rng.randrange(1 << 30))
        if nx.is_connected(g):
            rand10.append(g)

    mc4 = [g for g in small if g.number_of_nodes() == 4 and matching_covered(g)]
    mc6 = [g for g in small if g.number_of_nodes() == 6 and matching_covered(g)]
    mc8 = [g for g in eight if matching_covered(g)]
    rng.shuffle(mc8)
    candidates = []
    for g1, g2 in itertools.chain(itertools.product(mc6, repeat=2), itertools.product(mc4, mc8[:300])):
        for u in g1:
            for v in g2:
                if g1.degree(u) == g2.degree(v) and g1.degree(u) >= 3:
                    candidates.append((g1, u, g2, v))
    rng.shuffle(candidates)
    splices = []
    for g1, u, g2, v in candidates:
        if len(splices) >= SPLICES_10:
            break
        splices.append(splice(g1, u, g2, v))

    out = small + eight + dedupe(rand10 + splices)
    sys.stdout.write("# connected graphs; regenerate with generate.py\n")
    for g in out:
        g = nx.convert_node_labels_to_integers(g)
        sys.stdout.write(nx.to_graph6_bytes(g, header=False).decode())


if __name__ == "__main__":
    main()
