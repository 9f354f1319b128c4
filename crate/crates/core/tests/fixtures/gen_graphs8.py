"""All 12,346 graphs on 8 vertices up to isomorphism, as sorted graph6 lines.

Every 8-vertex graph arises from a 7-vertex graph (networkx's atlas lists all
1,044 of them) by adding a vertex with some neighbourhood. Candidates are
bucketed by degree sequence and Weisfeiler-Lehman hash and deduplicated with
an exact isomorphism test inside each bucket.
"""
import itertools

import networkx as nx


def main():
    base = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7]
    assert len(base) == 1044
    buckets = {}
    for g in base:
        for r in range(8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_node(7)
                h.add_edges_from((7, v) for v in nbrs)
                key = (tuple(sorted(d for _, d in h.degree())), nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                reps = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, other) for other in reps):
                    reps.append(h)
    graphs = [h for reps in buckets.values() for h in reps]
    assert len(graphs) == 12346, len(graphs)
    lines = sorted(nx.to_graph6_bytes(h, header=False).decode().strip() for h in graphs)
    print("\n".join(lines))


if __name__ == "__main__":
    main()
