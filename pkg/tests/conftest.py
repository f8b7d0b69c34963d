"""Shared graph builders and a brute-force isomorphism check for tests."""

from __future__ import annotations

from itertools import permutations

from matchpow import WeightedOrientedGraph


def path_graph(n, weights=None):
    """Unweighted-by-default path 1-2-...-n oriented low to high."""
    return WeightedOrientedGraph.build(n, [(i, i + 1) for i in range(1, n)], weights)


def in_star(leaves, center_weight=1):
    """Star with edges oriented into the centre (highest label)."""
    center = leaves + 1
    return WeightedOrientedGraph.build(
        center, [(i, center) for i in range(1, leaves + 1)], {center: center_weight}
    )


def seven_vertex_example(wa=2, wb=2):
    """The seven-vertex forest a..g = 1..7 with heavy vertices a and b."""
    return WeightedOrientedGraph.build(
        7,
        [(3, 1), (4, 1), (4, 2), (5, 2), (6, 4), (7, 4)],
        {1: wa, 2: wb},
        names=list("abcdefg"),
    )


def oriented_weighted_isomorphic(D1: WeightedOrientedGraph, D2: WeightedOrientedGraph) -> bool:
    """Brute-force isomorphism of weighted oriented graphs on active vertices.

    Candidate bijections are pruned by per-vertex (in-degree, out-degree,
    weight) signatures; intended for small test instances only.
    """
    v1 = [v for v in D1.vertices if D1.degree(v) > 0]
    v2 = [v for v in D2.vertices if D2.degree(v) > 0]
    if len(v1) != len(v2) or len(D1.edges) != len(D2.edges):
        return False

    def signature(D, verts):
        out = {v: [0, 0, D.weight(v)] for v in verts}
        for t, h in D.edges:
            out[t][0] += 1
            out[h][1] += 1
        return {v: tuple(s) for v, s in out.items()}

    s1, s2 = signature(D1, v1), signature(D2, v2)
    if sorted(s1.values()) != sorted(s2.values()):
        return False
    edge_set2 = set(D2.edges)
    groups1: dict[tuple, list[int]] = {}
    groups2: dict[tuple, list[int]] = {}
    for v, s in s1.items():
        groups1.setdefault(s, []).append(v)
    for v, s in s2.items():
        groups2.setdefault(s, []).append(v)
    keys = sorted(groups1)
    from itertools import product as iproduct

    for choice in iproduct(*(permutations(groups2[k]) for k in keys)):
        mapping = {}
        for k, target in zip(keys, choice):
            for a, b in zip(groups1[k], target):
                mapping[a] = b
        if all((mapping[t], mapping[h]) in edge_set2 for t, h in D1.edges):
            return True
    return False
