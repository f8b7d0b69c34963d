"""Weighted oriented graphs, matchings, and the structural notions for forests.

Vertices are labelled 1..n.  Deleting vertices keeps the ambient size and the
original labels, so edge monomials of subgraphs live in the same polynomial
ring; the active vertex set shrinks instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

__all__ = [
    "WeightedOrientedGraph",
    "Matching",
    "IsolatedEdge",
    "DistantConfig",
    "NO_EDGES",
    "is_forest",
    "enumerate_matchings",
    "maximum_matchings",
    "matching_number",
    "is_strong_edge",
    "find_distant_configuration",
    "induced_subgraph",
    "delete_vertices",
]


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint undirected edges."""

    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for a, b in self.edges:
            if a >= b:
                raise ValueError(f"edge {(a, b)} not in (low, high) form")
            if a in seen or b in seen:
                raise ValueError(f"edges of {self.edges} are not disjoint")
            seen.add(a)
            seen.add(b)

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "Matching":
        return Matching(tuple(sorted(tuple(sorted(p)) for p in pairs)))

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True)
class WeightedOrientedGraph:
    """A vertex-weighted oriented graph on labels 1..n.

    ``edges`` are directed (tail, head) pairs, at most one orientation per
    underlying pair.  ``weights[v-1]`` is the weight of vertex v; weights of
    inactive vertices are normalised to 1 so equality stays structural.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]
    vertices: tuple[int, ...]
    names: Optional[tuple[str, ...]] = None

    @staticmethod
    def build(
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Optional[Mapping[int, int]] = None,
        vertices: Optional[Iterable[int]] = None,
        names: Optional[Iterable[str]] = None,
    ) -> "WeightedOrientedGraph":
        active = tuple(sorted(vertices)) if vertices is not None else tuple(range(1, n + 1))
        active_set = set(active)
        if any(v < 1 or v > n for v in active):
            raise ValueError("vertices out of range 1..n")
        edge_list = tuple(sorted((int(t), int(h)) for t, h in edges))
        seen_pairs: set[frozenset[int]] = set()
        for t, h in edge_list:
            if t == h:
                raise ValueError(f"loop at vertex {t}")
            if t not in active_set or h not in active_set:
                raise ValueError(f"edge {(t, h)} leaves the vertex set")
            pair = frozenset((t, h))
            if pair in seen_pairs:
                raise ValueError(f"duplicate underlying edge {{{t},{h}}}")
            seen_pairs.add(pair)
        wvec = [1] * n
        if weights:
            for v, w in weights.items():
                v = int(v)
                if v not in active_set:
                    continue
                if w < 1:
                    raise ValueError(f"weight of vertex {v} must be >= 1, got {w}")
                wvec[v - 1] = int(w)
        name_tuple = tuple(names) if names is not None else None
        if name_tuple is not None and len(name_tuple) != n:
            raise ValueError("names must have length n")
        return WeightedOrientedGraph(n, edge_list, tuple(wvec), active, name_tuple)

    # -- basic structure -------------------------------------------------
    def weight(self, v: int) -> int:
        return self.weights[v - 1]

    @cached_property
    def underlying_edges(self) -> tuple[tuple[int, int], ...]:
        """Undirected edges as sorted (low, high) pairs."""
        return tuple(sorted(tuple(sorted(e)) for e in self.edges))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.underlying_edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @cached_property
    def sources(self) -> frozenset[int]:
        """Vertices with no incoming edge (isolated vertices included)."""
        heads = {h for _, h in self.edges}
        return frozenset(v for v in self.vertices if v not in heads)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def _is_forest(self) -> bool:
        parent: dict[int, int] = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.underlying_edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    @cached_property
    def nu(self) -> int:
        """Matching number, computed once per graph value."""
        if not self.underlying_edges:
            return 0
        if self._is_forest:
            return _matching_number_forest(self)
        return _matching_number_search(self)

    def name_of(self, v: int) -> str:
        return self.names[v - 1] if self.names else str(v)

    def has_edge(self, a: int, b: int) -> bool:
        return tuple(sorted((a, b))) in set(self.underlying_edges)

    def orientation(self, a: int, b: int) -> tuple[int, int]:
        """The directed form of underlying edge {a, b}."""
        if (a, b) in self.edges:
            return (a, b)
        if (b, a) in self.edges:
            return (b, a)
        raise ValueError(f"{{{a},{b}}} is not an edge")

    def is_normalized(self) -> bool:
        return all(self.weight(v) == 1 for v in self.sources)

    def normalize_sources(self) -> "WeightedOrientedGraph":
        """Reset every source weight to 1; other weights unchanged.  Idempotent."""
        wvec = list(self.weights)
        for v in self.sources:
            wvec[v - 1] = 1
        return WeightedOrientedGraph(self.n, self.edges, tuple(wvec), self.vertices, self.names)

    # -- subgraphs --------------------------------------------------------
    def induced(self, keep: Iterable[int]) -> "WeightedOrientedGraph":
        keep_set = set(keep)
        if not keep_set <= set(self.vertices):
            raise ValueError("kept vertices must be a subset of the active vertices")
        edges = tuple(e for e in self.edges if e[0] in keep_set and e[1] in keep_set)
        wvec = [1] * self.n
        for v in keep_set:
            wvec[v - 1] = self.weight(v)
        return WeightedOrientedGraph(self.n, edges, tuple(wvec), tuple(sorted(keep_set)), self.names)

    def delete(self, drop: Iterable[int]) -> "WeightedOrientedGraph":
        drop_set = set(drop)
        return self.induced(v for v in self.vertices if v not in drop_set)


def induced_subgraph(D: WeightedOrientedGraph, keep: Iterable[int]) -> WeightedOrientedGraph:
    return D.induced(keep)


def delete_vertices(D: WeightedOrientedGraph, drop: Iterable[int]) -> WeightedOrientedGraph:
    return D.delete(drop)


def is_forest(D: WeightedOrientedGraph) -> bool:
    """True iff the underlying simple graph is acyclic (union-find scan)."""
    return D._is_forest


def enumerate_matchings(D: WeightedOrientedGraph, k: int) -> list[Matching]:
    """All k-matchings of the underlying graph, each exactly once.

    k = 0 yields the single empty matching.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    edges = D.underlying_edges
    out: list[Matching] = []
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def rec(start: int) -> None:
        if len(chosen) == k:
            out.append(Matching(tuple(chosen)))
            return
        # not enough edges left to reach size k
        if len(chosen) + (len(edges) - start) < k:
            return
        for idx in range(start, len(edges)):
            a, b = edges[idx]
            if a in used or b in used:
                continue
            chosen.append((a, b))
            used.add(a)
            used.add(b)
            rec(idx + 1)
            chosen.pop()
            used.discard(a)
            used.discard(b)

    rec(0)
    return out


def _matching_number_forest(D: WeightedOrientedGraph) -> int:
    """Leaf pruning: repeatedly match a leaf edge and drop both endpoints."""
    adj = {v: set(nbrs) for v, nbrs in D.adjacency.items()}
    count = 0
    leaves = [v for v, nbrs in adj.items() if len(nbrs) == 1]
    while leaves:
        v = leaves.pop()
        if v not in adj or len(adj[v]) != 1:
            continue
        (u,) = adj[v]
        count += 1
        for w in (v, u):
            for x in adj.pop(w, ()):  # detach both endpoints
                if x in adj:
                    adj[x].discard(w)
                    if len(adj[x]) == 1:
                        leaves.append(x)
    # all remaining components are edgeless (forest invariant)
    return count


def _mask_engine(D: WeightedOrientedGraph):
    """Bitmask adjacency plus a memoised max-matching-size function."""
    verts = list(D.vertices)
    index = {v: i for i, v in enumerate(verts)}
    nbr_masks = [0] * len(verts)
    for a, b in D.underlying_edges:
        ia, ib = index[a], index[b]
        nbr_masks[ia] |= 1 << ib
        nbr_masks[ib] |= 1 << ia
    memo: dict[int, int] = {}

    def best(avail: int) -> int:
        while avail:
            low = (avail & -avail).bit_length() - 1
            if nbr_masks[low] & avail:
                break
            avail ^= 1 << low  # vertex with no available neighbour
        else:
            return 0
        if avail in memo:
            return memo[avail]
        low_bit = 1 << low
        result = best(avail ^ low_bit)  # leave it unmatched
        cands = nbr_masks[low] & avail
        while cands:
            u_bit = cands & -cands
            cands ^= u_bit
            result = max(result, 1 + best(avail ^ low_bit ^ u_bit))
        memo[avail] = result
        return result

    return verts, nbr_masks, best


def _matching_number_search(D: WeightedOrientedGraph) -> int:
    """Exact maximum matching size by memoised branching on the lowest vertex."""
    verts, _, best = _mask_engine(D)
    return best((1 << len(verts)) - 1)


def matching_number(D: WeightedOrientedGraph) -> int:
    """Maximum matching size; leaf pruning on forests, exact search otherwise."""
    return D.nu


def maximum_matchings(D: WeightedOrientedGraph) -> tuple[int, list[Matching]]:
    """The matching number together with every maximum matching.

    The enumeration branches on the lowest active vertex and is guided by the
    memoised matching-number table, so no dead branches are explored.
    """
    if not D.underlying_edges:
        return 0, [Matching(())]
    verts, nbr_masks, best = _mask_engine(D)
    full = (1 << len(verts)) - 1
    nu = best(full)
    out: list[Matching] = []
    chosen: list[tuple[int, int]] = []

    def walk(avail: int, need: int) -> None:
        if need == 0:
            out.append(Matching(tuple(sorted(chosen))))
            return
        a = avail
        while a:
            low = (a & -a).bit_length() - 1
            if nbr_masks[low] & avail:
                break
            a ^= 1 << low
        avail = a
        low_bit = 1 << low
        if best(avail ^ low_bit) >= need:  # leave lowest vertex unmatched
            walk(avail ^ low_bit, need)
        cands = nbr_masks[low] & avail
        while cands:
            u_bit = cands & -cands
            cands ^= u_bit
            if 1 + best(avail ^ low_bit ^ u_bit) >= need:
                u = verts[u_bit.bit_length() - 1]
                v = verts[low]
                chosen.append((min(v, u), max(v, u)))
                walk(avail ^ low_bit ^ u_bit, need - 1)
                chosen.pop()

    walk(full, nu)
    return nu, out


def is_strong_edge(D: WeightedOrientedGraph, edge: tuple[int, int]) -> bool:
    """True iff the edge lies in every maximum matching.

    Decided by deleting the edge (vertices kept) and comparing matching numbers.
    """
    pair = tuple(sorted(edge))
    if pair not in set(D.underlying_edges):
        raise ValueError(f"{{{edge[0]},{edge[1]}}} is not an edge")
    directed = D.orientation(*pair)
    pruned = WeightedOrientedGraph(
        D.n, tuple(e for e in D.edges if e != directed), D.weights, D.vertices, D.names
    )
    return pruned.nu == D.nu - 1


@dataclass(frozen=True)
class IsolatedEdge:
    """An edge both of whose endpoints are leaves."""

    a: int
    b: int


@dataclass(frozen=True)
class DistantConfig:
    """Leaves a_1..a_t on a common centre b, plus the edge {b, anchor}."""

    leaves: tuple[int, ...]
    center: int
    anchor: int

    @property
    def t(self) -> int:
        return len(self.leaves)


class _NoEdges:
    def __repr__(self) -> str:  # pragma: no cover
        return "NO_EDGES"


NO_EDGES = _NoEdges()

FindResult = Union[IsolatedEdge, DistantConfig, _NoEdges]


def find_distant_configuration(D: WeightedOrientedGraph) -> FindResult:
    """Deterministic choice of an isolated edge or a distant configuration.

    Preference order: the lexicographically least isolated edge; otherwise the
    lowest-indexed centre b adjacent to a leaf and having at most one non-leaf
    neighbour.  Its leaf neighbours become the configuration leaves, except
    that when b has no non-leaf neighbour the highest leaf is used as the
    anchor.  Raises if the graph has edges but no such structure (only happens
    off forests).
    """
    if not D.underlying_edges:
        return NO_EDGES
    deg = {v: D.degree(v) for v in D.vertices}
    is_leaf = {v: deg[v] == 1 for v in D.vertices}
    isolated = [e for e in D.underlying_edges if is_leaf[e[0]] and is_leaf[e[1]]]
    if isolated:
        a, b = min(isolated)
        return IsolatedEdge(a, b)
    for b in D.vertices:
        nbrs = D.adjacency[b]
        leaf_nbrs = [u for u in nbrs if is_leaf[u]]
        if not leaf_nbrs:
            continue
        non_leaf = [u for u in nbrs if not is_leaf[u]]
        if len(non_leaf) > 1:
            continue
        if non_leaf:
            return DistantConfig(tuple(leaf_nbrs), b, non_leaf[0])
        return DistantConfig(tuple(leaf_nbrs[:-1]), b, leaf_nbrs[-1])
    raise ValueError("graph has edges but no distant configuration (not a forest?)")
