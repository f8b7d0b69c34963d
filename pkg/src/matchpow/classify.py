"""Recursive classification of weighted oriented forests by their last matching power.

The classifier decides whether the top nonvanishing matching power of the edge
ideal is polymatroidal, peeling one matching-number level per step: an
isolated edge or a strong pendant edge factors out as a monomial times the
power of a smaller forest; otherwise a distant configuration (leaves a_1..a_t
on a centre b next to an anchor c) must satisfy exact weight and orientation
conditions, splitting into a star factorization or a two-part decomposition
depending on whether deleting {b, c} kills the next power.  Every run returns
a certificate that :func:`verify_certificate` can replay by recomputing both
sides of each claimed factorization from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .exchange import is_polymatroidal
from .graphs import (
    DistantConfig,
    WeightedOrientedGraph,
    enumerate_matchings,
    find_distant_configuration,
    is_forest,
    is_strong_edge,
    matching_number,
)
from .monomials import Monomial, MonomialIdeal
from .powers import edge_ideal, edge_monomial, matching_power

__all__ = [
    "UnweightedBaseNode",
    "NuOneBaseNode",
    "IsolatedEdgeNode",
    "StrongEdgeNode",
    "StarFactorNode",
    "StarSplitNode",
    "RefutedNode",
    "ClassificationCertificate",
    "strong_edge_criterion",
    "classify_last_power",
    "verify_certificate",
]


@dataclass(frozen=True)
class UnweightedBaseNode:
    """All non-source weights are 1: the last power is polymatroidal outright."""


@dataclass(frozen=True)
class NuOneBaseNode:
    """Matching number 1: verdict from the direct exchange check on the edge ideal."""

    polymatroidal: bool


@dataclass(frozen=True)
class IsolatedEdgeNode:
    edge: tuple[int, int]
    child: "ClassificationCertificate"


@dataclass(frozen=True)
class StrongEdgeNode:
    config: DistantConfig
    child: "ClassificationCertificate"


@dataclass(frozen=True)
class StarFactorNode:
    """Deleting centre and anchor kills the next power; the ideal factors as
    x_b^delta * (pendant variables) * (power of the forest without the centre)."""

    config: DistantConfig
    delta: int
    child_without_center: "ClassificationCertificate"


@dataclass(frozen=True)
class StarSplitNode:
    """The next power survives without centre and anchor; the ideal decomposes
    as x_b^{w(b)} * [pendants * power(D - b) + x_c * power(D - b - c)]."""

    config: DistantConfig
    child_without_center: "ClassificationCertificate"
    child_without_center_anchor: "ClassificationCertificate"


@dataclass(frozen=True)
class RefutedNode:
    """A failed condition, with the vertices it failed at.

    Conditions: no_edges, leaf_weight (a pendant leaf has weight > 1),
    pendant_exponent (pendant edge monomials disagree on the centre exponent,
    or miss the required one), bridge_shape (the centre-anchor edge is not
    x_c * x_b^{w(b)} with w(c) = 1), child_power (a recursive subforest fails;
    its certificate is attached).
    """

    condition: str
    locus: tuple[int, ...]
    child: Optional["ClassificationCertificate"] = None


TraceNode = Union[
    UnweightedBaseNode,
    NuOneBaseNode,
    IsolatedEdgeNode,
    StrongEdgeNode,
    StarFactorNode,
    StarSplitNode,
    RefutedNode,
]


@dataclass(frozen=True)
class ClassificationCertificate:
    verdict: bool
    trace: TraceNode


def _leaf_sets(D: WeightedOrientedGraph) -> dict[int, bool]:
    return {v: D.degree(v) == 1 for v in D.vertices}


def _validate_config(D: WeightedOrientedGraph, config: DistantConfig) -> bool:
    """The configuration lists every leaf neighbour of the centre except a
    possibly-promoted anchor, and the centre has no second non-leaf neighbour."""
    if config.center not in D.adjacency or config.anchor not in D.adjacency:
        return False
    nbrs = set(D.adjacency[config.center])
    if config.anchor not in nbrs:
        return False
    is_leaf = _leaf_sets(D)
    leaf_nbrs = {u for u in nbrs if is_leaf[u]}
    if set(config.leaves) != leaf_nbrs - {config.anchor}:
        return False
    if not config.leaves:
        return False
    non_leaf = nbrs - leaf_nbrs
    return non_leaf <= {config.anchor}


def strong_edge_criterion(D: WeightedOrientedGraph, config: DistantConfig) -> bool:
    """Pendant-edge strongness via matchings of the centre-deleted forest.

    Some pendant edge {a_i, b} of the configuration is strong exactly when
    t = 1 and every (nu - 1)-matching of the graph without the centre covers
    the anchor.
    """
    nu = matching_number(D)
    if nu < 2:
        raise ValueError("criterion requires matching number >= 2")
    if not _validate_config(D, config):
        raise ValueError(f"{config} is not a distant configuration of the graph")
    if config.t != 1:
        return False
    sub = D.delete({config.center})
    return all(
        config.anchor in m.vertices() for m in enumerate_matchings(sub, nu - 1)
    )


def _pendant_deltas(D: WeightedOrientedGraph, config: DistantConfig) -> set[int]:
    """Centre exponents of the pendant edge monomials x_{a_i} x_b^delta.

    Pendant edges oriented into the centre contribute w(b); edges oriented out
    contribute 1 (their leaf weight is 1 whenever this is consulted).
    """
    b = config.center
    out = set()
    for a in config.leaves:
        if (a, b) in D.edges:
            out.add(D.weight(b))
        else:
            out.add(1)
    return out


def classify_last_power(D: WeightedOrientedGraph) -> ClassificationCertificate:
    """Certificate for: the top matching power of the edge ideal is polymatroidal.

    Requires a normalized weighted oriented forest.  Edgeless graphs are
    refuted (there is no power to classify).
    """
    if not is_forest(D):
        raise ValueError("classification requires a forest")
    if not D.is_normalized():
        raise ValueError("sources must have weight 1; call normalize_sources first")
    return _classify(D.n, D.edges, D.weights, {})


# The recursion runs on plain directed-edge tuples: the verdict only depends
# on the surviving edges and the weight vector (isolated vertices carry no
# information), which also lets distinct deletion paths share memo entries.


def _nu_forest(edges: tuple[tuple[int, int], ...]) -> int:
    """Matching number of a forest given by its edges, by leaf pruning."""
    adj: dict[int, set[int]] = {}
    for t, h in edges:
        adj.setdefault(t, set()).add(h)
        adj.setdefault(h, set()).add(t)
    count = 0
    leaves = [v for v, nbrs in adj.items() if len(nbrs) == 1]
    while leaves:
        v = leaves.pop()
        if v not in adj or len(adj[v]) != 1:
            continue
        (u,) = adj[v]
        count += 1
        for w in (v, u):
            for x in adj.pop(w, ()):
                if x in adj:
                    adj[x].discard(w)
                    if len(adj[x]) == 1:
                        leaves.append(x)
    return count


def _classify(
    n: int,
    edges: tuple[tuple[int, int], ...],
    weights: tuple[int, ...],
    memo: dict[tuple, ClassificationCertificate],
) -> ClassificationCertificate:
    hit = memo.get(edges)
    if hit is not None:
        return hit
    cert = _classify_uncached(n, edges, weights, memo)
    memo[edges] = cert
    return cert


def _drop(
    edges: tuple[tuple[int, int], ...], gone: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    return tuple(e for e in edges if e[0] not in gone and e[1] not in gone)


def _classify_uncached(
    n: int,
    edges: tuple[tuple[int, int], ...],
    weights: tuple[int, ...],
    memo: dict[tuple, ClassificationCertificate],
) -> ClassificationCertificate:
    if not edges:
        return ClassificationCertificate(False, RefutedNode("no_edges", ()))
    # non-sources are exactly the heads of surviving edges
    if all(weights[h - 1] == 1 for _, h in edges):
        return ClassificationCertificate(True, UnweightedBaseNode())
    nu = _nu_forest(edges)
    if nu == 1:
        gens = []
        for t, h in edges:
            exps = [0] * n
            exps[t - 1] += 1
            exps[h - 1] += weights[h - 1]
            gens.append(Monomial(tuple(exps)))
        gens.sort(key=lambda m: m.exponents)
        ok = is_polymatroidal(MonomialIdeal(n, tuple(gens)))
        return ClassificationCertificate(ok, NuOneBaseNode(ok))

    adj: dict[int, list[int]] = {}
    for t, h in edges:
        adj.setdefault(t, []).append(h)
        adj.setdefault(h, []).append(t)
    deg = {v: len(nbrs) for v, nbrs in adj.items()}
    isolated = sorted(
        (min(t, h), max(t, h)) for t, h in edges if deg[t] == 1 and deg[h] == 1
    )
    if isolated:
        a, b = isolated[0]
        sub = _drop(edges, (a, b))
        assert _nu_forest(sub) == nu - 1
        child = _classify(n, sub, weights, memo)
        return ClassificationCertificate(child.verdict, IsolatedEdgeNode((a, b), child))

    config = None
    for b in sorted(adj):
        leaf_nbrs = sorted(u for u in adj[b] if deg[u] == 1)
        if not leaf_nbrs:
            continue
        non_leaf = [u for u in adj[b] if deg[u] > 1]
        if len(non_leaf) > 1:
            continue
        if non_leaf:
            config = DistantConfig(tuple(leaf_nbrs), b, non_leaf[0])
        else:
            config = DistantConfig(tuple(leaf_nbrs[:-1]), b, leaf_nbrs[-1])
        break
    if config is None:
        raise ValueError("graph has edges but no distant configuration (not a forest?)")

    b, c = config.center, config.anchor
    if config.t == 1:
        a0 = config.leaves[0]
        pruned = tuple(e for e in edges if e not in ((a0, b), (b, a0)))
        if _nu_forest(pruned) == nu - 1:  # the pendant edge is strong
            sub = _drop(edges, (a0, b))
            assert _nu_forest(sub) == nu - 1
            child = _classify(n, sub, weights, memo)
            return ClassificationCertificate(child.verdict, StrongEdgeNode(config, child))

    # pendant leaves must be weightless
    for a in config.leaves:
        if weights[a - 1] != 1:
            return ClassificationCertificate(False, RefutedNode("leaf_weight", (a,)))

    sub_b = _drop(edges, (b,))
    assert _nu_forest(sub_b) == nu - 1
    child_b = _classify(n, sub_b, weights, memo)
    if not child_b.verdict:
        return ClassificationCertificate(
            False, RefutedNode("child_power", (b,), child_b)
        )

    edge_set = set(edges)
    deltas = {weights[b - 1] if (a, b) in edge_set else 1 for a in config.leaves}
    if _nu_forest(_drop(edges, (b, c))) < nu - 1:
        # star case: the power without centre and anchor vanishes
        if len(deltas) > 1:
            return ClassificationCertificate(
                False, RefutedNode("pendant_exponent", config.leaves)
            )
        return ClassificationCertificate(
            True, StarFactorNode(config, deltas.pop(), child_b)
        )

    # split case: the centre exponent must be w(b) throughout, the anchor must
    # be weightless, and the bridge monomial must be x_c * x_b^{w(b)}
    if deltas != {weights[b - 1]}:
        return ClassificationCertificate(
            False, RefutedNode("pendant_exponent", config.leaves)
        )
    if weights[c - 1] != 1:
        return ClassificationCertificate(False, RefutedNode("bridge_shape", (c,)))
    # with w(c) = 1 both orientations give x_b x_c; otherwise (c, b) is forced
    if (c, b) not in edge_set and weights[b - 1] != 1:
        return ClassificationCertificate(False, RefutedNode("bridge_shape", (b, c)))
    sub_bc = _drop(edges, (b, c))
    assert _nu_forest(sub_bc) == nu - 1
    child_bc = _classify(n, sub_bc, weights, memo)
    if not child_bc.verdict:
        return ClassificationCertificate(
            False, RefutedNode("child_power", (b, c), child_bc)
        )
    return ClassificationCertificate(True, StarSplitNode(config, child_b, child_bc))


# ---------------------------------------------------------------------------
# certificate replay
# ---------------------------------------------------------------------------


def _pendant_variable_ideal(D: WeightedOrientedGraph, config: DistantConfig) -> MonomialIdeal:
    return MonomialIdeal(
        D.n, tuple(sorted((Monomial.variable(a, D.n) for a in config.leaves),
                          key=lambda m: m.exponents))
    )


def verify_certificate(D: WeightedOrientedGraph, cert: ClassificationCertificate) -> bool:
    """Replay a certificate, recomputing every claimed factorization.

    Positive nodes are checked by computing both sides of the stated ideal
    equation with independent machinery (matching powers, products and sums
    of ideals); refuted nodes re-check the failed condition.  Untrue claims
    make the replay return False; structurally malformed certificates raise.
    """
    if not isinstance(cert, ClassificationCertificate):
        raise ValueError("not a classification certificate")
    return _verify(D, cert)


def _verify(D: WeightedOrientedGraph, cert: ClassificationCertificate) -> bool:
    node = cert.trace

    if isinstance(node, UnweightedBaseNode):
        if not cert.verdict or not D.underlying_edges:
            return False
        sources = D.sources
        return all(D.weight(v) == 1 for v in D.vertices if v not in sources)

    if isinstance(node, NuOneBaseNode):
        if matching_number(D) != 1:
            return False
        ok = is_polymatroidal(edge_ideal(D))
        return ok == node.polymatroidal == cert.verdict

    if isinstance(node, IsolatedEdgeNode):
        a, b = node.edge
        if not D.has_edge(a, b) or D.degree(a) != 1 or D.degree(b) != 1:
            return False
        if cert.verdict != node.child.verdict:
            return False
        nu = matching_number(D)
        sub = D.delete((a, b))
        if cert.verdict:
            lhs = matching_power(edge_ideal(D), nu)
            rhs = matching_power(edge_ideal(sub), nu - 1).times_monomial(
                edge_monomial(D, (a, b))
            )
            if lhs != rhs:
                return False
        return _verify(sub, node.child)

    if isinstance(node, StrongEdgeNode):
        config = node.config
        if not _validate_config(D, config) or config.t != 1:
            return False
        edge = (config.leaves[0], config.center)
        if not is_strong_edge(D, edge):
            return False
        if cert.verdict != node.child.verdict:
            return False
        nu = matching_number(D)
        sub = D.delete(edge)
        if cert.verdict:
            lhs = matching_power(edge_ideal(D), nu)
            rhs = matching_power(edge_ideal(sub), nu - 1).times_monomial(
                edge_monomial(D, edge)
            )
            if lhs != rhs:
                return False
        return _verify(sub, node.child)

    if isinstance(node, StarFactorNode):
        config = node.config
        if not cert.verdict or not node.child_without_center.verdict:
            return False
        if not _validate_config(D, config):
            return False
        b, c = config.center, config.anchor
        nu = matching_number(D)
        if any(D.weight(a) != 1 for a in config.leaves):
            return False
        if _pendant_deltas(D, config) != {node.delta} or node.delta not in (1, D.weight(b)):
            return False
        if matching_number(D.delete({b, c})) >= nu - 1:
            return False
        sub = D.delete({b})
        lhs = matching_power(edge_ideal(D), nu)
        rhs = (
            _pendant_variable_ideal(D, config) * matching_power(edge_ideal(sub), nu - 1)
        ).times_monomial(Monomial.variable(b, D.n, node.delta))
        if lhs != rhs:
            return False
        return _verify(sub, node.child_without_center)

    if isinstance(node, StarSplitNode):
        config = node.config
        if not cert.verdict:
            return False
        if not node.child_without_center.verdict or not node.child_without_center_anchor.verdict:
            return False
        if not _validate_config(D, config):
            return False
        b, c = config.center, config.anchor
        nu = matching_number(D)
        if any(D.weight(a) != 1 for a in config.leaves):
            return False
        if _pendant_deltas(D, config) != {D.weight(b)} or D.weight(c) != 1:
            return False
        if edge_monomial(D, (b, c)) != Monomial.variable(c, D.n) * Monomial.variable(
            b, D.n, D.weight(b)
        ):
            return False
        if matching_number(D.delete({b, c})) != nu - 1:
            return False
        sub_b = D.delete({b})
        sub_bc = D.delete({b, c})
        lhs = matching_power(edge_ideal(D), nu)
        inner = _pendant_variable_ideal(D, config) * matching_power(
            edge_ideal(sub_b), nu - 1
        ) + matching_power(edge_ideal(sub_bc), nu - 1).times_monomial(
            Monomial.variable(c, D.n)
        )
        rhs = inner.times_monomial(Monomial.variable(b, D.n, D.weight(b)))
        if lhs != rhs:
            return False
        return _verify(sub_b, node.child_without_center) and _verify(
            sub_bc, node.child_without_center_anchor
        )

    if isinstance(node, RefutedNode):
        if cert.verdict:
            return False
        if node.condition == "no_edges":
            return not D.underlying_edges
        if node.condition == "leaf_weight":
            found = find_distant_configuration(D)
            if not isinstance(found, DistantConfig):
                return False
            return any(
                a in node.locus and D.weight(a) != 1 for a in found.leaves
            )
        if node.condition == "child_power":
            if node.child is None or node.child.verdict:
                return False
            sub = D.delete(node.locus)
            return _verify(sub, node.child)
        if node.condition == "pendant_exponent":
            found = find_distant_configuration(D)
            if not isinstance(found, DistantConfig):
                return False
            deltas = _pendant_deltas(D, found)
            if len(deltas) > 1:
                return True
            nu = matching_number(D)
            star_case = matching_number(D.delete({found.center, found.anchor})) < nu - 1
            return not star_case and deltas != {D.weight(found.center)}
        if node.condition == "bridge_shape":
            found = find_distant_configuration(D)
            if not isinstance(found, DistantConfig):
                return False
            b, c = found.center, found.anchor
            if D.weight(c) != 1:
                return True
            return edge_monomial(D, (b, c)) != Monomial.variable(c, D.n) * Monomial.variable(
                b, D.n, D.weight(b)
            )
        raise ValueError(f"unknown refutation condition {node.condition!r}")

    raise ValueError(f"unknown certificate node {type(node).__name__}")
