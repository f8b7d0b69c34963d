"""JSON document formats for graphs, ideals, certificates, and trial reports.

Graph documents name vertices (position in ``vertices`` is the index); ideal
documents are canonical: generators sorted lexicographically by exponent
vector.  Certificates mirror the trace node kinds of the classifier.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .classify import (
    ClassificationCertificate,
    IsolatedEdgeNode,
    NuOneBaseNode,
    RefutedNode,
    StarFactorNode,
    StarSplitNode,
    StrongEdgeNode,
    UnweightedBaseNode,
)
from .graphs import DistantConfig, WeightedOrientedGraph
from .monomials import Monomial, MonomialIdeal

__all__ = [
    "graph_to_doc",
    "graph_from_doc",
    "load_graph",
    "save_graph",
    "ideal_to_doc",
    "ideal_from_doc",
    "load_ideal",
    "save_ideal",
    "certificate_to_doc",
    "certificate_from_doc",
]


def graph_to_doc(D: WeightedOrientedGraph) -> dict[str, Any]:
    names = [D.name_of(v) for v in range(1, D.n + 1)]
    doc: dict[str, Any] = {
        "vertices": [names[v - 1] for v in D.vertices],
        "edges": [[names[t - 1], names[h - 1]] for t, h in D.edges],
        "weights": {
            names[v - 1]: D.weight(v) for v in D.vertices if D.weight(v) != 1
        },
    }
    return doc


def graph_from_doc(doc: dict[str, Any]) -> WeightedOrientedGraph:
    try:
        names = [str(v) for v in doc["vertices"]]
        raw_edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"graph document missing field: {exc}") from exc
    if len(set(names)) != len(names):
        raise ValueError("vertex names must be unique")
    index = {name: i + 1 for i, name in enumerate(names)}
    edges = []
    for e in raw_edges:
        if len(e) != 2:
            raise ValueError(f"edge {e} must be a [tail, head] pair")
        t, h = str(e[0]), str(e[1])
        if t not in index or h not in index:
            raise ValueError(f"edge {e} uses an unknown vertex name")
        edges.append((index[t], index[h]))
    weights = {}
    for name, w in (doc.get("weights") or {}).items():
        if str(name) not in index:
            raise ValueError(f"weight for unknown vertex {name!r}")
        weights[index[str(name)]] = int(w)
    return WeightedOrientedGraph.build(
        len(names), edges, weights, names=tuple(names)
    )


def load_graph(path: Union[str, Path]) -> WeightedOrientedGraph:
    with open(path, encoding="utf-8") as f:
        return graph_from_doc(json.load(f))


def save_graph(D: WeightedOrientedGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(graph_to_doc(D), indent=2) + "\n", encoding="utf-8")


def ideal_to_doc(I: MonomialIdeal) -> dict[str, Any]:
    return {"n": I.n, "generators": [list(g.exponents) for g in I.gens]}


def ideal_from_doc(doc: dict[str, Any]) -> MonomialIdeal:
    try:
        n = int(doc["n"])
        gens = doc["generators"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"ideal document missing field: {exc}") from exc
    monomials = []
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} does not have length n={n}")
        monomials.append(Monomial(tuple(int(e) for e in g)))
    return MonomialIdeal.from_monomials(n, monomials)


def load_ideal(path: Union[str, Path]) -> MonomialIdeal:
    with open(path, encoding="utf-8") as f:
        return ideal_from_doc(json.load(f))


def save_ideal(I: MonomialIdeal, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(ideal_to_doc(I), indent=2) + "\n", encoding="utf-8")


def _config_to_doc(config: DistantConfig) -> dict[str, Any]:
    return {
        "leaves": list(config.leaves),
        "center": config.center,
        "anchor": config.anchor,
    }


def _config_from_doc(doc: dict[str, Any]) -> DistantConfig:
    return DistantConfig(tuple(int(a) for a in doc["leaves"]), int(doc["center"]), int(doc["anchor"]))


def certificate_to_doc(cert: ClassificationCertificate) -> dict[str, Any]:
    return {"verdict": cert.verdict, "trace": _node_to_doc(cert.trace)}


def _node_to_doc(node: Any) -> dict[str, Any]:
    if isinstance(node, UnweightedBaseNode):
        return {"kind": "unweighted_base"}
    if isinstance(node, NuOneBaseNode):
        return {"kind": "single_matching_base", "polymatroidal": node.polymatroidal}
    if isinstance(node, IsolatedEdgeNode):
        return {
            "kind": "isolated_edge",
            "edge": list(node.edge),
            "child": certificate_to_doc(node.child),
        }
    if isinstance(node, StrongEdgeNode):
        return {
            "kind": "strong_edge",
            "config": _config_to_doc(node.config),
            "child": certificate_to_doc(node.child),
        }
    if isinstance(node, StarFactorNode):
        return {
            "kind": "star_factor",
            "config": _config_to_doc(node.config),
            "delta": node.delta,
            "child_without_center": certificate_to_doc(node.child_without_center),
        }
    if isinstance(node, StarSplitNode):
        return {
            "kind": "star_split",
            "config": _config_to_doc(node.config),
            "child_without_center": certificate_to_doc(node.child_without_center),
            "child_without_center_anchor": certificate_to_doc(
                node.child_without_center_anchor
            ),
        }
    if isinstance(node, RefutedNode):
        doc: dict[str, Any] = {
            "kind": "refuted",
            "condition": node.condition,
            "locus": list(node.locus),
        }
        if node.child is not None:
            doc["child"] = certificate_to_doc(node.child)
        return doc
    raise ValueError(f"unknown trace node {type(node).__name__}")


def certificate_from_doc(doc: dict[str, Any]) -> ClassificationCertificate:
    try:
        verdict = bool(doc["verdict"])
        trace = doc["trace"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"certificate document missing field: {exc}") from exc
    return ClassificationCertificate(verdict, _node_from_doc(trace))


def _node_from_doc(doc: dict[str, Any]) -> Any:
    kind = doc.get("kind")
    if kind == "unweighted_base":
        return UnweightedBaseNode()
    if kind == "single_matching_base":
        return NuOneBaseNode(bool(doc["polymatroidal"]))
    if kind == "isolated_edge":
        a, b = doc["edge"]
        return IsolatedEdgeNode((int(a), int(b)), certificate_from_doc(doc["child"]))
    if kind == "strong_edge":
        return StrongEdgeNode(
            _config_from_doc(doc["config"]), certificate_from_doc(doc["child"])
        )
    if kind == "star_factor":
        return StarFactorNode(
            _config_from_doc(doc["config"]),
            int(doc["delta"]),
            certificate_from_doc(doc["child_without_center"]),
        )
    if kind == "star_split":
        return StarSplitNode(
            _config_from_doc(doc["config"]),
            certificate_from_doc(doc["child_without_center"]),
            certificate_from_doc(doc["child_without_center_anchor"]),
        )
    if kind == "refuted":
        child = doc.get("child")
        return RefutedNode(
            str(doc["condition"]),
            tuple(int(v) for v in doc["locus"]),
            certificate_from_doc(child) if child is not None else None,
        )
    raise ValueError(f"unknown certificate node kind {kind!r}")
