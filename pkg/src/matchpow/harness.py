"""Cross-validation harness: independent oracles against the classifier.

Every trial computes up to four verdicts for the last matching power of a
weighted oriented forest: linearly related and linear resolution from the
Betti machinery, polymatroidal from the exchange check, and the recursive
classifier.  Exhaustive drivers stream labelled instances, cache oracle
verdicts by a permutation-canonical form of the generator set (verdicts are
invariant under relabelling variables), and fan out across processes.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from operator import itemgetter
from typing import Any, Optional

from .betti import (
    DEFAULT_GENERATOR_CAP,
    betti_numbers,
    has_linear_resolution,
    is_linearly_related,
)
from .classify import classify_last_power
from .exchange import is_polymatroidal
from .generate import (
    SplitMix64,
    build_random_forest,
    forest_edge_sets,
    random_simple_graph,
)
from .graphs import WeightedOrientedGraph, is_strong_edge, matching_number
from .monomials import Monomial, MonomialIdeal
from .powers import matching_power_from_matchings
from .serialize import graph_to_doc

__all__ = [
    "OracleCaps",
    "TrialReport",
    "worker_count",
    "cross_validate",
    "verify_thm11_exhaustive",
    "verify_thm11_random",
    "verify_thm34_exhaustive",
    "verify_thm34_random",
    "verify_lemma22",
    "verify_lemma31",
]

WORKERS_ENV = "MATCHPOW_WORKERS"


@dataclass(frozen=True)
class OracleCaps:
    """Resource caps; oracles above them are skipped and counted, never faked."""

    betti_max_generators: int = DEFAULT_GENERATOR_CAP
    exchange_max_pairs: int = 4000


@dataclass
class TrialReport:
    """One cross-validated instance: verdicts, timings, and the agreement flag."""

    instance: dict[str, Any]
    verdicts: dict[str, Optional[bool]]
    timings: dict[str, float]
    agreement: bool
    skipped: tuple[str, ...] = ()

    def to_doc(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "verdicts": self.verdicts,
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "agreement": self.agreement,
            "skipped": list(self.skipped),
        }


def worker_count(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_tasks(fn, tasks, workers: int, chunksize: int = 1):
    """Map fn over tasks, in order, inline or across processes."""
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))


# ---------------------------------------------------------------------------
# oracle verdicts, cached by a relabelling-canonical form of the generators
# ---------------------------------------------------------------------------

_CANON_LIMIT = 720  # fall back to the identity column order beyond this

_exact_keys: dict[tuple, tuple] = {}
_verdict_cache: dict[tuple, tuple] = {}
_linrel_cache: dict[tuple, bool] = {}


def _canonical_key(gens: tuple[tuple[int, ...], ...]) -> tuple:
    """Generators projected to their support, minimised over admissible column
    permutations (columns may only swap within equal exponent-multiset groups)."""
    ncols = len(gens[0])
    cols = [j for j in range(ncols) if any(g[j] for g in gens)]
    if not cols:
        return tuple(() for _ in gens)
    sig = {j: tuple(sorted(g[j] for g in gens)) for j in cols}
    groups: dict[tuple, list[int]] = {}
    for j in cols:
        groups.setdefault(sig[j], []).append(j)
    ordered_groups = [groups[s] for s in sorted(groups)]
    count = 1
    for g in ordered_groups:
        count *= factorial(len(g))
        if count > _CANON_LIMIT:
            break
    if count > _CANON_LIMIT:
        order = [j for g in ordered_groups for j in g]
        pick = itemgetter(*order) if len(order) > 1 else _single_getter(order[0])
        return tuple(sorted(pick(g) for g in gens))
    best = None
    for perm_choice in product(*(permutations(g) for g in ordered_groups)):
        order = [j for grp in perm_choice for j in grp]
        pick = itemgetter(*order) if len(order) > 1 else _single_getter(order[0])
        cand = tuple(sorted(pick(g) for g in gens))
        if best is None or cand < best:
            best = cand
    return best


def _single_getter(col: int):
    return lambda g: (g[col],)


def _ideal_from_key(key: tuple) -> MonomialIdeal:
    n = len(key[0]) if key else 0
    return MonomialIdeal(n, tuple(Monomial(g) for g in key))


def _oracle_abc(
    gens: tuple[tuple[int, ...], ...], caps: OracleCaps
) -> tuple[Optional[bool], Optional[bool], Optional[bool]]:
    """(linearly_related, polymatroidal, linear_resolution); None when capped."""
    if len({sum(g) for g in gens}) > 1:
        # mixed generation degrees: all three predicates are False outright
        return (False, False, False)
    key = _exact_keys.get(gens)
    if key is None:
        key = _canonical_key(gens)
        _exact_keys[gens] = key
    hit = _verdict_cache.get(key)
    if hit is not None:
        return hit
    I = _ideal_from_key(key)
    g = len(key)
    if g * (g - 1) <= caps.exchange_max_pairs:
        b = is_polymatroidal(I)
    else:
        b = None
    if g <= caps.betti_max_generators:
        a = is_linearly_related(I)
        c = has_linear_resolution(I)
    else:
        a = c = None
    result = (a, b, c)
    _verdict_cache[key] = result
    return result


def _oracle_linrel(gens: tuple[tuple[int, ...], ...], caps: OracleCaps) -> Optional[bool]:
    if len({sum(g) for g in gens}) > 1:
        return False
    key = _exact_keys.get(gens)
    if key is None:
        key = _canonical_key(gens)
        _exact_keys[gens] = key
    hit = _linrel_cache.get(key)
    if hit is None:
        if len(key) > caps.betti_max_generators:
            return None
        hit = is_linearly_related(_ideal_from_key(key))
        _linrel_cache[key] = hit
    return hit


def _constant_degree_ok(gens: tuple[tuple[int, ...], ...]) -> bool:
    """Whenever a variable has exponent r > 1 in some generator, it has
    exponent exactly r in every generator."""
    for j in range(len(gens[0])):
        column = [g[j] for g in gens]
        mx = max(column)
        if mx > 1 and any(e != mx for e in column):
            return False
    return True


# ---------------------------------------------------------------------------
# per-instance cross-validation
# ---------------------------------------------------------------------------


def cross_validate(
    D: WeightedOrientedGraph,
    caps: OracleCaps = OracleCaps(),
    instance_info: Optional[dict[str, Any]] = None,
) -> TrialReport:
    """All four verdicts for the last matching power of D, with timings.

    Oracles above their caps are skipped (verdict None, listed in
    ``skipped``); the agreement flag covers the verdicts actually computed.
    """
    nu = matching_number(D)
    if nu < 1:
        raise ValueError("cross-validation needs at least one edge")
    verdicts: dict[str, Optional[bool]] = {}
    timings: dict[str, float] = {}
    skipped: list[str] = []

    t0 = time.perf_counter()
    I = matching_power_from_matchings(D, nu)
    timings["power"] = time.perf_counter() - t0

    g = len(I.gens)
    t0 = time.perf_counter()
    if g * (g - 1) <= caps.exchange_max_pairs:
        verdicts["polymatroidal"] = is_polymatroidal(I)
    else:
        verdicts["polymatroidal"] = None
        skipped.append("polymatroidal")
    timings["polymatroidal"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if g <= caps.betti_max_generators:
        verdicts["linearly_related"] = is_linearly_related(I)
        verdicts["linear_resolution"] = has_linear_resolution(I)
    else:
        verdicts["linearly_related"] = None
        verdicts["linear_resolution"] = None
        skipped.extend(["linearly_related", "linear_resolution"])
    timings["betti"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    verdicts["classifier"] = classify_last_power(D).verdict
    timings["classifier"] = time.perf_counter() - t0

    known = [v for v in verdicts.values() if v is not None]
    agreement = len(set(known)) <= 1
    info = dict(instance_info or {})
    info["graph"] = graph_to_doc(D)
    info["matching_number"] = nu
    return TrialReport(info, verdicts, timings, agreement, tuple(skipped))


# ---------------------------------------------------------------------------
# last-power exchange property over all small graphs (thm11)
# ---------------------------------------------------------------------------


def _max_matching_supports(n: int, edges: list[tuple[int, int]]) -> tuple[int, set[int]]:
    """Matching number and the vertex-support bitmasks of maximum matchings.

    A vertex mask supports a matching iff the induced subgraph has a perfect
    matching, decided by a bottom-up scan over even-popcount masks.
    """
    adj = [0] * n
    for a, b in edges:
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)
    size = 1 << n
    matchable = bytearray(size)
    matchable[0] = 1
    best = 0
    for mask in range(3, size):
        if mask.bit_count() & 1:
            continue
        vbit = mask & -mask
        cand = adj[vbit.bit_length() - 1] & mask
        rest = mask ^ vbit
        while cand:
            ubit = cand & -cand
            cand ^= ubit
            if matchable[rest ^ ubit]:
                matchable[mask] = 1
                if mask.bit_count() > best:
                    best = mask.bit_count()
                break
    if not best:
        return 0, set()
    supports = {
        mask for mask in range(size) if matchable[mask] and mask.bit_count() == best
    }
    return best // 2, supports


def _thm11_chunk(args: tuple[int, int, int]) -> tuple[int, list[dict[str, Any]]]:
    n, lo, hi = args
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    checked = 0
    failures: list[dict[str, Any]] = []
    for mask in range(lo, hi):
        if not mask:
            continue
        edges = []
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            edges.append(pairs[bit.bit_length() - 1])
        _, supports = _max_matching_supports(n, edges)
        gens = tuple(
            sorted(tuple(1 if s >> i & 1 else 0 for i in range(n)) for s in supports)
        )
        I = MonomialIdeal(n, tuple(Monomial(g) for g in gens))
        if not is_polymatroidal(I):
            failures.append({"n": n, "edges": edges})
        checked += 1
    return checked, failures


def verify_thm11_exhaustive(max_n: int = 7, workers: Optional[int] = None) -> dict[str, Any]:
    """Exchange property of the last matching power over every labelled simple
    graph with at least one edge on 2..max_n vertices."""
    w = worker_count(workers)
    started = time.perf_counter()
    tasks: list[tuple[int, int, int]] = []
    for n in range(2, max_n + 1):
        total = 1 << (n * (n - 1) // 2)
        step = max(1, min(total, 1 << 15))
        tasks.extend((n, lo, min(lo + step, total)) for lo in range(0, total, step))
    results = _run_tasks(_thm11_chunk, tasks, w)
    checked = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return {
        "command": "thm11-exhaustive",
        "max_n": max_n,
        "graphs_checked": checked,
        "failures": failures,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }


def verify_thm11_random(
    trials: int = 500, max_n: int = 9, seed: int = 42, workers: Optional[int] = None
) -> dict[str, Any]:
    """Exchange property of the last power on seeded random graphs.

    Edgeless draws are redrawn on the same stream so every trial carries at
    least one edge; edge probability alternates over {0.2, 0.4} by draw.
    """
    del workers  # cheap enough inline; kept for CLI symmetry
    started = time.perf_counter()
    rng = SplitMix64(seed)
    failures: list[dict[str, Any]] = []
    reports: list[dict[str, Any]] = []
    for idx in range(trials):
        while True:
            n = rng.randint(2, max_n)
            p = rng.choice((0.2, 0.4))
            G = random_simple_graph(n, p, rng)
            if G.underlying_edges:
                break
        nu, supports = _max_matching_supports(n, list(G.underlying_edges))
        gens = tuple(
            sorted(tuple(1 if s >> i & 1 else 0 for i in range(n)) for s in supports)
        )
        ok = is_polymatroidal(MonomialIdeal(n, tuple(Monomial(g) for g in gens)))
        reports.append(
            {"index": idx, "n": n, "p": p, "nu": nu, "generators": len(gens), "ok": ok}
        )
        if not ok:
            failures.append({"index": idx, "edges": list(G.underlying_edges)})
    return {
        "command": "thm11-random",
        "trials": trials,
        "max_n": max_n,
        "seed": seed,
        "failures": failures,
        "reports": reports,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }


# ---------------------------------------------------------------------------
# forest classification equivalence (thm34)
# ---------------------------------------------------------------------------


def _matchings_by_size(edges: tuple[tuple[int, int], ...]) -> list[list[tuple[int, ...]]]:
    """Matchings as edge-index tuples, grouped by size; index k holds the
    k-matchings.  The outer list stops at the matching number."""
    by_size: list[list[tuple[int, ...]]] = [[()]]
    chosen: list[int] = []
    used: set[int] = set()

    def rec(start: int) -> None:
        for idx in range(start, len(edges)):
            a, b = edges[idx]
            if a in used or b in used:
                continue
            chosen.append(idx)
            used.add(a)
            used.add(b)
            if len(chosen) >= len(by_size):
                by_size.append([])
            by_size[len(chosen)].append(tuple(chosen))
            rec(idx + 1)
            chosen.pop()
            used.discard(a)
            used.discard(b)

    rec(0)
    return by_size


def _power_gens(
    n: int,
    directed: list[tuple[int, int]],
    weights: list[int],
    matchings: list[tuple[int, ...]],
) -> tuple[tuple[int, ...], ...]:
    out = set()
    for m in matchings:
        exps = [0] * n
        for ei in m:
            t, h = directed[ei]
            exps[t - 1] += 1
            exps[h - 1] += weights[h]
        out.add(tuple(exps))
    return tuple(sorted(out))


def _agg_zero() -> dict[str, Any]:
    return {
        "instances": 0,
        "disagreement_count": 0,
        "disagreements": [],
        "skipped_oracle": 0,
        "low_power_checked": 0,
        "low_power_violations": [],
        "constant_degree_checked": 0,
        "constant_degree_violations": [],
    }


_DUMP_LIMIT = 25  # replayable instance docs kept per aggregate


def _thm34_forest_task(args: tuple[int, tuple, int, int, int]) -> dict[str, Any]:
    n, underlying, w_max, betti_cap, exch_cap = args
    caps = OracleCaps(betti_cap, exch_cap)
    agg = _agg_zero()
    by_size = _matchings_by_size(underlying)
    nu = len(by_size) - 1
    if nu < 2:
        return agg
    m = len(underlying)
    vertices = tuple(range(1, n + 1))
    for orient_mask in range(1 << m):
        directed = [
            underlying[i] if orient_mask >> i & 1 == 0 else (underlying[i][1], underlying[i][0])
            for i in range(m)
        ]
        sorted_edges = tuple(sorted(directed))
        heads = sorted({h for _, h in directed})
        weights = [1] * (n + 1)
        for combo in product(range(1, w_max + 1), repeat=len(heads)):
            if all(w == 1 for w in combo):
                continue  # unweighted: the edge ideal equals the plain one
            for h, w in zip(heads, combo):
                weights[h] = w
            gens_nu = _power_gens(n, directed, weights, by_size[nu])
            a, b, c = _oracle_abc(gens_nu, caps)
            if a is None or c is None or b is None:
                agg["skipped_oracle"] += 1
            D = WeightedOrientedGraph(n, sorted_edges, tuple(weights[1:]), vertices)
            d = classify_last_power(D).verdict
            known = {v for v in (a, b, c, d) if v is not None}
            agg["instances"] += 1
            if len(known) > 1:
                agg["disagreement_count"] += 1
                if len(agg["disagreements"]) < _DUMP_LIMIT:
                    agg["disagreements"].append(
                        {
                            "graph": graph_to_doc(D),
                            "verdicts": {
                                "linearly_related": a,
                                "polymatroidal": b,
                                "linear_resolution": c,
                                "classifier": d,
                            },
                        }
                    )
            if a:
                agg["constant_degree_checked"] += 1
                if not _constant_degree_ok(gens_nu):
                    agg["constant_degree_violations"].append({"graph": graph_to_doc(D)})
            for k in range(1, nu):
                gens_k = _power_gens(n, directed, weights, by_size[k])
                lr = _oracle_linrel(gens_k, caps)
                agg["low_power_checked"] += 1
                if lr is None:
                    agg["skipped_oracle"] += 1
                if lr:
                    agg["low_power_violations"].append(
                        {"graph": graph_to_doc(D), "k": k}
                    )
                    agg["constant_degree_checked"] += 1
                    if not _constant_degree_ok(gens_k):
                        agg["constant_degree_violations"].append(
                            {"graph": graph_to_doc(D), "k": k}
                        )
            for h in heads:
                weights[h] = 1
    return agg


def _merge_aggs(aggs: list[dict[str, Any]]) -> dict[str, Any]:
    total = _agg_zero()
    for a in aggs:
        total["instances"] += a["instances"]
        total["disagreement_count"] += a["disagreement_count"]
        total["skipped_oracle"] += a["skipped_oracle"]
        total["low_power_checked"] += a["low_power_checked"]
        total["constant_degree_checked"] += a["constant_degree_checked"]
        for key in ("disagreements", "low_power_violations", "constant_degree_violations"):
            room = _DUMP_LIMIT - len(total[key])
            if room > 0:
                total[key].extend(a[key][:room])
    return total


def verify_thm34_exhaustive(
    max_n: int = 6,
    max_weight: int = 3,
    workers: Optional[int] = None,
    caps: OracleCaps = OracleCaps(),
) -> dict[str, Any]:
    """Equivalence of all four verdicts over every labelled weighted oriented
    forest on 2..max_n vertices with non-source weights up to max_weight,
    restricted to matching number >= 2 and at least one weight above 1.

    Also verifies that no matching power below the top one is linearly
    related, and the constant-exponent property on linearly related powers.
    """
    w = worker_count(workers)
    started = time.perf_counter()
    tasks = [
        (n, underlying, max_weight, caps.betti_max_generators, caps.exchange_max_pairs)
        for n in range(2, max_n + 1)
        for underlying in forest_edge_sets(n)
        if underlying
    ]
    # large forests first for better load balance across processes
    tasks.sort(key=lambda t: -len(t[1]))
    results = _run_tasks(_thm34_forest_task, tasks, w, chunksize=8)
    total = _merge_aggs(results)
    total["command"] = "thm34-exhaustive"
    total["max_n"] = max_n
    total["max_weight"] = max_weight
    total["elapsed_s"] = round(time.perf_counter() - started, 3)
    return total


def verify_thm34_random(
    trials: int = 200,
    seed: int = 1,
    max_n: int = 8,
    max_weight: int = 3,
    caps: OracleCaps = OracleCaps(),
) -> dict[str, Any]:
    """Cross-validation of seeded random weighted oriented forests."""
    started = time.perf_counter()
    rng = SplitMix64(seed)
    reports = []
    disagreements = []
    for idx in range(trials):
        while True:
            n = rng.randint(2, max_n)
            D = build_random_forest(n, max_weight, rng)
            if D.underlying_edges:
                break
        report = cross_validate(D, caps, {"index": idx, "seed": seed})
        reports.append(report)
        if not report.agreement:
            disagreements.append(report.to_doc())
    return {
        "command": "thm34-random",
        "trials": trials,
        "seed": seed,
        "max_n": max_n,
        "max_weight": max_weight,
        "disagreements": disagreements,
        "reports": reports,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }


# ---------------------------------------------------------------------------
# induced-subgraph monotonicity of Betti tables (lemma22)
# ---------------------------------------------------------------------------


def verify_lemma22(
    pairs: int = 50,
    seed: int = 7,
    max_n: int = 7,
    max_weight: int = 3,
    caps: OracleCaps = OracleCaps(),
) -> dict[str, Any]:
    """Entrywise Betti monotonicity and regularity monotonicity for induced
    subgraphs: beta_{i,a} of the subgraph power never exceeds the full one.

    Pairs whose powers vanish or exceed the Betti cap are redrawn.
    """
    started = time.perf_counter()
    rng = SplitMix64(seed)
    failures = []
    reports = []
    for idx in range(pairs):
        while True:
            n = rng.randint(max(5, max_n - 2), max_n)
            D = build_random_forest(n, max_weight, rng)
            if not D.underlying_edges:
                continue
            keep_count = rng.randint(3, n)
            verts = list(D.vertices)
            for i in range(len(verts) - 1, 0, -1):  # seeded shuffle
                j = rng.randrange(i + 1)
                verts[i], verts[j] = verts[j], verts[i]
            Dp = D.induced(verts[:keep_count])
            if not Dp.underlying_edges:
                continue
            k = rng.randint(1, matching_number(D))
            Ip = matching_power_from_matchings(Dp, k)
            if Ip.is_zero():
                continue
            I = matching_power_from_matchings(D, k)
            if len(I.gens) < 2:
                continue
            if (
                len(I.gens) > caps.betti_max_generators
                or len(Ip.gens) > caps.betti_max_generators
            ):
                continue
            break
        table = betti_numbers(I)
        table_p = betti_numbers(Ip)
        entry_ok = all(
            r <= table.entries.get(key, 0) for key, r in table_p.entries.items()
        )
        reg_ok = table_p.regularity() <= table.regularity()
        reports.append(
            {
                "index": idx,
                "k": k,
                "graph": graph_to_doc(D),
                "kept": list(Dp.vertices),
                "entrywise_ok": entry_ok,
                "regularity_ok": reg_ok,
            }
        )
        if not (entry_ok and reg_ok):
            failures.append(reports[-1])
    return {
        "command": "lemma22",
        "pairs": pairs,
        "seed": seed,
        "failures": failures,
        "reports": reports,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }


# ---------------------------------------------------------------------------
# pendant strong-edge criterion vs the direct definition (lemma31)
# ---------------------------------------------------------------------------


def verify_lemma31(max_n: int = 6) -> dict[str, Any]:
    """Agreement of the matching-based pendant criterion with the direct
    strong-edge test over every single-pendant configuration of every
    labelled forest with matching number >= 2 on up to max_n vertices."""
    from .classify import strong_edge_criterion
    from .graphs import DistantConfig

    started = time.perf_counter()
    checked = 0
    mismatches = []
    for n in range(2, max_n + 1):
        for underlying in forest_edge_sets(n):
            if len(underlying) < 2:
                continue
            D = WeightedOrientedGraph.build(n, underlying)
            if matching_number(D) < 2:
                continue
            for b in D.vertices:
                if D.degree(b) != 2:
                    continue
                u, v = D.adjacency[b]
                for a, c in ((u, v), (v, u)):
                    if D.degree(a) != 1:
                        continue
                    config = DistantConfig((a,), b, c)
                    got = strong_edge_criterion(D, config)
                    want = is_strong_edge(D, (a, b))
                    checked += 1
                    if got != want:
                        mismatches.append(
                            {"n": n, "edges": list(underlying), "config": [a, b, c]}
                        )
    return {
        "command": "lemma31",
        "max_n": max_n,
        "configurations_checked": checked,
        "mismatches": mismatches,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }
