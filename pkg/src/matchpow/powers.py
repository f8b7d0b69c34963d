"""Edge ideals of weighted oriented graphs and matching powers of monomial ideals.

The k-th matching power of I is generated by products of k monomials of I with
pairwise disjoint supports; it suffices to multiply minimal generators, since
every monomial of I is divisible by a minimal generator with smaller support.
For an edge ideal the generators correspond to k-matchings of the underlying
graph (two routes that the test suite checks against each other).
"""

from __future__ import annotations

from .graphs import Matching, WeightedOrientedGraph, enumerate_matchings
from .monomials import Monomial, MonomialIdeal, minimalize

__all__ = [
    "edge_monomial",
    "edge_ideal",
    "matching_power",
    "matching_power_from_matchings",
    "monomial_grade",
    "decompose_generator",
]


def edge_monomial(D: WeightedOrientedGraph, edge: tuple[int, int]) -> Monomial:
    """The monomial x_t * x_h^{w(h)} of the directed form of underlying {a, b}."""
    t, h = D.orientation(*edge)
    exps = [0] * D.n
    exps[t - 1] += 1
    exps[h - 1] += D.weight(h)
    return Monomial(tuple(exps))


def edge_ideal(D: WeightedOrientedGraph) -> MonomialIdeal:
    """The ideal generated by x_t x_h^{w(h)} over directed edges (t, h).

    Heads always have an incoming edge, so source weights never enter; with
    all weights 1 this is the usual squarefree edge ideal.  An edgeless graph
    yields the zero ideal.
    """
    return minimalize((edge_monomial(D, e) for e in D.underlying_edges), D.n)


def matching_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """The k-th matching power of I.

    k = 0 gives the unit ideal (empty product).  The result is zero when no k
    generators have pairwise disjoint supports.  The unit ideal is its own
    matching power for every k (1 has empty support).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return MonomialIdeal.unit(I.n)
    if I.is_zero():
        return MonomialIdeal.zero(I.n)
    if I.is_unit():
        return MonomialIdeal.unit(I.n)
    gens = I.gens
    masks = []
    for g in gens:
        m = 0
        for i, e in enumerate(g.exponents):
            if e:
                m |= 1 << i
        masks.append(m)
    # cliques of the disjointness graph on generators, found by candidate-set
    # intersection rather than scanning all k-subsets
    compat = [0] * len(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not masks[i] & masks[j]:
                compat[i] |= 1 << j
    products: list[Monomial] = []
    exps = [0] * I.n

    def extend(cands: int, depth: int) -> None:
        if depth == k:
            products.append(Monomial(tuple(exps)))
            return
        c = cands
        while c:
            bit = c & -c
            c ^= bit
            if depth + 1 + c.bit_count() < k:
                break  # candidates are visited in ascending order
            i = bit.bit_length() - 1
            gexp = gens[i].exponents
            for p, e in enumerate(gexp):
                exps[p] += e
            extend(cands & compat[i], depth + 1)
            for p, e in enumerate(gexp):
                exps[p] -= e

    start = (1 << len(gens)) - 1
    extend(start, 0)
    return minimalize(products, I.n)


def matching_power_from_matchings(D: WeightedOrientedGraph, k: int) -> MonomialIdeal:
    """Matching power of the edge ideal built directly from k-matchings."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return MonomialIdeal.unit(D.n)
    products = []
    for m in enumerate_matchings(D, k):
        exps = [0] * D.n
        for a, b in m.edges:
            t, h = D.orientation(a, b)
            exps[t - 1] += 1
            exps[h - 1] += D.weight(h)
        products.append(Monomial(tuple(exps)))
    return minimalize(products, D.n)


def monomial_grade(I: MonomialIdeal) -> int:
    """Largest k with a k-subset of generators having pairwise disjoint supports."""
    if I.is_zero():
        raise ValueError("the zero ideal has no monomial grade")
    if I.is_unit():
        raise ValueError("the unit ideal has unbounded monomial grade")
    gens = I.gens
    masks = []
    for g in gens:
        m = 0
        for i, e in enumerate(g.exponents):
            if e:
                m |= 1 << i
        masks.append(m)
    compat = [0] * len(gens)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not masks[i] & masks[j]:
                compat[i] |= 1 << j

    best = 0

    def extend(cands: int, depth: int) -> None:
        nonlocal best
        best = max(best, depth)
        c = cands
        while c:
            bit = c & -c
            c ^= bit
            if depth + 1 + c.bit_count() <= best:
                break
            i = bit.bit_length() - 1
            extend(cands & compat[i], depth + 1)

    extend((1 << len(gens)) - 1, 0)
    return best


def decompose_generator(D: WeightedOrientedGraph, u: Monomial, k: int) -> Matching:
    """A k-matching whose edge monomials multiply to u, first in edge order.

    Raises if no decomposition exists (u is then not a generator of the k-th
    matching power of the edge ideal).
    """
    if u.n != D.n:
        raise ValueError("ambient variable counts differ")
    edges = D.underlying_edges
    monomials = [edge_monomial(D, e).exponents for e in edges]
    remaining = list(u.exponents)
    chosen: list[tuple[int, int]] = []

    def rec(start: int) -> bool:
        if len(chosen) == k:
            return not any(remaining)
        for idx in range(start, len(edges)):
            m = monomials[idx]
            if all(r >= e for r, e in zip(remaining, m)):
                a, b = edges[idx]
                if any(a in e or b in e for e in chosen):
                    continue
                chosen.append(edges[idx])
                for p, e in enumerate(m):
                    remaining[p] -= e
                if rec(idx + 1):
                    return True
                chosen.pop()
                for p, e in enumerate(m):
                    remaining[p] += e
        return False

    if not rec(0):
        raise ValueError(f"{u} has no decomposition into {k} disjoint edge monomials")
    return Matching(tuple(sorted(chosen)))
