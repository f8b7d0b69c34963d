"""The polymatroidal exchange property and its constructive witness.

An equigenerated monomial ideal is polymatroidal when for all generators u, v
and every i with deg_i(u) > deg_i(v) there is a j with deg_j(u) < deg_j(v)
such that x_j * u / x_i is again a generator.  For last matching powers of
unweighted graphs the witness j can be produced constructively by walking an
alternating path between two maximum matchings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import WeightedOrientedGraph, matching_number
from .monomials import Monomial, MonomialIdeal
from .powers import decompose_generator

__all__ = [
    "ExchangeFailure",
    "check_exchange",
    "is_polymatroidal",
    "is_matroidal",
    "exchange_witness_last_power",
]


@dataclass(frozen=True)
class ExchangeFailure:
    """A pair (u, v) and index i admitting no exchange step.

    Checkable: deg_i(u) > deg_i(v) and for every j with deg_j(u) < deg_j(v)
    the monomial x_j * u / x_i is not a generator.
    """

    u: Monomial
    v: Monomial
    i: int


def check_exchange(I: MonomialIdeal) -> tuple[bool, Optional[ExchangeFailure]]:
    """Decide polymatroidality; on an exchange break return the witness.

    Zero and unit ideals count as polymatroidal (recursion-base convention).
    Ideals not generated in a single degree are not polymatroidal; no witness
    is attached in that case.
    """
    if I.is_zero() or I.is_unit():
        return True, None
    if I.is_equigenerated() is None:
        return False, None
    gens = [g.exponents for g in I.gens]
    genset = set(gens)
    n = I.n
    for u in gens:
        for v in gens:
            if u is v:
                continue
            for i in range(n):
                if u[i] <= v[i]:
                    continue
                cand = list(u)
                cand[i] -= 1
                for j in range(n):
                    if u[j] < v[j]:
                        cand[j] += 1
                        hit = tuple(cand) in genset
                        cand[j] -= 1
                        if hit:
                            break
                else:
                    return False, ExchangeFailure(Monomial(u), Monomial(v), i + 1)
    return True, None


def is_polymatroidal(I: MonomialIdeal) -> bool:
    return check_exchange(I)[0]


def is_matroidal(I: MonomialIdeal) -> bool:
    """Polymatroidal with squarefree generators."""
    return all(g.is_squarefree() for g in I.gens) and is_polymatroidal(I)


def exchange_witness_last_power(
    D: WeightedOrientedGraph, u: Monomial, v: Monomial, i: int
) -> int:
    """The alternating-path exchange witness for the last matching power.

    Requires an unweighted graph and generators u, v of the top matching power
    with deg_i(u) > deg_i(v).  Decomposes u and v into maximum matchings M_u,
    M_v, then walks edges alternating between the two matchings starting from
    the M_u edge at i until it exits V(M_u); the exit vertex j satisfies
    deg_j(u) < deg_j(v) and x_j * u / x_i is a generator.  The walk visits
    each matching edge at most once, so it stops within nu(G) steps.
    """
    if any(D.weight(x) != 1 for x in D.vertices):
        raise ValueError("witness construction requires an unweighted graph")
    nu = matching_number(D)
    if nu == 0:
        raise ValueError("graph has no edges")
    if u.deg(i) <= v.deg(i):
        raise ValueError(f"deg_{i}(u) must exceed deg_{i}(v)")
    m_u = decompose_generator(D, u, nu)
    m_v = decompose_generator(D, v, nu)
    at_u = {x: e for e in m_u.edges for x in e}
    at_v = {x: e for e in m_v.edges for x in e}
    if i not in at_u:
        raise ValueError(f"variable {i} does not occur in u")

    a, b = at_u[i]
    h = b if a == i else a
    current = h
    for _ in range(nu + 1):
        if current not in at_v:
            raise ValueError("walk left both matchings; inputs violate the contract")
        a, b = at_v[current]
        nxt = b if a == current else a
        if nxt not in at_u:
            return nxt
        a, b = at_u[nxt]
        current = b if a == nxt else a
    raise ValueError("alternating walk failed to terminate; inputs violate the contract")
