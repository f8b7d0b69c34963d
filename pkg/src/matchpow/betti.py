"""Multigraded Betti numbers of monomial ideals at desk scale.

beta_{i,a}(I) is the dimension of the reduced homology H~_{i-1} of the upper
Koszul simplicial complex at multidegree a, whose faces are the subsets F of
supp(a) with x^a / x_F in I.  Nonzero entries occur only at multidegrees in
the lcm lattice of the generators, which keeps the scan finite.  Homology is
computed by exact boundary-matrix ranks, over GF(2) by default and over the
rationals on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from .monomials import Monomial, MonomialIdeal

__all__ = [
    "FIELD_GF2",
    "FIELD_RATIONALS",
    "GeneratorCapError",
    "SimplicialComplex",
    "lcm_lattice",
    "koszul_complex",
    "reduced_homology_ranks",
    "BettiTable",
    "betti_numbers",
    "has_linear_resolution",
    "is_linearly_related",
    "regularity",
    "field_discrepancies",
    "DEFAULT_GENERATOR_CAP",
]

FIELD_GF2 = "gf2"
FIELD_RATIONALS = "q"
DEFAULT_GENERATOR_CAP = 14


class GeneratorCapError(RuntimeError):
    """Raised when an ideal has too many generators for the Betti scan."""


def _check_field(field: str) -> None:
    if field not in (FIELD_GF2, FIELD_RATIONALS):
        raise ValueError(f"unknown field {field!r}; use {FIELD_GF2!r} or {FIELD_RATIONALS!r}")


def lcm_lattice(I: MonomialIdeal) -> list[Monomial]:
    """Closure of the generator multidegrees under pairwise lcm, sorted."""
    if I.is_zero():
        raise ValueError("the zero ideal has an empty lcm lattice")
    gens = [g.exponents for g in I.gens]
    known = set(gens)
    frontier = list(gens)
    while frontier:
        fresh = []
        for f in frontier:
            for g in gens:
                j = tuple(max(a, b) for a, b in zip(f, g))
                if j not in known:
                    known.add(j)
                    fresh.append(j)
        frontier = fresh
    return [Monomial(e) for e in sorted(known, key=lambda e: (sum(e), e))]


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex stored by its facets.

    ``facets == ()`` is the void complex (no faces at all); a single empty
    facet is the irrelevant complex whose only face is the empty set.
    """

    ground: tuple[int, ...]
    facets: tuple[frozenset[int], ...]

    def is_void(self) -> bool:
        return not self.facets

    def is_irrelevant(self) -> bool:
        return self.facets == (frozenset(),)

    def faces(self) -> list[frozenset[int]]:
        """Every face, deduplicated, sorted by dimension then vertex list."""
        out: set[frozenset[int]] = set()
        for facet in self.facets:
            members = sorted(facet)
            for mask in range(1 << len(members)):
                out.add(frozenset(members[i] for i in range(len(members)) if mask >> i & 1))
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def dim(self) -> int:
        if self.is_void():
            raise ValueError("the void complex has no dimension")
        return max(len(f) for f in self.facets) - 1

    def euler_characteristic_reduced(self) -> int:
        """Alternating sum of face counts, empty face included."""
        total = 0
        for f in self.faces():
            total += -1 if len(f) % 2 == 0 else 1
        return total


def _koszul_faces(gens_exps: list[tuple[int, ...]], aexp: tuple[int, ...]):
    """Support positions and face masks of the Koszul complex at a.

    Faces are returned as bitmasks over the support positions; an empty list
    means the void complex.  Membership of x^a / x_F is monotone under
    shrinking F, so the search extends faces only.
    """
    divisors = [g for g in gens_exps if all(ge <= ae for ge, ae in zip(g, aexp))]
    supp = [i for i, e in enumerate(aexp) if e]
    if not divisors:
        return supp, []
    quotient = list(aexp)
    faces: list[int] = []

    def member() -> bool:
        for g in divisors:
            for ge, qe in zip(g, quotient):
                if ge > qe:
                    break
            else:
                return True
        return False

    def dfs(mask: int, next_pos: int) -> None:
        faces.append(mask)
        for p in range(next_pos, len(supp)):
            var = supp[p]
            quotient[var] -= 1
            if member():
                dfs(mask | (1 << p), p + 1)
            quotient[var] += 1

    dfs(0, 0)  # the empty face is present: some generator divides x^a
    return supp, faces


def koszul_complex(I: MonomialIdeal, a: Monomial) -> SimplicialComplex:
    """The upper Koszul complex of I at multidegree a (possibly void)."""
    if a.n != I.n:
        raise ValueError("ambient variable counts differ")
    gens_exps = [g.exponents for g in I.gens]
    supp, faces = _koszul_faces(gens_exps, a.exponents)
    ground = tuple(p + 1 for p in supp)
    if not faces:
        return SimplicialComplex(ground, ())
    face_set = set(faces)
    facets = []
    for f in faces:
        if not any((f | (1 << p)) in face_set for p in range(len(supp)) if not f >> p & 1):
            facets.append(frozenset(supp[p] + 1 for p in range(len(supp)) if f >> p & 1))
    facets.sort(key=lambda s: (len(s), sorted(s)))
    return SimplicialComplex(ground, tuple(facets))


def _gf2_rank(cols: list[int]) -> int:
    pivots: list[int] = []
    for col in cols:
        for p in pivots:
            if col & (p & -p):
                col ^= p
        if col:
            pivots.append(col)
    return len(pivots)


def _int_rank(rows: list[list[int]], ncols: int) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pivot = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col]
            row = mat[r]
            top = mat[rank]
            for c in range(col, ncols):
                row[c] = (row[c] * pivot - factor * top[c]) // prev
        prev = pivot
        rank += 1
    return rank


def _ranks_from_faces(faces: list[int], field: str) -> list[int]:
    """Reduced homology ranks [H~_{-1}, H~_0, ..., H~_dim] from face masks."""
    _check_field(field)
    if not faces:
        return []
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    top = max(by_dim)
    for d in by_dim:
        by_dim[d].sort()
    index = {d: {f: i for i, f in enumerate(masks)} for d, masks in by_dim.items()}
    # rank of the boundary map C_d -> C_{d-1}
    bd_rank: dict[int, int] = {}
    bd_rank[0] = 1 if by_dim.get(0) else 0  # every vertex maps to the empty face
    for d in range(1, top + 1):
        rows_idx = index.get(d - 1, {})
        cols = []
        if field == FIELD_GF2:
            for f in by_dim.get(d, []):
                col = 0
                m = f
                while m:
                    bit = m & -m
                    m ^= bit
                    col |= 1 << rows_idx[f ^ bit]
                cols.append(col)
            bd_rank[d] = _gf2_rank(cols)
        else:
            nrows = len(rows_idx)
            int_rows = []
            for f in by_dim.get(d, []):
                row = [0] * nrows
                sign = 1
                m = f
                while m:
                    bit = m & -m
                    m ^= bit
                    row[rows_idx[f ^ bit]] = sign
                    sign = -sign
                int_rows.append(row)
            bd_rank[d] = _int_rank(int_rows, nrows)
    ranks = []
    for d in range(-1, top + 1):
        fd = len(by_dim.get(d, []))
        r_in = bd_rank.get(d + 1, 0)
        r_out = bd_rank.get(d, 0) if d >= 0 else 0
        ranks.append(fd - r_out - r_in)
    return ranks


def reduced_homology_ranks(C: SimplicialComplex, field: str = FIELD_GF2) -> list[int]:
    """Ranks of H~_d for d = -1 .. dim(C); empty for the void complex."""
    _check_field(field)
    if C.is_void():
        return []
    pos = {v: i for i, v in enumerate(C.ground)}
    masks = set()
    for facet in C.facets:
        members = sorted(facet)
        for sub in range(1 << len(members)):
            m = 0
            for i in range(len(members)):
                if sub >> i & 1:
                    m |= 1 << pos[members[i]]
            masks.add(m)
    return _ranks_from_faces(sorted(masks), field)


@dataclass
class BettiTable:
    """Nonzero multigraded Betti numbers of an ideal.

    ``entries[(i, a)]`` is beta_{i,a}; ``i = 0`` counts minimal generators.
    """

    n: int
    entries: dict[tuple[int, tuple[int, ...]], int]
    gen_degrees: tuple[int, ...]

    def totalized(self) -> dict[tuple[int, int], int]:
        """The coarse table beta_{i,j} summed over multidegrees of degree j."""
        out: dict[tuple[int, int], int] = {}
        for (i, a), r in self.entries.items():
            key = (i, sum(a))
            out[key] = out.get(key, 0) + r
        return out

    def regularity(self) -> int:
        return max(sum(a) - i for (i, a) in self.entries)

    def max_index(self) -> int:
        return max(i for (i, _) in self.entries)


def _require_capped(I: MonomialIdeal, cap: int) -> None:
    if len(I.gens) > cap:
        raise GeneratorCapError(
            f"ideal has {len(I.gens)} generators, above the Betti cap {cap}; "
            "raise the cap explicitly if the 2^|support| face scans are acceptable"
        )


def betti_numbers(
    I: MonomialIdeal, field: str = FIELD_GF2, cap: int = DEFAULT_GENERATOR_CAP
) -> BettiTable:
    """The full multigraded Betti table of a nonzero monomial ideal."""
    _check_field(field)
    if I.is_zero():
        raise ValueError("the zero ideal has no Betti table")
    _require_capped(I, cap)
    gens_exps = [g.exponents for g in I.gens]
    entries: dict[tuple[int, tuple[int, ...]], int] = {}
    for a in lcm_lattice(I):
        _, faces = _koszul_faces(gens_exps, a.exponents)
        ranks = _ranks_from_faces(faces, field)
        for i, r in enumerate(ranks):
            if r:
                entries[(i, a.exponents)] = r
    degrees = tuple(sorted({g.degree for g in I.gens}))
    return BettiTable(I.n, entries, degrees)


def has_linear_resolution(
    I: MonomialIdeal, field: str = FIELD_GF2, cap: int = DEFAULT_GENERATOR_CAP
) -> bool:
    """True iff every nonzero beta_{i,a} sits at total degree i + d.

    Ideals not generated in a single degree do not qualify.  Scans the lcm
    lattice with early exit.
    """
    _check_field(field)
    if I.is_zero():
        raise ValueError("the zero ideal has no resolution to classify")
    d = I.is_equigenerated()
    if d is None:
        return False
    _require_capped(I, cap)
    gens_exps = [g.exponents for g in I.gens]
    for a in lcm_lattice(I):
        offset = a.degree - d
        _, faces = _koszul_faces(gens_exps, a.exponents)
        ranks = _ranks_from_faces(faces, field)
        for i, r in enumerate(ranks):
            if r and i != offset:
                return False
    return True


def _h0_at(gens_exps: list[tuple[int, ...]], aexp: tuple[int, ...]) -> int:
    """dim H~_0 of the Koszul complex at a: component count minus one.

    Only the vertices and edges of the complex matter for H~_0.
    """
    divisors = [g for g in gens_exps if all(ge <= ae for ge, ae in zip(g, aexp))]
    if not divisors:
        return 0
    quotient = list(aexp)

    def member() -> bool:
        for g in divisors:
            for ge, qe in zip(g, quotient):
                if ge > qe:
                    break
            else:
                return True
        return False

    verts = []
    for v in (i for i, e in enumerate(aexp) if e):
        quotient[v] -= 1
        if member():
            verts.append(v)
        quotient[v] += 1
    if len(verts) <= 1:
        return 0
    parent = {v: v for v in verts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ii in range(len(verts)):
        for jj in range(ii + 1, len(verts)):
            u, v = verts[ii], verts[jj]
            quotient[u] -= 1
            quotient[v] -= 1
            if member():
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            quotient[u] += 1
            quotient[v] += 1
    components = sum(1 for v in verts if find(v) == v)
    return components - 1


def is_linearly_related(I: MonomialIdeal) -> bool:
    """True iff every nonzero beta_{1,a} sits at total degree d + 1.

    Only H~_0 of the Koszul complexes is needed, so no generator cap applies.
    Ideals not generated in a single degree do not qualify.
    """
    if I.is_zero():
        raise ValueError("the zero ideal has no resolution to classify")
    d = I.is_equigenerated()
    if d is None:
        return False
    gens_exps = [g.exponents for g in I.gens]
    for a in lcm_lattice(I):
        if a.degree == d + 1:
            continue
        if _h0_at(gens_exps, a.exponents):
            return False
    return True


def regularity(
    I: MonomialIdeal, field: str = FIELD_GF2, cap: int = DEFAULT_GENERATOR_CAP
) -> int:
    """max(|a| - i) over the nonzero Betti entries."""
    return betti_numbers(I, field, cap).regularity()


def field_discrepancies(
    I: MonomialIdeal, cap: int = DEFAULT_GENERATOR_CAP
) -> list[tuple[int, tuple[int, ...], int, int]]:
    """Entries where the GF(2) and rational Betti tables disagree.

    Such specimens would witness characteristic dependence; they are reported
    rather than treated as failures.
    """
    t2 = betti_numbers(I, FIELD_GF2, cap).entries
    tq = betti_numbers(I, FIELD_RATIONALS, cap).entries
    out = []
    for key in sorted(set(t2) | set(tq)):
        r2 = t2.get(key, 0)
        rq = tq.get(key, 0)
        if r2 != rq:
            out.append((key[0], key[1], r2, rq))
    return out
