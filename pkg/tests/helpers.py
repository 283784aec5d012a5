"""Independent oracles and small fixtures shared by the test modules.

The oracles avoid the package's linear algebra on purpose: degree-0 ranks
come from union-find, higher degrees from a rank-only formula evaluated
with a separate dense row-echelon routine.
"""
from __future__ import annotations

from fractions import Fraction
from mdmatch.complex import ScalarFiltration, SimplicialComplex, VectorFiltration, build_complex, faces


def two_vertex_edge() -> ScalarFiltration:
    """Vertices a, b at 0 joined by an edge at 1."""
    K = build_complex([[0, 1]])
    return ScalarFiltration(K, (0, 0, 1))


def subdivided_edge() -> tuple[SimplicialComplex, VectorFiltration]:
    """Vertex-valued analogue of :func:`two_vertex_edge`: a=0, midpoint=1, b=0."""
    K = build_complex([[0, 2], [2, 1]])
    return K, VectorFiltration(((0,), (0,), (1,)))


def hollow_triangle() -> SimplicialComplex:
    return build_complex([[0, 1], [1, 2], [0, 2]])


# Piecewise-linear curve, heights of consecutive vertices along a path.
# Minima: 3 (left end), 1, 0, 2, 3/2 (right end); maxima 7, 4, 5, 6.
CURVE_HEIGHTS = [3, 7, 1, 4, 0, 5, 2, 6, Fraction(3, 2)]


def five_minima_curve() -> tuple[SimplicialComplex, VectorFiltration]:
    m = len(CURVE_HEIGHTS)
    K = build_complex([[i, i + 1] for i in range(m - 1)])
    return K, VectorFiltration(tuple((Fraction(h),) for h in CURVE_HEIGHTS))


def union_find_rank0(K_u: SimplicialComplex, K_v: SimplicialComplex) -> int:
    """Components of ``K_v`` that meet ``K_u``."""
    parent = {v: v for v in K_v.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in K_v.of_dimension(1):
        a, b = find(s[0]), find(s[1])
        if a != b:
            parent[a] = b
    return len({find(v) for v in K_u.vertices})


def _dense_rank_gf2(rows: list[list[int]]) -> int:
    """Row-echelon rank of a 0/1 matrix given as a list of rows."""
    m = [list(r) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _boundary_rows(cells, rows_of) -> list[list[int]]:
    """Boundary matrix over GF(2), one row per row-cell, restricted to ``rows_of``."""
    index = {s: i for i, s in enumerate(rows_of)}
    mat = [[0] * len(cells) for _ in rows_of]
    for j, c in enumerate(cells):
        for f in faces(c):
            if f in index:
                mat[index[f]][j] ^= 1
    return mat


def brute_rank_gf2(K_u: SimplicialComplex, K_v: SimplicialComplex, k: int) -> int:
    """Rank of H_k(K_u) -> H_k(K_v) over GF(2), from matrix ranks only.

    dim Z_k(K_u) - dim(Z_k(K_u) & B_k(K_v)), where the intersection is the set
    of boundaries of K_v with no coefficient outside K_u, of dimension
    rank d_{k+1}(K_v) - rank(P d_{k+1}(K_v)) with P the projection onto the
    k-cells of K_v not in K_u.
    """
    u_k = K_u.of_dimension(k)
    z_u = len(u_k) - (_dense_rank_gf2(_boundary_rows(u_k, K_u.of_dimension(k - 1))) if k > 0 and u_k else 0)
    top = K_v.of_dimension(k + 1)
    if not top:
        return z_u
    v_k = K_v.of_dimension(k)
    outside = [s for s in v_k if s not in set(u_k)]
    r_full = _dense_rank_gf2(_boundary_rows(top, v_k))
    r_proj = _dense_rank_gf2(_boundary_rows(top, outside)) if outside else 0
    return z_u - (r_full - r_proj)


def brute_betti_gf2(K: SimplicialComplex, k: int) -> int:
    return brute_rank_gf2(K, K, k)


def scalar_sublevel(F: ScalarFiltration, t) -> SimplicialComplex:
    K = F.complex
    return K.subcomplex(s for s, x in zip(K.simplices, F.values) if x <= t)


def oracle_rank(F: ScalarFiltration, k: int, u, v) -> int:
    K_u, K_v = scalar_sublevel(F, u), scalar_sublevel(F, v)
    if k == 0:
        return union_find_rank0(K_u, K_v)
    return brute_rank_gf2(K_u, K_v, k)


def critical_nodes(values) -> list:
    """Critical values, midpoints between them and one point beyond each end."""
    crit = sorted(set(values))
    mids = [(a + b) / 2 for a, b in zip(crit, crit[1:])]
    return sorted(set(crit) | set(mids) | {crit[0] - 1, crit[-1] + 1})
