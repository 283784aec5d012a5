"""Simplicial homology over a prime field, persistence pairs and a rank oracle.

Chains over GF(2) are packed into Python ints (bit ``i`` = row ``i``); over
an odd prime they are sparse ``{row: coefficient}`` dicts.  Both go through
the same column reduction, which serves three purposes: matrix rank, kernel
bases (by tracking column operations) and the persistence pairing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .complex import (
    ComplexError,
    ScalarFiltration,
    SimplicialComplex,
    VectorFiltration,
    faces,
    strictly_precedes,
    sublevel,
)


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = 2

    def __post_init__(self) -> None:
        p = self.characteristic
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"field characteristic must be prime, got {p}")


GF2 = FieldSpec(2)


@dataclass(frozen=True)
class PersistencePairs:
    degree: int
    finite_pairs: tuple[tuple, ...]
    essential_births: tuple

    def rank(self, u, v) -> int:
        """Number of classes born at or before ``u`` still alive at ``v``."""
        alive = sum(1 for b, d in self.finite_pairs if b <= u and d > v)
        return alive + sum(1 for b in self.essential_births if b <= u)


# -- column reduction -------------------------------------------------------

def _axpy(x: dict, y: dict, c: int, p: int) -> dict:
    """``x + c*y`` mod ``p`` for sparse vectors."""
    out = dict(x)
    for i, a in y.items():
        val = (out.get(i, 0) + c * a) % p
        if val:
            out[i] = val
        else:
            out.pop(i, None)
    return out


def _reduce(columns: Sequence, p: int, track: bool = False):
    """Left-to-right column reduction.

    Returns ``(reduced, pivots, combos)`` where ``pivots`` maps a lowest row
    index to the column owning it and ``combos[j]`` (when ``track``) records
    which original columns sum to ``reduced[j]``.
    """
    reduced: list = []
    combos: list = []
    pivots: dict[int, int] = {}
    if p == 2:
        for j, col in enumerate(columns):
            comb = 1 << j if track else 0
            while col:
                low = col.bit_length() - 1
                i = pivots.get(low)
                if i is None:
                    pivots[low] = j
                    break
                col ^= reduced[i]
                if track:
                    comb ^= combos[i]
            reduced.append(col)
            combos.append(comb)
        return reduced, pivots, combos
    for j, col in enumerate(columns):
        comb = {j: 1} if track else None
        while col:
            low = max(col)
            i = pivots.get(low)
            if i is None:
                pivots[low] = j
                break
            piv = reduced[i]
            factor = (-col[low] * pow(piv[low], -1, p)) % p
            col = _axpy(col, piv, factor, p)
            if track:
                comb = _axpy(comb, combos[i], factor, p)
        reduced.append(col)
        combos.append(comb)
    return reduced, pivots, combos


def _boundary_column(simplex, row_index: dict, p: int):
    """Boundary of ``simplex`` over rows given by ``row_index`` (face -> row)."""
    if p == 2:
        col = 0
        for f in faces(simplex):
            col |= 1 << row_index[f]
        return col
    col = {}
    for i, f in enumerate(faces(simplex)):
        col[row_index[f]] = 1 if i % 2 == 0 else p - 1
    return col


def _is_zero(vec) -> bool:
    return not vec


def _boundary_rank(K: SimplicialComplex, k: int, p: int) -> int:
    """Rank of the boundary map C_k -> C_{k-1}."""
    if k <= 0:
        return 0
    rows = {s: i for i, s in enumerate(K.of_dimension(k - 1))}
    cols = [_boundary_column(s, rows, p) for s in K.of_dimension(k)]
    return len(_reduce(cols, p)[1])


def betti(K: SimplicialComplex, k: int, field: FieldSpec = GF2) -> int:
    """Dimension of H_k(K) over the field."""
    if k < 0:
        raise ValueError("homology degree must be non-negative")
    p = field.characteristic
    n_k = len(K.of_dimension(k))
    return n_k - _boundary_rank(K, k, p) - _boundary_rank(K, k + 1, p)


def _kernel_in(K_small: SimplicialComplex, k: int, target_index: dict, p: int) -> list:
    """Basis of Z_k(K_small), written in the k-chain coordinates ``target_index``."""
    k_simplices = K_small.of_dimension(k)
    if k == 0:
        cols = [0 if p == 2 else {} for _ in k_simplices]
    else:
        rows = {s: i for i, s in enumerate(K_small.of_dimension(k - 1))}
        cols = [_boundary_column(s, rows, p) for s in k_simplices]
    reduced, _, combos = _reduce(cols, p, track=True)
    basis = []
    for col, comb in zip(reduced, combos):
        if not _is_zero(col):
            continue
        if p == 2:
            vec = 0
            while comb:
                low = comb.bit_length() - 1
                vec |= 1 << target_index[k_simplices[low]]
                comb ^= 1 << low
        else:
            vec = {target_index[k_simplices[i]]: c for i, c in comb.items()}
        basis.append(vec)
    return basis


def inclusion_rank(K_u: SimplicialComplex, K_v: SimplicialComplex, k: int, field: FieldSpec = GF2) -> int:
    """Rank of H_k(K_u) -> H_k(K_v) for a subcomplex ``K_u`` of ``K_v``.

    Computed as dim(Z_k(K_u) + B_k(K_v)) - dim B_k(K_v).
    """
    p = field.characteristic
    k_index = {s: i for i, s in enumerate(K_v.of_dimension(k))}
    boundaries = [_boundary_column(s, k_index, p) for s in K_v.of_dimension(k + 1)]
    cycles = _kernel_in(K_u, k, k_index, p)
    _, pivots, _ = _reduce(boundaries + cycles, p)
    nb = len(boundaries)
    return sum(1 for j in pivots.values() if j >= nb)


def rank_oracle(K: SimplicialComplex, phi: VectorFiltration, k: int, u: Sequence, v: Sequence,
                field: FieldSpec = GF2) -> int:
    """Rank invariant of ``(K, phi)`` in degree ``k`` at ``(u, v)``, by direct linear algebra."""
    if not strictly_precedes(u, v):
        raise ComplexError(f"rank invariant needs u < v componentwise, got {u} and {v}")
    return inclusion_rank(sublevel(K, phi, u), sublevel(K, phi, v), k, field)


def scalar_rank_oracle(F: ScalarFiltration, k: int, u, v, field: FieldSpec = GF2) -> int:
    """Same as :func:`rank_oracle` for a per-simplex scalar filtration."""
    if not u < v:
        raise ComplexError(f"rank invariant needs u < v, got {u} and {v}")
    K = F.complex
    K_u = K.subcomplex(s for s, x in zip(K.simplices, F.values) if x <= u)
    K_v = K.subcomplex(s for s, x in zip(K.simplices, F.values) if x <= v)
    return inclusion_rank(K_u, K_v, k, field)


def rank_function(F: ScalarFiltration, k: int, field: FieldSpec = GF2) -> Callable[[object, object], int]:
    return lambda u, v: scalar_rank_oracle(F, k, u, v, field)


def filtration_order(F: ScalarFiltration, tie_break: Callable | None = None) -> list[int]:
    """Simplex indices sorted by (value, dimension, vertex list) or a custom tie-break."""
    K = F.complex
    if tie_break is None:
        return sorted(range(len(K)), key=lambda j: (F.values[j], len(K.simplices[j]), K.simplices[j]))
    return sorted(range(len(K)), key=lambda j: (F.values[j], len(K.simplices[j]), tie_break(K.simplices[j])))


def persistence_pairs(F: ScalarFiltration, k: int, field: FieldSpec = GF2,
                      tie_break: Callable | None = None) -> PersistencePairs:
    """Degree-``k`` birth/death pairs of a monotone scalar filtration.

    Zero-persistence pairs are dropped.  ``tie_break`` maps a simplex to a
    sort key used among simplices of equal value and dimension.
    """
    if k < 0:
        raise ValueError("homology degree must be non-negative")
    p = field.characteristic
    K = F.complex
    order = [j for j in filtration_order(F, tie_break) if len(K.simplices[j]) - 1 in (k, k + 1)]
    if not order:
        return PersistencePairs(k, (), ())
    # (k-1)-simplices only ever appear as rows of the degree-k columns
    row_of: dict = {}
    for j in filtration_order(F, tie_break):
        row_of[K.simplices[j]] = len(row_of)
    by_row = {r: s for s, r in row_of.items()}
    empty = 0 if p == 2 else {}
    cols = [empty if len(K.simplices[j]) == 1 else _boundary_column(K.simplices[j], row_of, p)
            for j in order]
    reduced, pivots, _ = _reduce(cols, p)
    value = dict(zip(K.simplices, F.values))
    finite = []
    killed = set()
    for low, c in pivots.items():
        s = K.simplices[order[c]]
        if len(s) - 1 != k + 1:
            continue
        born = by_row[low]
        killed.add(born)
        b, d = value[born], value[s]
        if b < d:
            finite.append((b, d))
    essential = [value[K.simplices[j]] for c, j in enumerate(order)
                 if len(K.simplices[j]) - 1 == k and _is_zero(reduced[c]) and K.simplices[j] not in killed]
    return PersistencePairs(k, tuple(sorted(finite)), tuple(sorted(essential)))
