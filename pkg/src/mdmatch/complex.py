"""Finite simplicial complexes carrying vector-valued filtering functions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

Simplex = tuple[int, ...]

DEFAULT_MAX_DIMENSION = 3


class ComplexError(ValueError):
    """Raised on malformed complexes or filtrations."""


def _sort_key(simplex: Simplex) -> tuple:
    return (len(simplex), simplex)


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed set of simplices on vertices ``0 .. vertex_count - 1``.

    Simplices are stored as sorted vertex tuples, ordered by dimension and
    then lexicographically.  Not every index below ``vertex_count`` needs to
    be a vertex of the complex (subcomplexes keep the ambient count).
    """

    vertex_count: int
    simplices: tuple[Simplex, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.simplices)})

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(simplex)) in self._index

    def index(self, simplex: Simplex) -> int:
        return self._index[simplex]

    @property
    def dimension(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices if len(s) == 1)

    def of_dimension(self, k: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if len(s) == k + 1)

    def counts(self) -> list[int]:
        """Number of simplices in each dimension ``0 .. dimension``."""
        out = [0] * (self.dimension + 1)
        for s in self.simplices:
            out[len(s) - 1] += 1
        return out

    def subcomplex(self, keep: Iterable[Simplex]) -> "SimplicialComplex":
        # caller guarantees face-closure
        return SimplicialComplex(self.vertex_count, tuple(sorted(set(keep), key=_sort_key)))


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, in the order of the removed vertex."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def build_complex(
    simplices: Sequence[Sequence[int]],
    vertex_count: int | None = None,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> SimplicialComplex:
    """Close a list of simplices under taking faces.

    >>> build_complex([[0, 1, 2]]).counts()
    [3, 3, 1]
    """
    if not simplices:
        raise ComplexError("a complex needs at least one simplex")
    closed: set[Simplex] = set()
    top = -1
    for raw in simplices:
        verts = [int(x) for x in raw]
        if not verts:
            raise ComplexError("empty simplex in input")
        if len(set(verts)) != len(verts):
            raise ComplexError(f"repeated vertex in simplex {list(raw)}")
        if min(verts) < 0:
            raise ComplexError(f"negative vertex index in {list(raw)}")
        s = tuple(sorted(verts))
        top = max(top, len(s) - 1)
        if s in closed:
            continue
        for r in range(1, len(s) + 1):
            closed.update(combinations(s, r))
    if top > max_dimension:
        log.warning("complex has dimension %d > %d; large-dimension input is untested", top, max_dimension)
    largest = max(s[-1] for s in closed)
    if vertex_count is None:
        vertex_count = largest + 1
    elif largest >= vertex_count:
        raise ComplexError(f"vertex index {largest} out of range for {vertex_count} vertices")
    return SimplicialComplex(vertex_count, tuple(sorted(closed, key=_sort_key)))


@dataclass(frozen=True)
class VectorFiltration:
    """Per-vertex values in R^n.  Entries may be floats or ``Fraction``s."""

    values: tuple[tuple, ...]

    def __post_init__(self) -> None:
        vals = tuple(tuple(row) for row in self.values)
        if not vals:
            raise ComplexError("filtration has no vertex values")
        n = len(vals[0])
        if n < 1:
            raise ComplexError("filtration needs at least one component")
        for row in vals:
            if len(row) != n:
                raise ComplexError("all vertex value vectors must have the same length")
            for x in row:
                if not math.isfinite(x):
                    raise ComplexError(f"non-finite filtration value {x!r}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values[0])

    def __len__(self) -> int:
        return len(self.values)

    def component(self, i: int) -> tuple:
        return tuple(row[i] for row in self.values)

    def check_covers(self, K: SimplicialComplex) -> None:
        if len(self.values) < K.vertex_count:
            raise ComplexError(
                f"filtration gives {len(self.values)} values for {K.vertex_count} vertices")


@dataclass(frozen=True)
class ScalarFiltration:
    """Real value per simplex of ``complex``, monotone along faces."""

    complex: SimplicialComplex
    values: tuple

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        if len(vals) != len(self.complex):
            raise ComplexError("one value per simplex is required")
        object.__setattr__(self, "values", vals)
        K = self.complex
        for j, s in enumerate(K.simplices):
            for f in faces(s):
                if vals[K.index(f)] > vals[j]:
                    raise ComplexError(f"filtration not monotone: face {f} above coface {s}")

    def value(self, simplex: Simplex) -> object:
        return self.values[self.complex.index(tuple(sorted(simplex)))]

    def critical_values(self) -> list:
        return sorted(set(self.values))


def lower_star(K: SimplicialComplex, vertex_values: Sequence) -> ScalarFiltration:
    """Extend per-vertex reals to simplices by taking the max over vertices."""
    return ScalarFiltration(K, tuple(max(vertex_values[v] for v in s) for s in K.simplices))


def _check_member(K: SimplicialComplex, simplex) -> Simplex:
    s = tuple(sorted(simplex))
    if s not in K:
        raise ComplexError(f"simplex {list(simplex)} is not in the complex")
    return s


def simplex_value(K: SimplicialComplex, phi: VectorFiltration, simplex) -> tuple:
    """Componentwise maximum of ``phi`` over the vertices of ``simplex``."""
    s = _check_member(K, simplex)
    return tuple(max(phi.values[v][i] for v in s) for i in range(phi.n))


def precedes(u: Sequence, v: Sequence) -> bool:
    """``u`` is componentwise <= ``v``."""
    return all(a <= b for a, b in zip(u, v, strict=True))


def strictly_precedes(u: Sequence, v: Sequence) -> bool:
    """``u`` is componentwise < ``v``."""
    return all(a < b for a, b in zip(u, v, strict=True))


def sublevel(K: SimplicialComplex, phi: VectorFiltration, u: Sequence) -> SimplicialComplex:
    """Subcomplex of simplices whose value is componentwise below ``u``."""
    phi.check_covers(K)
    if len(u) != phi.n:
        raise ComplexError(f"threshold has {len(u)} components, filtration has {phi.n}")
    # a simplex enters iff all its vertices do, so this is the full subcomplex on those vertices
    alive = {v for v in K.vertices if precedes(phi.values[v], u)}
    return K.subcomplex(s for s in K.simplices if alive.issuperset(s))
