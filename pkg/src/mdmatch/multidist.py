"""Leafwise and grid-sampled multidimensional matching distance.

The sup over all leaves is approximated from below by a finite grid of
leaves.  Grids are described by probe points ``(u, v)`` rather than by
scheme-specific parameters, so that every scheme evaluates exactly the same
leaves; each scheme then picks its own representative with
:func:`~mdmatch.foliation.leaf_through`.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations, product
from typing import Sequence

from .complex import ComplexError, SimplicialComplex, VectorFiltration
from .diagram import INF, PersistenceDiagram, diagram_from_pairs
from .foliation import SUM_ONE, AdmissiblePair, Scheme, leaf_through, reduce_function
from .homology import GF2, FieldSpec, persistence_pairs
from .io import json_number
from .matching import d_match


@dataclass(frozen=True)
class GridSpec:
    """Sampling of leaves.

    Directions are the points ``(2 m_i + 1) / (2 R + n - 2)`` of the open
    simplex, for non-negative integers ``m`` summing to ``R - 1`` where ``R``
    is ``direction_resolution``.  Offsets are the points of the hyperplane
    ``sum(beta) == 0`` whose first ``n - 1`` coordinates lie on a uniform
    grid of ``offset_resolution`` values in ``[-offset_bound, offset_bound]``
    and whose last coordinate stays within the same bound.
    """

    direction_resolution: int = 32
    offset_resolution: int = 16
    offset_bound: object = 1

    def __post_init__(self) -> None:
        if self.direction_resolution < 1 or self.offset_resolution < 1:
            raise ValueError("grid resolutions must be at least 1")
        if not self.offset_bound > 0:
            raise ValueError("offset bound must be positive")

    @classmethod
    def parse(cls, text: str, offset_bound=1) -> "GridSpec":
        """``"<dirs>x<offs>"``, e.g. ``"32x16"``."""
        try:
            dirs, offs = text.lower().split("x")
            return cls(int(dirs), int(offs), offset_bound)
        except ValueError as exc:
            raise ValueError(f"grid must look like 32x16, got {text!r}") from exc

    def refines(self, other: "GridSpec", n: int) -> bool:
        """Whether every leaf of ``other`` is also a leaf of this grid."""
        d_self = 2 * self.direction_resolution + n - 2
        d_other = 2 * other.direction_resolution + n - 2
        dirs_ok = d_self % d_other == 0 and (d_self // d_other) % 2 == 1
        r, r0 = self.offset_resolution, other.offset_resolution
        if self.offset_bound != other.offset_bound:
            offs_ok = False
        elif r0 == 1:
            offs_ok = r % 2 == 1 or n == 1
        else:
            offs_ok = r > 1 and (r - 1) % (r0 - 1) == 0
        return dirs_ok and (offs_ok or n == 1)

    def as_dict(self) -> dict:
        return {"direction_resolution": self.direction_resolution,
                "offset_resolution": self.offset_resolution,
                "offset_bound": json_number(self.offset_bound)}


def default_offset_bound(phi: VectorFiltration, psi: VectorFiltration):
    """Largest absolute filtration value of either input, at least 1."""
    bound = max(abs(x) for f in (phi, psi) for row in f.values for x in row)
    return bound if bound > 0 else 1


def direction_grid(n: int, resolution: int) -> list[tuple]:
    """Directions with positive entries summing to one, see :class:`GridSpec`."""
    denom = 2 * resolution + n - 2
    out = []
    # stars and bars: compositions of resolution - 1 into n parts
    total = resolution - 1
    for bars in combinations(range(total + n - 1), n - 1):
        parts, prev = [], -1
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(total + n - 2 - prev)
        out.append(tuple(Fraction(2 * m + 1, denom) for m in parts))
    return out


def offset_grid(n: int, resolution: int, bound) -> list[tuple]:
    if n == 1 or resolution == 1:
        return [tuple(0 for _ in range(n))]
    if isinstance(bound, int):
        bound = Fraction(bound)
    step = 2 * bound / (resolution - 1)
    axis = [-bound + j * step for j in range(resolution)]
    out = []
    for head in product(axis, repeat=n - 1):
        last = -sum(head)
        if abs(last) <= bound:
            out.append(tuple(head) + (last,))
    return out


def grid_probe_points(n: int, grid: GridSpec) -> list[tuple[tuple, tuple]]:
    """One point ``(beta, beta + lam)`` per grid leaf, ``lam`` summing to one."""
    pts = []
    for lam in direction_grid(n, grid.direction_resolution):
        for beta in offset_grid(n, grid.offset_resolution, grid.offset_bound):
            pts.append((beta, tuple(b + l for b, l in zip(beta, lam))))
    return pts


def leaf_diagram(K: SimplicialComplex, phi: VectorFiltration, k: int, pair: AdmissiblePair,
                 field: FieldSpec = GF2) -> PersistenceDiagram:
    return diagram_from_pairs(persistence_pairs(reduce_function(K, phi, pair), k, field))


def leaf_distance(K_X: SimplicialComplex, phi: VectorFiltration, K_Y: SimplicialComplex,
                  psi: VectorFiltration, k: int, pair: AdmissiblePair, field: FieldSpec = GF2):
    """``min(lam) * d_match`` of the two reduced diagrams on the leaf of ``pair``."""
    if phi.n != psi.n:
        raise ComplexError(f"filtrations have {phi.n} and {psi.n} components")
    d = d_match(leaf_diagram(K_X, phi, k, pair, field), leaf_diagram(K_Y, psi, k, pair, field))
    return INF if d == INF else pair.min_lam() * d


def _probe_distance(probe, K_X, phi, K_Y, psi, k, scheme, field):
    pair, _ = leaf_through(scheme, *probe)
    return leaf_distance(K_X, phi, K_Y, psi, k, pair, field)


def evaluate_probes(K_X, phi, K_Y, psi, k, scheme: Scheme, probes: Sequence, field: FieldSpec = GF2,
                    workers: int = 1) -> list:
    """Leaf distance at every probe point, in probe order."""
    fn = partial(_probe_distance, K_X=K_X, phi=phi, K_Y=K_Y, psi=psi, k=k, scheme=scheme, field=field)
    if workers > 1 and len(probes) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(fn, probes, chunksize=max(1, len(probes) // (4 * workers))))
    return [fn(p) for p in probes]


def _argmax(values: Sequence) -> int:
    # first maximal index, so ties resolve the same way whatever the evaluation order
    best = 0
    for i, x in enumerate(values):
        if x > values[best]:
            best = i
    return best


def dmatch_nd(K_X: SimplicialComplex, phi: VectorFiltration, K_Y: SimplicialComplex, psi: VectorFiltration,
              k: int, scheme: Scheme = SUM_ONE, grid: GridSpec | None = None, field: FieldSpec = GF2,
              workers: int = 1) -> tuple[object, AdmissiblePair]:
    """Grid lower bound for the multidimensional matching distance and its maximizing leaf."""
    if phi.n != psi.n:
        raise ComplexError(f"filtrations have {phi.n} and {psi.n} components")
    grid = grid or GridSpec(offset_bound=default_offset_bound(phi, psi))
    probes = grid_probe_points(phi.n, grid)
    values = evaluate_probes(K_X, phi, K_Y, psi, k, scheme, probes, field, workers)
    i = _argmax(values)
    return values[i], leaf_through(scheme, *probes[i])[0]


def discrepancy(values: Sequence) -> float:
    """Spread of a list of extended reals; two infinities agree."""
    finite = [x for x in values if x != INF]
    if not finite:
        return 0.0
    if len(finite) < len(values):
        return INF
    return float(max(finite) - min(finite))


def invariance_report(K_X: SimplicialComplex, phi: VectorFiltration, K_Y: SimplicialComplex,
                      psi: VectorFiltration, k: int, schemes: Sequence[Scheme], probe_points: Sequence,
                      field: FieldSpec = GF2, grid: GridSpec | None = None, tol: float = 1e-9,
                      workers: int = 1, timings: bool = False) -> dict:
    """Compare leaf distances of several schemes on the same leaves.

    Every probe point is mapped to each scheme's representative of its leaf
    and the per-leaf values are compared.  With ``grid``, the grid lower
    bounds of each scheme (over the same leaves) are compared as well.
    """
    if not schemes:
        raise ValueError("at least one scheme is required")
    clock: dict = {}
    per_scheme = {}
    for sch in schemes:
        start = time.perf_counter()
        per_scheme[sch.name] = evaluate_probes(K_X, phi, K_Y, psi, k, sch, probe_points, field, workers)
        clock[sch.name] = time.perf_counter() - start
    points = []
    for i, (u, v) in enumerate(probe_points):
        vals = {name: per_scheme[name][i] for name in per_scheme}
        points.append({"u": [json_number(x) for x in u], "v": [json_number(x) for x in v],
                       "values": {name: json_number(x) for name, x in vals.items()},
                       "discrepancy": json_number(discrepancy(list(vals.values())))})
    overall = max((discrepancy([per_scheme[n][i] for n in per_scheme]) for i in range(len(probe_points))),
                  default=0.0)
    report = {"schemes": [s.name for s in schemes], "degree": k, "field": field.characteristic,
              "points": points, "max_discrepancy": json_number(overall), "tolerance": tol}
    passed = overall <= tol
    if grid is not None:
        probes = grid_probe_points(phi.n, grid)
        sups = {}
        for sch in schemes:
            start = time.perf_counter()
            vals = evaluate_probes(K_X, phi, K_Y, psi, k, sch, probes, field, workers)
            clock[f"grid:{sch.name}"] = time.perf_counter() - start
            j = _argmax(vals)
            pair = leaf_through(sch, *probes[j])[0]
            sups[sch.name] = (vals[j], pair)
        grid_disc = discrepancy([v for v, _ in sups.values()])
        report["grid"] = {
            "spec": grid.as_dict(), "leaves": len(probes),
            "values": {n: json_number(v) for n, (v, _) in sups.items()},
            "argmax": {n: {"lam": [json_number(x) for x in p.lam], "beta": [json_number(x) for x in p.beta]}
                       for n, (_, p) in sups.items()},
            "discrepancy": json_number(grid_disc),
        }
        passed = passed and grid_disc <= tol
    report["passed"] = passed
    if timings:
        report["timings_seconds"] = clock
    return report
