"""Seeded random complexes, filtrations, diagrams and leaves.

Complexes are Erdos-Renyi clique complexes: each edge is present
independently with probability ``edge_prob`` and every clique up to
``max_dim + 1`` vertices is filled in.  Vertex values are drawn uniformly
from a grid of step ``1/denominator`` on ``[0, scale]`` (rational mode) or
uniformly from ``[0, scale]`` (float mode).  The coarse grid makes ties
between values common, which is where filtration bugs hide.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .complex import SimplicialComplex, VectorFiltration, build_complex
from .diagram import INF, PersistenceDiagram
from .foliation import AdmissiblePair, Scheme, leaf_through


def random_value(rng: random.Random, exact: bool = True, scale: int = 10, denominator: int = 4):
    if exact:
        return Fraction(rng.randint(0, scale * denominator), denominator)
    return rng.uniform(0, scale)


def clique_complex(rng: random.Random, n_vertices: int, edge_prob: float = 0.5,
                   max_dim: int = 2, max_simplices: int | None = None) -> SimplicialComplex:
    """Random clique complex; ``max_simplices`` drops top simplices beyond the cap."""
    edges = [e for e in combinations(range(n_vertices), 2) if rng.random() < edge_prob]
    adj = {v: set() for v in range(n_vertices)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    simplices = [(v,) for v in range(n_vertices)] + edges
    layer = edges
    for _ in range(2, max_dim + 1):
        layer = [s + (w,) for s in layer for w in adj[s[-1]] if w > s[-1] and all(w in adj[x] for x in s)]
        simplices += layer
    if max_simplices is not None and len(simplices) > max_simplices:
        simplices = simplices[:max_simplices]  # ordered by dimension, so still face-closed
    return build_complex([list(s) for s in simplices], vertex_count=n_vertices)


def small_complex(rng: random.Random, max_simplices: int = 40) -> SimplicialComplex:
    n_vertices = rng.randint(3, 8)
    return clique_complex(rng, n_vertices, rng.uniform(0.3, 0.8), max_dim=2, max_simplices=max_simplices)


def random_filtration(rng: random.Random, K: SimplicialComplex, n: int, exact: bool = True,
                      scale: int = 10, denominator: int = 4) -> VectorFiltration:
    return VectorFiltration(tuple(tuple(random_value(rng, exact, scale, denominator) for _ in range(n))
                                  for _ in range(K.vertex_count)))


def perturb(rng: random.Random, phi: VectorFiltration, size=Fraction(1), exact: bool = True) -> VectorFiltration:
    """Add independent noise of magnitude at most ``size`` to every value."""
    def noise():
        if exact:
            return Fraction(rng.randint(-20, 20), 20) * size
        return rng.uniform(-1, 1) * float(size)
    return VectorFiltration(tuple(tuple(x + noise() for x in row) for row in phi.values))


def random_diagram(rng: random.Random, max_points: int = 6, exact: bool = True, degree: int = 0,
                   max_essential: int = 2) -> PersistenceDiagram:
    """At most ``max_points`` points in total, some of them at infinity."""
    total = rng.randint(0, max_points)
    n_ess = rng.randint(0, min(max_essential, total))
    pts = []
    for i in range(total):
        u = random_value(rng, exact, 10, 4)
        if i < n_ess:
            pts.append((u, INF))
        else:
            pts.append((u, u + random_value(rng, exact, 6, 4) + (Fraction(1, 4) if exact else 0.25)))
    if pts and rng.random() < 0.3:
        pts.append(pts[-1])  # exercise multiplicities
        if len(pts) > max_points:
            pts.pop(0)
    return PersistenceDiagram.from_points(degree, pts)


def random_probe(rng: random.Random, n: int, exact: bool = True, scale: int = 10) -> tuple[tuple, tuple]:
    """A random ``(u, v)`` with ``u < v`` componentwise."""
    u = tuple(random_value(rng, exact, scale, 8) - scale // 2 for _ in range(n))
    if exact:
        v = tuple(x + Fraction(rng.randint(1, 8 * scale), 8) for x in u)
    else:
        v = tuple(x + rng.uniform(1e-3, scale) for x in u)
    return u, v


def random_pair(rng: random.Random, scheme: Scheme, n: int, exact: bool = True) -> AdmissiblePair:
    u, v = random_probe(rng, n, exact)
    return leaf_through(scheme, u, v)[0]


def increasing_pl(rng: random.Random, pieces: int = 4, exact: bool = True):
    """Random strictly increasing piecewise-linear map of the real line."""
    knots = sorted(set(random_value(rng, exact, 20, 2) - 10 for _ in range(pieces)))
    slopes = [Fraction(rng.randint(1, 12), 4) if exact else rng.uniform(0.1, 3) for _ in range(len(knots) + 1)]
    offset = random_value(rng, exact, 10, 4)
    # values at knots, accumulated left to right
    at = [offset]
    for i in range(1, len(knots)):
        at.append(at[-1] + slopes[i] * (knots[i] - knots[i - 1]))

    def f(x):
        if x == INF:
            return INF
        if x <= knots[0]:
            return at[0] + slopes[0] * (x - knots[0])
        for i in range(1, len(knots)):
            if x <= knots[i]:
                return at[i - 1] + slopes[i] * (x - knots[i - 1])
        return at[-1] + slopes[-1] * (x - knots[-1])

    return f
