"""Bottleneck (matching) distance between persistence diagrams.

Distances are exact whenever the diagram coordinates are ``Fraction``s:
the search runs over the finite set of candidate costs and returns one of
them, so no tolerance is involved.  ``math.inf`` stands for the point at
infinity and for an infinite distance.
"""
from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence

from .diagram import INF, PersistenceDiagram

BRUTE_FORCE_CAP = 8


def dtilde(p: tuple, q: tuple):
    """Cost of matching ``p`` to ``q``: move one onto the other or both onto the diagonal."""
    (u, v), (u2, v2) = p, q
    if v == INF and v2 == INF:
        return abs(u - u2)
    if v == INF or v2 == INF:
        return INF
    return min(max(abs(u - u2), abs(v - v2)), max((v - u) / 2, (v2 - u2) / 2))


def diagonal_cost(p: tuple):
    u, v = p
    return INF if v == INF else (v - u) / 2


def kuhn_matching(adjacency: Sequence[Sequence[int]], n_right: int) -> int:
    """Maximum bipartite matching size by repeated augmenting paths."""
    match_right = [-1] * n_right

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adjacency[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_right[j] < 0 or augment(match_right[j], seen):
                match_right[j] = i
                return True
        return False

    return sum(1 for i in range(len(adjacency)) if augment(i, [False] * n_right))


Matcher = Callable[[Sequence[Sequence[int]], int], int]


def _feasible(P: list, Q: list, cost: list, diag_p: list, diag_q: list, c, matcher: Matcher) -> bool:
    # left: P then one diagonal copy per Q point; right: Q then one diagonal copy per P point
    a, b = len(P), len(Q)
    adjacency: list[list[int]] = []
    for i in range(a):
        row = [j for j in range(b) if cost[i][j] <= c]
        if diag_p[i] <= c:
            row.append(b + i)
        adjacency.append(row)
    for j in range(b):
        row = [j] if diag_q[j] <= c else []
        row.extend(b + i for i in range(a))
        adjacency.append(row)
    return matcher(adjacency, a + b) == a + b


def proper_bottleneck(P: list, Q: list, matcher: Matcher = kuhn_matching):
    """Bottleneck distance between two lists of proper points."""
    if not P and not Q:
        return 0
    cost = [[dtilde(p, q) for q in Q] for p in P]
    diag_p = [diagonal_cost(p) for p in P]
    diag_q = [diagonal_cost(q) for q in Q]
    candidates = sorted(set(x for row in cost for x in row) | set(diag_p) | set(diag_q))
    lo, hi = 0, len(candidates) - 1  # the largest diagonal cost is always feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(P, Q, cost, diag_p, diag_q, candidates[mid], matcher):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def essential_bottleneck(A: Sequence, B: Sequence):
    """Bottleneck matching of births on the line; sorted order is optimal."""
    if len(A) != len(B):
        return INF
    return max((abs(x - y) for x, y in zip(sorted(A), sorted(B))), default=0)


def d_match(D1: PersistenceDiagram, D2: PersistenceDiagram, matcher: Matcher = kuhn_matching):
    """Matching distance; ``inf`` when the numbers of cornerpoints at infinity differ."""
    ess = essential_bottleneck(D1.essential_points(), D2.essential_points())
    if ess == INF:
        return INF
    return max(ess, proper_bottleneck(D1.proper_points(), D2.proper_points(), matcher))


def brute_force_bottleneck(D1: PersistenceDiagram, D2: PersistenceDiagram):
    """Exhaustive bottleneck distance for diagrams of at most eight points each."""
    if D1.size() > BRUTE_FORCE_CAP or D2.size() > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_CAP} points per diagram")
    E1, E2 = D1.essential_points(), D2.essential_points()
    if len(E1) != len(E2):
        return INF
    ess = min((max((dtilde((x, INF), (y, INF)) for x, y in zip(E1, perm)), default=0)
               for perm in permutations(E2)), default=0)

    P, Q = D1.proper_points(), D2.proper_points()
    best = INF

    def search(i: int, used: int, worst) -> None:
        nonlocal best
        if i == len(P):
            leftover = [diagonal_cost(q) for j, q in enumerate(Q) if not used >> j & 1]
            best = min(best, max([worst, *leftover]))
            return
        search(i + 1, used, max(worst, diagonal_cost(P[i])))
        for j, q in enumerate(Q):
            if not used >> j & 1:
                search(i + 1, used | 1 << j, max(worst, dtilde(P[i], q)))

    search(0, 0, 0)
    return max(ess, best)

