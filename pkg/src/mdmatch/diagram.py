"""Persistence diagrams: cornerpoint multisets and their link to rank invariants."""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .homology import PersistencePairs

INF = math.inf

RankFunction = Callable[[object, object], int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite multiset of cornerpoints; the diagonal is left implicit.

    ``proper`` holds ``(u, v, multiplicity)`` with ``u < v`` finite and
    ``essential`` holds ``(u, multiplicity)`` for cornerpoints at infinity.
    """

    degree: int
    proper: tuple[tuple, ...] = ()
    essential: tuple[tuple, ...] = ()

    def __post_init__(self) -> None:
        for u, v, m in self.proper:
            if not u < v or not math.isfinite(v):
                raise DiagramError(f"proper cornerpoint ({u}, {v}) must satisfy u < v < inf")
            if m < 1:
                raise DiagramError(f"multiplicity must be positive, got {m}")
        for u, m in self.essential:
            if not math.isfinite(u) or m < 1:
                raise DiagramError(f"bad cornerpoint at infinity ({u}, {m})")

    @classmethod
    def from_points(cls, degree: int, points: Iterable[tuple]) -> "PersistenceDiagram":
        """Build from ``(u, v)`` points, repeated for multiplicity; ``v`` may be ``inf``."""
        proper: Counter = Counter()
        essential: Counter = Counter()
        for u, v in points:
            if v == INF:
                essential[u] += 1
            else:
                proper[(u, v)] += 1
        return cls(degree,
                   tuple(sorted((u, v, m) for (u, v), m in proper.items())),
                   tuple(sorted(essential.items())))

    def proper_points(self) -> list[tuple]:
        """Proper cornerpoints expanded by multiplicity."""
        return [(u, v) for u, v, m in self.proper for _ in range(m)]

    def essential_points(self) -> list:
        return [u for u, m in self.essential for _ in range(m)]

    def points(self) -> Iterator[tuple]:
        yield from self.proper_points()
        for u in self.essential_points():
            yield (u, INF)

    def size(self) -> int:
        return sum(m for *_, m in self.proper) + sum(m for _, m in self.essential)

    def map(self, f: Callable) -> "PersistenceDiagram":
        """Apply a strictly increasing ``f`` to both coordinates (``f(inf) = inf``)."""
        return PersistenceDiagram.from_points(
            self.degree, ((f(u), INF if v == INF else f(v)) for u, v in self.points()))

    def same_as(self, other: "PersistenceDiagram", tol: float = 0.0) -> bool:
        """Multiset equality, exact when ``tol == 0``."""
        if self.degree != other.degree:
            return False
        if tol == 0:
            return self.proper == other.proper and self.essential == other.essential
        a, b = sorted(self.points()), sorted(other.points())
        if len(a) != len(b):
            return False
        return all(abs(p[0] - q[0]) <= tol and (p[1] == q[1] or abs(p[1] - q[1]) <= tol)
                   for p, q in zip(a, b))


def diagram_from_pairs(pairs: PersistencePairs) -> PersistenceDiagram:
    pts = [(b, d) for b, d in pairs.finite_pairs if b < d]
    pts += [(b, INF) for b in pairs.essential_births]
    return PersistenceDiagram.from_points(pairs.degree, pts)


def rank_from_diagram(D: PersistenceDiagram, u_bar, v_bar) -> int:
    """Count cornerpoints (with multiplicity) up and to the left of ``(u_bar, v_bar)``."""
    if not u_bar < v_bar:
        raise DiagramError("rank_from_diagram needs u_bar < v_bar")
    total = sum(m for u, v, m in D.proper if u <= u_bar and v > v_bar)
    return total + sum(m for u, m in D.essential if u <= u_bar)


def default_epsilon(critical_values: Iterable, *extra) -> Fraction | float:
    """A step small enough that every epsilon-box sees a single critical cell.

    A quarter of the smallest gap between distinct values in
    ``critical_values`` and ``extra``, further capped so that ``1/eps``
    lies well beyond every value.
    """
    vals = sorted(set(critical_values) | set(x for x in extra if x != INF))
    one = Fraction(1) if all(isinstance(x, (int, Fraction)) for x in vals) else 1.0
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    eps = min(gaps) / 4 if gaps else one
    bound = max((abs(x) for x in vals), default=0)
    return min(eps, one / (2 * (bound + 1)))


def _check_gap(eps, coords: Sequence, critical_values) -> None:
    if critical_values is None:
        return
    for c in coords:
        for x in critical_values:
            if x != c and abs(x - c) <= eps:
                raise DiagramError(f"epsilon {eps} too large: {c} and critical value {x} are within it")


def multiplicity_proper(rank: RankFunction, p: tuple, eps, critical_values=None) -> int:
    """Multiplicity of ``p = (u, v)`` from four rank evaluations around it.

    When ``critical_values`` is given, ``eps`` is checked to leave each
    coordinate of ``p`` alone in its window.
    """
    u, v = p
    if eps <= 0 or not u + eps < v - eps:
        raise DiagramError(f"epsilon {eps} invalid at ({u}, {v})")
    _check_gap(eps, (u, v), critical_values)
    return (rank(u + eps, v - eps) - rank(u - eps, v - eps)
            - rank(u + eps, v + eps) + rank(u - eps, v + eps))


def multiplicity_infinity(rank: RankFunction, u_bar, eps, critical_values=None) -> int:
    """Multiplicity of the vertical line ``u = u_bar``."""
    if eps <= 0 or not u_bar + eps < 1 / eps:
        raise DiagramError(f"epsilon {eps} invalid at u = {u_bar}")
    if critical_values is not None and any(x >= 1 / eps for x in critical_values):
        raise DiagramError(f"1/epsilon = {1 / eps} does not exceed all critical values")
    _check_gap(eps, (u_bar,), critical_values)
    far = 1 / eps
    return rank(u_bar + eps, far) - rank(u_bar - eps, far)


def diagram_from_rank(rank: RankFunction, critical_values: Sequence, degree: int = 0) -> PersistenceDiagram:
    """Recover the diagram of a finite filtration by probing its rank invariant.

    Cornerpoints of a finite filtration sit on the critical grid, so only
    those coordinates are probed.
    """
    crit = sorted(set(critical_values))
    eps = default_epsilon(crit)
    proper = []
    for i, u in enumerate(crit):
        for v in crit[i + 1:]:
            m = multiplicity_proper(rank, (u, v), eps)
            if m:
                proper.append((u, v, m))
    essential = [(u, m) for u in crit if (m := multiplicity_infinity(rank, u, eps))]
    return PersistenceDiagram(degree, tuple(proper), tuple(essential))


# -- CSV -------------------------------------------------------------------

CSV_FIELDS = ("u", "v", "multiplicity", "degree", "kind")


def _fmt(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def diagram_to_csv(D: PersistenceDiagram) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for u, v, m in D.proper:
        w.writerow([_fmt(u), _fmt(v), m, D.degree, "proper"])
    for u, m in D.essential:
        w.writerow([_fmt(u), "inf", m, D.degree, "essential"])
    return buf.getvalue()


def parse_number(token: str, exact: bool = True):
    token = token.strip()
    if token.lower() in ("inf", "+inf", "infinity"):
        return INF
    if exact:
        try:
            return Fraction(token)
        except ValueError:
            pass
    return float(token)


def diagram_from_csv(text: str, exact: bool = True, degree: int | None = None) -> PersistenceDiagram:
    """Parse the CSV written by :func:`diagram_to_csv`.

    Rows of other degrees are skipped when ``degree`` is given.  The
    ``multiplicity``, ``degree`` and ``kind`` columns are optional.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"u", "v"} <= set(reader.fieldnames):
        raise DiagramError("diagram CSV needs at least columns u and v")
    pts = []
    degrees = set()
    for row in reader:
        d = int(row.get("degree") or 0)
        if degree is not None and d != degree:
            continue
        degrees.add(d)
        try:
            u, v = parse_number(row["u"], exact), parse_number(row["v"], exact)
            m = int(row.get("multiplicity") or 1)
        except (ValueError, TypeError) as exc:
            raise DiagramError(f"malformed diagram row {row}") from exc
        if u == INF:
            raise DiagramError("birth coordinate cannot be infinite")
        pts.extend([(u, v)] * m)
    if len(degrees) > 1:
        raise DiagramError(f"CSV mixes degrees {sorted(degrees)}; pick one")
    deg = degree if degree is not None else (degrees.pop() if degrees else 0)
    return PersistenceDiagram.from_points(deg, pts)
