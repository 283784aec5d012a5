"""Half-plane foliations of the strict-order region and the leaf reduction.

A leaf is the set of pairs ``(s*lam + beta, t*lam + beta)`` with ``s < t``.
Different parameterization schemes pick different representatives
``(lam, beta)`` for the same leaf: all of them keep ``lam > 0`` and
``sum(beta) == 0`` and differ only in how ``lam`` is normalized.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complex import (
    ComplexError,
    ScalarFiltration,
    SimplicialComplex,
    VectorFiltration,
    lower_star,
    strictly_precedes,
)

FLOAT_TOL = 1e-12


def _is_exact(values) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in values)


def _rational(vec: Sequence) -> list:
    """Promote ints to ``Fraction`` so that exact data survives division."""
    return [Fraction(x) if isinstance(x, int) else x for x in vec]


def _iroot(n: int, p: int) -> int | None:
    """Integer ``p``-th root of ``n >= 0`` if it exists."""
    r = round(n ** (1.0 / p)) if n < 2 ** 1000 else int(math.exp(math.log(n) / p))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** p == n:
            return c
    return None


def _root(x, p: int):
    """``x ** (1/p)``, kept as a ``Fraction`` when the root is rational."""
    if p == 1:
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        num, den = _iroot(x.numerator, p), _iroot(x.denominator, p)
        if num is not None and den is not None:
            return Fraction(num, den)
        return float(x) ** (1.0 / p)
    return x ** (1.0 / p)


@dataclass(frozen=True)
class Scheme:
    """Normalization of the leaf direction: ``sum(lam_i ** p) == 1``.

    ``kind`` is ``"unit"`` (Euclidean, p = 2), ``"sum"`` (p = 1) or
    ``"pnorm"`` with an explicit positive integer ``p``.
    """

    kind: str
    p: int = 2

    def __post_init__(self) -> None:
        if self.kind == "unit":
            object.__setattr__(self, "p", 2)
        elif self.kind == "sum":
            object.__setattr__(self, "p", 1)
        elif self.kind == "pnorm":
            if not isinstance(self.p, int) or self.p < 1:
                raise ValueError(f"p-norm scheme needs a positive integer p, got {self.p!r}")
        else:
            raise ValueError(f"unknown scheme kind {self.kind!r}")

    @classmethod
    def unit_norm(cls) -> "Scheme":
        return cls("unit")

    @classmethod
    def sum_one(cls) -> "Scheme":
        return cls("sum")

    @classmethod
    def pnorm(cls, p: int) -> "Scheme":
        return cls("pnorm", p)

    @classmethod
    def parse(cls, text: str) -> "Scheme":
        """``adm``, ``ladm`` or ``pnorm:<p>``."""
        t = text.strip().lower()
        if t in ("adm", "unit"):
            return cls.unit_norm()
        if t in ("ladm", "sum"):
            return cls.sum_one()
        if t.startswith("pnorm:"):
            try:
                return cls.pnorm(int(t.split(":", 1)[1]))
            except ValueError as exc:
                raise ValueError(f"bad p-norm scheme {text!r}") from exc
        raise ValueError(f"unknown scheme {text!r}; use adm, ladm or pnorm:<p>")

    @property
    def name(self) -> str:
        return {"unit": "adm", "sum": "ladm"}.get(self.kind, f"pnorm:{self.p}")

    @property
    def exact(self) -> bool:
        """Whether rational data stays rational under this normalization."""
        return self.p == 1

    def norm(self, vec: Sequence):
        return _root(sum(x ** self.p for x in vec), self.p)

    def is_normalized(self, lam: Sequence, tol: float = FLOAT_TOL) -> bool:
        total = sum(x ** self.p for x in lam)
        if _is_exact(lam):
            return total == 1
        return abs(total - 1) <= tol

    def __str__(self) -> str:
        return self.name


UNIT_NORM = Scheme.unit_norm()
SUM_ONE = Scheme.sum_one()


@dataclass(frozen=True)
class AdmissiblePair:
    """Direction ``lam`` and offset ``beta`` of a leaf.

    With ``scheme`` set, the normalization and ``sum(beta) == 0`` are
    enforced; ``scheme=None`` is a bare parameter pair that only needs
    ``lam > 0``.
    """

    lam: tuple
    beta: tuple
    scheme: Scheme | None = None

    def __post_init__(self) -> None:
        lam, beta = tuple(self.lam), tuple(self.beta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", beta)
        if len(lam) != len(beta) or not lam:
            raise ValueError("lam and beta must be non-empty and of equal length")
        if not all(x > 0 for x in lam):
            raise ValueError(f"leaf direction must be strictly positive, got {lam}")
        if self.scheme is None:
            return
        total = sum(beta)
        if _is_exact(beta):
            ok = total == 0
        else:
            ok = abs(total) <= FLOAT_TOL * max(1.0, max(abs(x) for x in beta))
        if not ok:
            raise ValueError(f"offset must sum to zero, got sum {total}")
        if not self.scheme.is_normalized(lam):
            raise ValueError(f"direction {lam} is not normalized for scheme {self.scheme}")

    @property
    def n(self) -> int:
        return len(self.lam)

    def point(self, s) -> tuple:
        """The point ``s*lam + beta`` of R^n."""
        return tuple(s * l + b for l, b in zip(self.lam, self.beta))

    def min_lam(self):
        return min(self.lam)


@dataclass(frozen=True)
class LeafCoordinates:
    s: object
    t: object

    def __post_init__(self) -> None:
        if not self.s < self.t:
            raise ValueError(f"leaf coordinates need s < t, got {self.s}, {self.t}")


def leaf_through(scheme: Scheme, u: Sequence, v: Sequence) -> tuple[AdmissiblePair, LeafCoordinates]:
    """The unique leaf of ``scheme`` containing ``(u, v)`` and the coordinates on it.

    The offset does not depend on the scheme, ``beta = u - (sum u / sum d) d``
    with ``d = v - u``, and is computed exactly for rational input.
    """
    if len(u) != len(v):
        raise ComplexError("u and v must have the same length")
    if not strictly_precedes(u, v):
        raise ComplexError(f"need u < v componentwise, got {tuple(u)} and {tuple(v)}")
    u, v = _rational(u), _rational(v)
    d = [b - a for a, b in zip(u, v)]
    sd, su, sv = sum(d), sum(u), sum(v)
    beta = [a - su * x / sd for a, x in zip(u, d)]
    norm = scheme.norm(d)
    lam = [x / norm for x in d]
    s, t = norm * su / sd, norm * sv / sd
    if not _is_exact(lam):
        beta = [float(b) for b in beta]
        s, t = float(s), float(t)
    return AdmissiblePair(tuple(lam), tuple(beta), scheme), LeafCoordinates(s, t)


def sum_one_closed_form(u: Sequence, v: Sequence) -> tuple[tuple, tuple]:
    """Direction and offset of the ``sum(lam) == 1`` leaf through ``(u, v)``, written out coordinatewise."""
    u, v = _rational(u), _rational(v)
    sd = sum(b - a for a, b in zip(u, v))
    su, sv = sum(u), sum(v)
    lam = tuple((b - a) / sd for a, b in zip(u, v))
    beta = tuple((a * sv - b * su) / sd for a, b in zip(u, v))
    return lam, beta


def reduce_vertex_values(phi: VectorFiltration, pair: AdmissiblePair) -> list:
    """Per-vertex ``max_i (phi_i - beta_i) / lam_i``."""
    if phi.n != pair.n:
        raise ComplexError(f"filtration has {phi.n} components, leaf has {pair.n}")
    lam, beta = _rational(pair.lam), pair.beta
    return [max((x - b) / l for x, b, l in zip(row, beta, lam)) for row in phi.values]


def reduce_function(K: SimplicialComplex, phi: VectorFiltration, pair: AdmissiblePair) -> ScalarFiltration:
    """Scalar filtration whose sublevel at ``s`` is the vector sublevel at ``s*lam + beta``."""
    phi.check_covers(K)
    return lower_star(K, reduce_vertex_values(phi, pair))


def unit_normalize(pair: AdmissiblePair) -> AdmissiblePair:
    """Rescale the direction to Euclidean length one; the offset is kept."""
    norm = UNIT_NORM.norm(pair.lam)
    return AdmissiblePair(tuple(x / norm for x in _rational(pair.lam)), pair.beta)


def to_adm(pair: AdmissiblePair) -> AdmissiblePair:
    """Slide the offset along a unit direction until it sums to zero."""
    if not UNIT_NORM.is_normalized(pair.lam):
        raise ValueError(f"to_adm needs a unit direction, got {pair.lam}")
    shift = sum(_rational(pair.beta)) / sum(pair.lam)
    return AdmissiblePair(pair.lam, tuple(b - shift * l for b, l in zip(pair.beta, pair.lam)), UNIT_NORM)


# -- validation --------------------------------------------------------------

def _close(a, b, tol: float) -> bool:
    if a == b:
        return True
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _close_vec(a: Sequence, b: Sequence, tol: float) -> bool:
    return all(_close(x, y, tol) for x, y in zip(a, b))


@dataclass
class SchemeReport:
    scheme: str
    samples: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.samples > 0 and not self.failures

    def as_dict(self) -> dict:
        return {"scheme": self.scheme, "samples": self.samples, "passed": self.passed,
                "failures": [{"sample": i, "check": c, "detail": d} for i, c, d in self.failures]}


def validate_scheme(scheme: Scheme, samples: Sequence[tuple], rng: random.Random | None = None,
                    tol: float = 1e-9, leaf_points: int = 4) -> SchemeReport:
    """Check the foliation properties of ``scheme`` on sample pairs ``(u, v)``.

    Per sample: the leaf exists and reproduces ``u`` and ``v``; its
    direction is positive; the same leaf comes back from another point on
    it; and random points of the leaf satisfy ``u < v``.  Checks are exact
    when the data stays rational, relative ``tol`` otherwise.
    """
    rng = rng or random.Random(0)
    report = SchemeReport(scheme.name)
    for idx, (u, v) in enumerate(samples):
        if not strictly_precedes(u, v):
            raise ComplexError(f"sample {idx} is not in the strict-order region")
        report.samples += 1
        try:
            pair, coords = leaf_through(scheme, u, v)
        except ValueError as exc:
            report.failures.append((idx, "existence", str(exc)))
            continue
        exact = _is_exact(pair.lam) and _is_exact(pair.beta)
        t0 = 0.0 if exact else tol
        if not (_close_vec(pair.point(coords.s), u, t0) and _close_vec(pair.point(coords.t), v, t0)):
            report.failures.append((idx, "round_trip", f"{pair} at {coords}"))
        if not all(x > 0 for x in pair.lam):
            report.failures.append((idx, "positivity", str(pair.lam)))
        span = coords.t - coords.s
        s2 = coords.s + span * rng.uniform(-2, 2)
        t2 = s2 + span * rng.uniform(0.05, 3)
        again, _ = leaf_through(scheme, pair.point(s2), pair.point(t2))
        if not (_close_vec(again.lam, pair.lam, tol) and _close_vec(again.beta, pair.beta, tol)):
            report.failures.append((idx, "uniqueness", f"{pair} vs {again}"))
        for _ in range(leaf_points):
            a = coords.s + span * rng.uniform(-5, 5)
            b = a + span * rng.uniform(1e-3, 5)
            if not strictly_precedes(pair.point(a), pair.point(b)):
                report.failures.append((idx, "leaf_inside", f"s={a}, t={b}"))
                break
    return report
