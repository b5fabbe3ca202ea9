"""The functionals M and N, the pointwise contraction residual, and sampled certification.

For a pair of set-valued maps ``T, S`` and gauges ``(f, phi, psi)`` the
condition checked at ``(x, y)`` is::

    f(delta(Tx, Sy)) <= f(M) - phi(f(M)) + psi(N)

with ``M = max(d(x,y), delta(Tx,x), delta(y,Sy), (D(y,Tx) + D(x,Sy)) / 2)``
and ``N = min(D(y,Tx), D(x,Sy))``.  The residual is ``rhs - lhs``; the
condition holds at a sample iff the residual is nonnegative.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .gauge import GaugeTriple
from .metric import FINITE_TABLE, MetricSpace, as_set, gap, singleton, sup_dist

MultiMap = Callable[[object], object]


class MapEvaluationError(RuntimeError):
    """A map failed (or returned an invalid set) at a given point."""

    def __init__(self, point, cause):
        super().__init__(f"map evaluation failed at {point!r}: {cause}")
        self.point = point
        self.cause = cause


@dataclass(frozen=True)
class MapPair:
    T: MultiMap
    S: MultiMap
    space: MetricSpace = field(default_factory=MetricSpace.real_line)

    def image(self, which: str, x):
        fn = self.T if which == "T" else self.S
        try:
            return as_set(self.space, fn(x))
        except MapEvaluationError:
            raise
        except Exception as exc:
            raise MapEvaluationError(x, exc) from exc

    def swapped(self) -> "MapPair":
        return MapPair(self.S, self.T, self.space)


def _m_from_images(space, x, y, Tx, Sy) -> float:
    xs, ys = singleton(space, x), singleton(space, y)
    return max(
        space.dist(x, y),
        sup_dist(space, Tx, xs),
        sup_dist(space, ys, Sy),
        (gap(space, ys, Tx) + gap(space, xs, Sy)) / 2,
    )


def _n_from_images(space, x, y, Tx, Sy) -> float:
    return min(gap(space, singleton(space, y), Tx), gap(space, singleton(space, x), Sy))


def big_m(pair: MapPair, x, y) -> float:
    sp = pair.space
    x, y = sp.point(x), sp.point(y)
    return _m_from_images(sp, x, y, pair.image("T", x), pair.image("S", y))


def small_n(pair: MapPair, x, y) -> float:
    sp = pair.space
    x, y = sp.point(x), sp.point(y)
    return _n_from_images(sp, x, y, pair.image("T", x), pair.image("S", y))


@dataclass(frozen=True)
class ConditionResidual:
    x: object
    y: object
    lhs: float
    m: float
    n: float
    rhs: float
    residual: float

    @property
    def holds(self) -> bool:
        return self.residual >= 0

    def to_json(self) -> dict:
        return {
            "x": _jsonable(self.x), "y": _jsonable(self.y),
            "lhs": self.lhs, "rhs": self.rhs, "m": self.m, "n": self.n,
            "residual": self.residual,
        }


def _jsonable(p):
    return list(p) if isinstance(p, tuple) else p


def _residual_from_images(space, gauges, x, y, Tx, Sy) -> ConditionResidual:
    lhs = float(gauges.f(sup_dist(space, Tx, Sy)))
    m = _m_from_images(space, x, y, Tx, Sy)
    n = _n_from_images(space, x, y, Tx, Sy)
    rhs = float(gauges.rhs(m, n))
    return ConditionResidual(x, y, lhs, m, n, rhs, rhs - lhs)


def residual(pair: MapPair, gauges: GaugeTriple, x, y) -> ConditionResidual:
    sp = pair.space
    x, y = sp.point(x), sp.point(y)
    return _residual_from_images(sp, gauges, x, y, pair.image("T", x), pair.image("S", y))


# ---------------------------------------------------------------------------
# Domains and samplers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Product of closed intervals, one per coordinate of the space.

    On a finite-table space the box is ignored and every index is used.
    """

    lows: tuple[float, ...]
    highs: tuple[float, ...]

    def __post_init__(self):
        lows = tuple(float(v) for v in np.atleast_1d(self.lows))
        highs = tuple(float(v) for v in np.atleast_1d(self.highs))
        if len(lows) != len(highs) or not lows:
            raise ValueError("box bounds must be nonempty and of equal length")
        if any(lo > hi for lo, hi in zip(lows, highs)):
            raise ValueError(f"empty box {lows} x {highs}")
        object.__setattr__(self, "lows", lows)
        object.__setattr__(self, "highs", highs)

    @classmethod
    def interval(cls, lo: float, hi: float) -> "Box":
        return cls((lo,), (hi,))

    def to_json(self):
        if len(self.lows) == 1:
            return [self.lows[0], self.highs[0]]
        return {"lows": list(self.lows), "highs": list(self.highs)}


@dataclass(frozen=True)
class Sampler:
    """``grid`` with ``resolution`` points per axis, or ``random`` with ``count`` pairs."""

    kind: str = "grid"
    resolution: int = 201
    count: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("grid", "random"):
            raise ValueError(f"unknown sampler kind {self.kind!r}")
        if self.kind == "grid" and self.resolution < 2:
            raise ValueError("grid resolution must be >= 2")
        if self.kind == "random" and self.count < 1:
            raise ValueError("random sampler count must be >= 1")

    def to_json(self) -> dict:
        if self.kind == "grid":
            return {"kind": "grid", "resolution": self.resolution}
        return {"kind": "random", "count": self.count, "seed": self.seed}


def grid_axis(lo: float, hi: float, n: int) -> list[float]:
    # i*(hi-lo)/(n-1) keeps round values such as 0.9 exact on [0, 1]
    return [lo + i * (hi - lo) / (n - 1) for i in range(n - 1)] + [hi]


def _domain_points(space: MetricSpace, box: Box, resolution: int) -> list:
    if space.kind == FINITE_TABLE:
        return list(range(len(space.table)))
    axes = [grid_axis(lo, hi, resolution) for lo, hi in zip(box.lows, box.highs)]
    if space.is_real_line:
        return axes[0]
    return [tuple(c) for c in np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(axes), -1).T.tolist()]


def sample_pairs(space: MetricSpace, box: Box, sampler: Sampler) -> list[tuple]:
    """The ``(x, y)`` samples a certification run evaluates, in canonical order."""
    if sampler.kind == "grid":
        pts = _domain_points(space, box, sampler.resolution)
        return [(x, y) for x in pts for y in pts]
    rng = np.random.default_rng(sampler.seed)
    if space.kind == FINITE_TABLE:
        idx = rng.integers(0, len(space.table), size=(sampler.count, 2))
        return [(int(a), int(b)) for a, b in idx]
    lows, highs = np.asarray(box.lows), np.asarray(box.highs)
    u = rng.uniform(size=(sampler.count, 2, len(lows)))
    v = lows + u * (highs - lows)
    if space.is_real_line:
        return [(float(a[0]), float(b[0])) for a, b in v]
    return [(tuple(a.tolist()), tuple(b.tolist())) for a, b in v]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _key(r: ConditionResidual):
    return (r.residual, _order(r.x), _order(r.y))


def _order(p):
    return p if isinstance(p, tuple) else (p,)


@dataclass
class CertificationReport:
    """Outcome of a sampled certification run.

    ``violations`` keeps the ``max_violations`` worst samples (most negative
    residual first, ties broken on ``(x, y)``); ``n_violations`` counts all.
    """

    n_points: int
    min_residual: float
    argmin: tuple
    violations: list[ConditionResidual]
    n_violations: int
    tol: float
    max_violations: int = 100
    domain: object = None
    sampler: object = None

    @property
    def certified(self) -> bool:
        return self.n_violations == 0

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "violated"

    def merge(self, other: "CertificationReport") -> "CertificationReport":
        """Combine reports over disjoint sample chunks; associative and commutative."""
        if self.n_points == 0:
            return other
        if other.n_points == 0:
            return self
        mine = (self.min_residual, _order(self.argmin[0]), _order(self.argmin[1]))
        theirs = (other.min_residual, _order(other.argmin[0]), _order(other.argmin[1]))
        best = self if mine <= theirs else other
        cap = min(self.max_violations, other.max_violations)
        viol = heapq.nsmallest(cap, self.violations + other.violations, key=_key)
        return CertificationReport(
            n_points=self.n_points + other.n_points,
            min_residual=best.min_residual,
            argmin=best.argmin,
            violations=viol,
            n_violations=self.n_violations + other.n_violations,
            tol=self.tol,
            max_violations=cap,
            domain=self.domain,
            sampler=self.sampler,
        )

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "min_residual": self.min_residual,
            "argmin": [_jsonable(self.argmin[0]), _jsonable(self.argmin[1])],
            "n_points": self.n_points,
            "n_violations": self.n_violations,
            "tol": self.tol,
            "domain": self.domain,
            "sampler": self.sampler,
            "violations": [v.to_json() for v in self.violations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _empty(tol, cap, domain, sampler) -> CertificationReport:
    return CertificationReport(0, float("inf"), (None, None), [], 0, tol, cap, domain, sampler)


def evaluate_chunk(pair: MapPair, gauges: GaugeTriple, pairs: Sequence[tuple], tol: float = 1e-12,
                   max_violations: int = 100, domain=None, sampler=None) -> CertificationReport:
    sp = pair.space
    t_cache, s_cache = {}, {}
    best = None
    viol = []
    n_viol = 0
    for x, y in pairs:
        Tx = t_cache.get(x)
        if Tx is None:
            Tx = t_cache[x] = pair.image("T", x)
        Sy = s_cache.get(y)
        if Sy is None:
            Sy = s_cache[y] = pair.image("S", y)
        r = _residual_from_images(sp, gauges, x, y, Tx, Sy)
        k = _key(r)
        if best is None or k < best[0]:
            best = (k, r)
        if r.residual < -tol:
            n_viol += 1
            viol.append(r)
    if best is None:
        return _empty(tol, max_violations, domain, sampler)
    viol = heapq.nsmallest(max_violations, viol, key=_key)
    r = best[1]
    return CertificationReport(len(pairs), r.residual, (r.x, r.y), viol, n_viol, tol,
                               max_violations, domain, sampler)


def certify(pair: MapPair, gauges: GaugeTriple, domain: Box, sampler: Sampler | None = None,
            tol: float = 1e-12, max_violations: int = 100, chunk_size: int | None = None,
            executor=None) -> CertificationReport:
    """Evaluate the residual on every sampled ``(x, y)`` and collect violations.

    Samples may be split into chunks and evaluated on ``executor`` (any
    ``concurrent.futures`` executor); the merged report does not depend on
    the split.  Certification is sample-based evidence, not a proof.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    sampler = sampler or Sampler()
    sp = pair.space
    pairs = [(sp.point(x), sp.point(y)) for x, y in sample_pairs(sp, domain, sampler)]
    dom, smp = domain.to_json(), sampler.to_json()
    size = chunk_size or len(pairs) or 1
    chunks = [pairs[i:i + size] for i in range(0, len(pairs), size)]
    args = (tol, max_violations, dom, smp)
    if executor is None:
        parts: Iterable = (evaluate_chunk(pair, gauges, c, *args) for c in chunks)
    else:
        parts = executor.map(lambda c: evaluate_chunk(pair, gauges, c, *args), chunks)
    report = _empty(tol, max_violations, dom, smp)
    for part in parts:
        report = report.merge(part)
    return report
