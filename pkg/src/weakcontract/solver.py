"""Alternating T/S iteration toward a common end point, with trace diagnostics.

Starting from ``x0`` the iteration selects ``x1`` from ``A0 = T(x0)``,
``x2`` from ``A1 = S(x1)``, ``x3`` from ``A2 = T(x2)`` and so on.  The trace
records ``delta(A_n, A_{n+1})`` and ``d(x_n, x_{n+1})`` for each step; a run
stops once both fall to ``tol``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .contraction import MapPair, _jsonable
from .gauge import GaugeFn, GaugeTriple
from .metric import FINITE_TABLE, FiniteSet, Interval, MetricSpace, singleton, sup_dist

STRATEGIES = ("nearest", "midpoint", "sup-endpoint", "farthest", "random")


@dataclass(frozen=True)
class SelectionStrategy:
    """How the next iterate is picked from the current image set.

    * ``nearest``: the member closest to the current iterate (clamping on intervals)
    * ``midpoint``: interval midpoint, or the middle listed point of a finite set
    * ``sup-endpoint``: the largest member (upper endpoint of an interval)
    * ``farthest``: the member farthest from the current iterate
    * ``random``: uniform member, reproducible from ``seed``
    """

    kind: str = "nearest"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}; expected one of {STRATEGIES}")

    def selector(self, space):
        rng = np.random.default_rng(self.seed) if self.kind == "random" else None
        kind = self.kind

        def select(A, x):
            if isinstance(A, Interval):
                if kind == "nearest":
                    return min(max(x, A.lo), A.hi)
                if kind == "midpoint":
                    return min(max(A.lo + (A.hi - A.lo) / 2, A.lo), A.hi)
                if kind == "sup-endpoint":
                    return A.hi
                if kind == "farthest":
                    return A.lo if abs(x - A.lo) >= abs(x - A.hi) else A.hi
                return float(rng.uniform(A.lo, A.hi))
            pts = A.points
            if kind == "nearest":
                return min(pts, key=lambda p: space.dist(x, p))
            if kind == "farthest":
                return max(pts, key=lambda p: space.dist(x, p))
            if kind == "midpoint":
                return sorted(pts)[len(pts) // 2] if space.kind != FINITE_TABLE else pts[len(pts) // 2]
            if kind == "sup-endpoint":
                return max(pts)
            return pts[int(rng.integers(len(pts)))]

        return select


@dataclass
class IterationTrace:
    iterates: list
    sets: list
    set_gaps: list[float]
    step_dists: list[float]
    converged: bool

    @property
    def final(self):
        return self.iterates[-1]

    @property
    def iterations_used(self) -> int:
        return len(self.step_dists)

    def to_csv(self) -> str:
        """Rows ``step,x,set_lo,set_hi,delta_gap,step_dist``; the last row has no step data."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "x", "set_lo", "set_hi", "delta_gap", "step_dist"])
        for n, x in enumerate(self.iterates):
            A = self.sets[n]
            lo, hi = (repr(A.lo), repr(A.hi)) if isinstance(A, Interval) else ("", "")
            xs = " ".join(repr(c) for c in x) if isinstance(x, tuple) else repr(x)
            gap = repr(self.set_gaps[n]) if n < len(self.set_gaps) else ""
            step = repr(self.step_dists[n]) if n < len(self.step_dists) else ""
            w.writerow([n, xs, lo, hi, gap, step])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "converged": self.converged,
            "iterations_used": self.iterations_used,
            "final": _jsonable(self.final),
            "iterates": [_jsonable(x) for x in self.iterates],
            "set_gaps": list(self.set_gaps),
            "step_dists": list(self.step_dists),
        }


def iterate(pair: MapPair, x0, strategy: SelectionStrategy | None = None,
            tol: float = 1e-10, max_iter: int = 100_000) -> IterationTrace:
    """Run the alternating iteration from ``x0``.

    Hitting ``max_iter`` is reported through ``converged=False``, not raised.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    strategy = strategy or SelectionStrategy()
    sp = pair.space
    select = strategy.selector(sp)
    x = sp.point(x0)
    A = pair.image("T", x)
    iterates, sets, gaps, steps = [x], [A], [], []
    converged = False
    for n in range(max_iter):
        x_next = sp.point(select(A, x))
        A_next = pair.image("S" if n % 2 == 0 else "T", x_next)
        g = sup_dist(sp, A, A_next)
        d = sp.dist(x, x_next)
        iterates.append(x_next)
        sets.append(A_next)
        gaps.append(g)
        steps.append(d)
        x, A = x_next, A_next
        if g <= tol and d <= tol:
            converged = True
            break
    return IterationTrace(iterates, sets, gaps, steps, converged)


@dataclass
class EndpointResult:
    z: object
    delta_T: float
    delta_S: float
    is_endpoint: bool
    tol: float
    trace: IterationTrace | None = None

    def to_json(self) -> dict:
        out = {
            "z": _jsonable(self.z),
            "delta_T": self.delta_T,
            "delta_S": self.delta_S,
            "is_endpoint": self.is_endpoint,
            "tol": self.tol,
        }
        if self.trace is not None:
            out["converged"] = self.trace.converged
            out["iterations_used"] = self.trace.iterations_used
        return out


def verify_endpoint(pair: MapPair, z, tol: float = 1e-10) -> EndpointResult:
    """Check ``T(z) = S(z) = {z}`` up to ``tol`` via ``delta(Tz, z)`` and ``delta(Sz, z)``."""
    sp = pair.space
    z = sp.point(z)
    zs = singleton(sp, z)
    dT = sup_dist(sp, pair.image("T", z), zs)
    dS = sup_dist(sp, pair.image("S", z), zs)
    return EndpointResult(z, dT, dS, max(dT, dS) <= tol, tol)


def solve(pair: MapPair, gauges: GaugeTriple | None = None, x0=0.0,
          strategy: SelectionStrategy | None = None, tol: float = 1e-10,
          max_iter: int = 100_000, verify_tol: float | None = None) -> EndpointResult:
    # gauges do not steer the iteration; they are accepted so callers can pass
    # one configuration object to both certify and solve
    trace = iterate(pair, x0, strategy, tol, max_iter)
    result = verify_endpoint(pair, trace.final, tol if verify_tol is None else verify_tol)
    result.trace = trace
    return result


def check_monotone(trace: IterationTrace, slack: float = 1e-12) -> tuple[bool, int | None]:
    """Whether ``set_gaps`` never increases by more than ``slack``; else the first bad index."""
    gaps = trace.set_gaps if isinstance(trace, IterationTrace) else list(trace)
    for i in range(1, len(gaps)):
        if gaps[i] > gaps[i - 1] + slack:
            return False, i
    return True, None


def tail_bound(trace: IterationTrace, k: float, f: GaugeFn, step: int | None = None) -> float:
    """A-posteriori bound ``((1 - k) / k) * f(delta(A_{n-1}, A_n))``.

    ``n`` defaults to the last recorded set.  Under the contraction hypothesis
    with ratio parameter ``k``, ``f(delta(A_n, A_m))`` stays below the bound
    for every later ``m``.
    """
    if not 0 < k < 1:
        raise ValueError(f"k must lie in (0, 1), got {k}")
    gaps = trace.set_gaps
    if len(gaps) < 2:
        raise ValueError("trace needs at least two gap entries")
    n = len(gaps) if step is None else step
    if not 1 <= n <= len(gaps):
        raise ValueError(f"step {step} outside recorded range 1..{len(gaps)}")
    return (1 - k) / k * float(f(gaps[n - 1]))


@dataclass
class ProbeResult:
    endpoints: list
    unique: bool
    runs: list = field(default_factory=list)
    flagged: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "endpoints": [_jsonable(z) for z in self.endpoints],
            "unique": self.unique,
            "flagged": [_jsonable(x) for x in self.flagged],
            "runs": [dict(start=_jsonable(x0), **r.to_json()) for x0, r in self.runs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def multistart_uniqueness_probe(pair: MapPair, gauges: GaugeTriple | None, starts,
                                strategy: SelectionStrategy | None = None, tol: float = 1e-10,
                                max_iter: int = 100_000, executor=None) -> ProbeResult:
    """Solve from each start and cluster the verified end points within ``10 * tol``.

    Runs that do not converge or whose limit fails verification are flagged
    and left out of the clustering.  One cluster is evidence of uniqueness,
    not a proof.
    """
    starts = list(starts)
    if not starts:
        raise ValueError("starts must be nonempty")
    run = lambda x0: solve(pair, gauges, x0, strategy, tol, max_iter)  # noqa: E731
    results = list(executor.map(run, starts)) if executor else [run(x0) for x0 in starts]
    sp = pair.space
    clusters, flagged = [], []
    for x0, r in zip(starts, results):
        if not (r.trace.converged and r.is_endpoint):
            flagged.append(x0)
            continue
        if not any(sp.dist(c, r.z) <= 10 * tol for c in clusters):
            clusters.append(r.z)
    ordered = sorted(clusters, key=lambda z: z if isinstance(z, tuple) else (z,))
    return ProbeResult(ordered, len(clusters) == 1, list(zip(starts, results)), flagged)


def lift_single_valued(g, space=None):
    """Turn a point map into the set-valued map ``x -> {g(x)}``.

    Under the lift ``delta`` and ``D`` both reduce to ``d`` on the images, so
    end points of the lifted pair are exactly common fixed points of ``g``.
    """
    space = space or MetricSpace.real_line()

    def lifted(x):
        v = g(x)
        if isinstance(v, (Interval, FiniteSet)):
            raise TypeError("lift_single_valued expects a point-valued map")
        return singleton(space, v)

    lifted.__name__ = f"lift({getattr(g, '__name__', 'g')})"
    return lifted
