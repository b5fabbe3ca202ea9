"""Metric spaces, bounded sets and the gap / sup-distance set functionals.

Points are plain Python values whose shape depends on the space:

* ``real-line``: a float
* ``euclidean`` / ``chebyshev``: a tuple of ``dim`` floats
* ``finite-table``: an integer index into the distance table

Sets are either :class:`Interval` (real line only) or :class:`FiniteSet`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Union

import numpy as np

REAL_LINE = "real-line"
EUCLIDEAN = "euclidean"
CHEBYSHEV = "chebyshev"
FINITE_TABLE = "finite-table"

_KINDS = (REAL_LINE, EUCLIDEAN, CHEBYSHEV, FINITE_TABLE)


class SpaceError(ValueError):
    """Raised on malformed spaces, points or sets, or when they are mixed."""


@dataclass(frozen=True)
class MetricSpace:
    kind: str = REAL_LINE
    dim: int = 1
    table: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise SpaceError(f"unknown space kind {self.kind!r}")
        if self.kind in (EUCLIDEAN, CHEBYSHEV) and self.dim < 1:
            raise SpaceError("dim must be >= 1")
        if self.kind == FINITE_TABLE:
            if self.table is None:
                raise SpaceError("finite-table space needs a distance table")
            object.__setattr__(self, "table", tuple(tuple(float(v) for v in row) for row in self.table))
            _check_table(self.table)
            object.__setattr__(self, "dim", len(self.table))

    @classmethod
    def real_line(cls) -> "MetricSpace":
        return cls(REAL_LINE)

    @classmethod
    def euclidean(cls, dim: int) -> "MetricSpace":
        return cls(EUCLIDEAN, dim)

    @classmethod
    def chebyshev(cls, dim: int) -> "MetricSpace":
        return cls(CHEBYSHEV, dim)

    @classmethod
    def finite_table(cls, table) -> "MetricSpace":
        return cls(FINITE_TABLE, table=tuple(tuple(row) for row in table))

    @property
    def is_real_line(self) -> bool:
        return self.kind == REAL_LINE

    def point(self, p: Any):
        """Validate ``p`` and return it in canonical form."""
        if self.kind == REAL_LINE:
            if isinstance(p, (tuple, list, np.ndarray)):
                if len(p) != 1:
                    raise SpaceError(f"expected a scalar point, got {p!r}")
                p = p[0]
            v = float(p)
            if not math.isfinite(v):
                raise SpaceError(f"point {p!r} is not finite")
            return v
        if self.kind == FINITE_TABLE:
            if isinstance(p, bool) or int(p) != p:
                raise SpaceError(f"finite-table point must be an index, got {p!r}")
            i = int(p)
            if not 0 <= i < len(self.table):
                raise SpaceError(f"index {i} outside table of size {len(self.table)}")
            return i
        coords = tuple(float(c) for c in np.atleast_1d(p))
        if len(coords) != self.dim:
            raise SpaceError(f"dimension mismatch: expected {self.dim}, got {len(coords)}")
        if not all(math.isfinite(c) for c in coords):
            raise SpaceError(f"point {p!r} is not finite")
        return coords

    def dist(self, p, q) -> float:
        if self.kind == REAL_LINE:
            return abs(p - q)
        if self.kind == FINITE_TABLE:
            return self.table[p][q]
        if len(p) != len(q):
            raise SpaceError(f"dimension mismatch: {len(p)} vs {len(q)}")
        if self.kind == EUCLIDEAN:
            return math.hypot(*(a - b for a, b in zip(p, q)))
        return max(abs(a - b) for a, b in zip(p, q))


def _check_table(table):
    n = len(table)
    if n == 0:
        raise SpaceError("distance table is empty")
    for i, row in enumerate(table):
        if len(row) != n:
            raise SpaceError("distance table must be square")
        if row[i] != 0.0:
            raise SpaceError(f"nonzero diagonal at {i}")
        for j, v in enumerate(row):
            if not math.isfinite(v) or v < 0:
                raise SpaceError(f"bad distance {v} at ({i}, {j})")
            if v != table[j][i]:
                raise SpaceError(f"asymmetric table at ({i}, {j})")
            if i != j and v == 0:
                raise SpaceError(f"distinct points {i}, {j} at distance 0")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[i][k] > table[i][j] + table[j][k]:
            raise SpaceError(f"triangle inequality fails for ({i}, {j}, {k})")


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` on the real line; ``lo == hi`` is a singleton."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise SpaceError(f"unbounded interval [{self.lo}, {self.hi}]")
        if lo > hi:
            raise SpaceError(f"empty interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, p) -> bool:
        return self.lo <= p <= self.hi

    def __str__(self):
        if self.is_singleton:
            return f"{{{self.lo!r}}}"
        return f"[{self.lo!r}, {self.hi!r}]"


@dataclass(frozen=True)
class FiniteSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise SpaceError("finite set must contain at least one point")
        object.__setattr__(self, "points", pts)

    @property
    def is_singleton(self) -> bool:
        return len(set(self.points)) == 1

    def __contains__(self, p) -> bool:
        return p in self.points

    def __str__(self):
        return "{" + ", ".join(repr(p) for p in self.points) + "}"


BoundedSet = Union[Interval, FiniteSet]


def singleton(space: MetricSpace, p) -> BoundedSet:
    p = space.point(p)
    if space.is_real_line:
        return Interval(p, p)
    return FiniteSet((p,))


def as_set(space: MetricSpace, obj) -> BoundedSet:
    """Coerce a point or a set into a validated set of ``space``."""
    if isinstance(obj, Interval):
        if not space.is_real_line:
            raise SpaceError("intervals are only valid on the real line")
        return obj
    if isinstance(obj, FiniteSet):
        return FiniteSet(tuple(space.point(p) for p in obj.points))
    return singleton(space, obj)


def dist(space: MetricSpace, p, q) -> float:
    return space.dist(space.point(p), space.point(q))


def _interval_gap(a: Interval, b: Interval) -> float:
    return max(0.0, b.lo - a.hi, a.lo - b.hi)


def _interval_sup(a: Interval, b: Interval) -> float:
    return max(abs(a.lo - b.lo), abs(a.lo - b.hi), abs(a.hi - b.lo), abs(a.hi - b.hi))


def _point_interval_gap(p: float, b: Interval) -> float:
    return max(0.0, b.lo - p, p - b.hi)


def _point_interval_sup(p: float, b: Interval) -> float:
    return max(abs(p - b.lo), abs(p - b.hi))


def gap(space: MetricSpace, A, B) -> float:
    """Infimum of ``d(a, b)`` over ``a in A``, ``b in B``."""
    A, B = as_set(space, A), as_set(space, B)
    if isinstance(A, Interval) and isinstance(B, Interval):
        return _interval_gap(A, B)
    if isinstance(A, Interval):
        A, B = B, A
    if isinstance(B, Interval):
        return min(_point_interval_gap(p, B) for p in A.points)
    return min(space.dist(p, q) for p in A.points for q in B.points)


def sup_dist(space: MetricSpace, A, B) -> float:
    """Supremum of ``d(a, b)`` over ``a in A``, ``b in B``.

    Equals the diameter of ``A`` when ``A == B``; zero iff both sets are the
    same singleton.
    """
    A, B = as_set(space, A), as_set(space, B)
    if isinstance(A, Interval) and isinstance(B, Interval):
        return _interval_sup(A, B)
    if isinstance(A, Interval):
        A, B = B, A
    if isinstance(B, Interval):
        return max(_point_interval_sup(p, B) for p in A.points)
    return max(space.dist(p, q) for p in A.points for q in B.points)


def _sample(space: MetricSpace, S: BoundedSet, n: int, rng: np.random.Generator):
    if isinstance(S, Interval):
        return rng.uniform(S.lo, S.hi, size=n)
    idx = rng.integers(0, len(S.points), size=n)
    if space.kind == FINITE_TABLE:
        return np.asarray(S.points)[idx]
    return np.asarray(S.points, dtype=float).reshape(len(S.points), -1)[idx]


def _pairwise(space: MetricSpace, a, b, reduce, chunk=2048):
    """Reduce ``d`` over the full product ``a x b`` of sampled points."""
    if space.kind == REAL_LINE:
        # for |.| the extremal partner of any a is among the extremes of b
        a = np.asarray(a, dtype=float)
        if reduce is np.max:
            return float(max(np.max(np.abs(a - np.min(b))), np.max(np.abs(a - np.max(b)))))
        bs = np.sort(np.asarray(b, dtype=float))
        pos = np.clip(np.searchsorted(bs, a), 1, len(bs) - 1) if len(bs) > 1 else np.zeros(len(a), int)
        best = np.abs(a - bs[pos])
        if len(bs) > 1:
            best = np.minimum(best, np.abs(a - bs[pos - 1]))
        return float(np.min(best))
    out = []
    for start in range(0, len(a), chunk):
        block = a[start:start + chunk]
        if space.kind == FINITE_TABLE:
            tab = np.asarray(space.table)
            d = tab[np.ix_(block, b)]
        else:
            diff = block[:, None, :] - b[None, :, :]
            d = np.sqrt((diff ** 2).sum(-1)) if space.kind == EUCLIDEAN else np.abs(diff).max(-1)
        out.append(reduce(d))
    return float(reduce(out))


def sup_dist_oracle(space: MetricSpace, A, B, n_samples: int, seed: int = 0) -> float:
    """Monte-Carlo lower estimate of :func:`sup_dist`.

    Draws ``n_samples`` points from each set (uniformly on intervals, uniformly
    over the listed points of finite sets) and returns the largest distance
    over all sampled pairs. Never exceeds the exact value.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    A, B = as_set(space, A), as_set(space, B)
    rng = np.random.default_rng(seed)
    return _pairwise(space, _sample(space, A, n_samples, rng), _sample(space, B, n_samples, rng), np.max)


def gap_oracle(space: MetricSpace, A, B, n_samples: int, seed: int = 0) -> float:
    """Monte-Carlo upper estimate of :func:`gap`; never below the exact value."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    A, B = as_set(space, A), as_set(space, B)
    rng = np.random.default_rng(seed)
    return _pairwise(space, _sample(space, A, n_samples, rng), _sample(space, B, n_samples, rng), np.min)


def parse_set_literal(text: str, space: MetricSpace | None = None) -> BoundedSet:
    """Parse ``[lo, hi]`` or ``{p1, p2, ...}`` with numeric entries."""
    s = text.strip()
    if len(s) < 2 or (s[0], s[-1]) not in (("[", "]"), ("{", "}")):
        raise SpaceError(f"not a set literal: {text!r}")
    try:
        items = [float(t) for t in s[1:-1].split(",")]
    except ValueError as exc:
        raise SpaceError(f"bad set literal {text!r}: {exc}") from None
    if s[0] == "[":
        if len(items) != 2:
            raise SpaceError(f"interval literal needs two bounds: {text!r}")
        return Interval(*items)
    fs = FiniteSet(tuple(items))
    return as_set(space, fs) if space is not None else fs


def set_to_json(S: BoundedSet) -> Any:
    if isinstance(S, Interval):
        return [S.lo, S.hi]
    return {"points": [list(p) if isinstance(p, tuple) else p for p in S.points]}
