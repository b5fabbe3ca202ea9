"""Gauge functions on ``[0, inf)`` and empirical class-membership verifiers.

Three classes of gauges shape the contraction inequality:

* ``phi`` (subtracted term): zero only at 0, lower semicontinuous, and
  ``phi(t) >= k t`` eventually along sequences tending to 0;
* ``omega`` (outer transform ``f``): zero only at 0, non-decreasing,
  continuous and subadditive;
* ``psi`` (additive slack): zero only at 0, non-decreasing and continuous.

Membership is checked on point samples only.  Built-in gauges carry an
analytic ``trusted`` set of classes so callers need not rely on heuristics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PHI, OMEGA, PSI = "phi", "omega", "psi"
CLASSES = (PHI, OMEGA, PSI)

KINDS = ("linear", "log1p", "power", "quad-scale", "identity", "table", "zero")


class GaugeError(ValueError):
    pass


@dataclass(frozen=True)
class GaugeFn:
    kind: str
    k: float | None = None
    p: float | None = None
    c: float | None = None
    xs: tuple[float, ...] | None = None
    ys: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GaugeError(f"unknown gauge kind {self.kind!r}")
        need = {"linear": "k", "power": "p", "quad-scale": "c"}.get(self.kind)
        if need is not None:
            v = getattr(self, need)
            if v is None or not math.isfinite(v) or v <= 0:
                raise GaugeError(f"{self.kind} gauge needs a positive finite {need!r}")
        if self.kind == "table":
            if self.xs is None or self.ys is None or len(self.xs) != len(self.ys) or len(self.xs) < 2:
                raise GaugeError("table gauge needs >= 2 matching sample points")
            xs = tuple(float(v) for v in self.xs)
            ys = tuple(float(v) for v in self.ys)
            if xs[0] != 0.0 or any(b <= a for a, b in zip(xs, xs[1:])):
                raise GaugeError("table abscissae must start at 0 and increase strictly")
            if any(not math.isfinite(v) or v < 0 for v in ys):
                raise GaugeError("table values must be finite and nonnegative")
            object.__setattr__(self, "xs", xs)
            object.__setattr__(self, "ys", ys)

    def __call__(self, t):
        kind = self.kind
        if kind == "identity":
            return t
        if kind == "linear":
            return self.k * t
        if kind == "log1p":
            return np.log1p(t) if isinstance(t, np.ndarray) else math.log1p(t)
        if kind == "power":
            return t ** self.p
        if kind == "quad-scale":
            return self.c * t * t
        if kind == "zero":
            return 0.0 * t
        xs, ys = self.xs, self.ys
        slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        inner = np.interp(t, xs, ys)
        tail = ys[-1] + slope * (np.asarray(t, dtype=float) - xs[-1])
        out = np.where(np.asarray(t) > xs[-1], tail, inner)
        return out if isinstance(t, np.ndarray) else float(out)

    @property
    def trusted(self) -> frozenset:
        """Classes this gauge belongs to analytically."""
        kind = self.kind
        if kind in ("linear", "identity", "log1p"):
            return frozenset(CLASSES)
        if kind == "power":
            return frozenset(CLASSES) if self.p <= 1 else frozenset({PSI})
        if kind == "quad-scale":
            return frozenset({PSI})
        return frozenset()

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for name in ("k", "p", "c"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        if self.kind == "table":
            out["xs"], out["ys"] = list(self.xs), list(self.ys)
        return out

    @classmethod
    def from_json(cls, spec: dict) -> "GaugeFn":
        if not isinstance(spec, dict) or "kind" not in spec:
            raise GaugeError(f"gauge spec must be an object with a 'kind': {spec!r}")
        allowed = {"kind", "k", "p", "c", "xs", "ys"}
        extra = set(spec) - allowed
        if extra:
            raise GaugeError(f"unexpected gauge fields {sorted(extra)}")
        kw = dict(spec)
        for name in ("xs", "ys"):
            if name in kw:
                kw[name] = tuple(kw[name])
        return cls(**kw)


def linear(k: float) -> GaugeFn:
    return GaugeFn("linear", k=k)


def identity() -> GaugeFn:
    return GaugeFn("identity")


def log1p() -> GaugeFn:
    return GaugeFn("log1p")


def power(p: float) -> GaugeFn:
    return GaugeFn("power", p=p)


def quad_scale(c: float) -> GaugeFn:
    return GaugeFn("quad-scale", c=c)


def zero() -> GaugeFn:
    return GaugeFn("zero")


def table(xs, ys) -> GaugeFn:
    return GaugeFn("table", xs=tuple(xs), ys=tuple(ys))


@dataclass(frozen=True)
class ProbeConfig:
    """Sampling schedule used by the class verifiers.

    ``grid`` defaults to 64 log-spaced points in ``[1e-6, 10]``; the ratio
    test of ``phi`` walks ``ratio_start * 2**-j`` for ``j = 0..ratio_scales``.
    """

    grid: tuple[float, ...] = tuple(np.logspace(-6, 1, 64))
    ratio_scales: int = 40
    ratio_start: float = 1.0
    ratio_floor: float = 1e-6
    refine_levels: int = 30
    tol: float = 1e-9

    def __post_init__(self):
        if not self.grid or any(not (t > 0) for t in self.grid):
            raise GaugeError("probe grid must be nonempty and inside (0, t_max]")


@dataclass
class ClassReport:
    gauge_class: str
    passed: bool
    failed_condition: str | None = None
    witness: tuple | None = None
    k: float | None = None
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "class": self.gauge_class,
            "verdict": "pass" if self.passed else "fail",
            "failed_condition": self.failed_condition,
            "witness": list(self.witness) if self.witness is not None else None,
            "k": self.k,
            "warnings": list(self.warnings),
        }


def _fail(cls, cond, *witness, **kw) -> ClassReport:
    return ClassReport(cls, False, cond, tuple(float(w) for w in witness), **kw)


def _zero_only_at_zero(g, probe, cls):
    g0 = float(g(0.0))
    if abs(g0) > probe.tol:
        return _fail(cls, "(i)", 0.0)
    for t in (1.0, *probe.grid):
        if not float(g(t)) > 0:
            return _fail(cls, "(i)", t)
    return None


def _nondecreasing(g, probe, cls, cond):
    ts = sorted(set((0.0, *probe.grid)))
    vals = [float(g(t)) for t in ts]
    for (a, ga), (b, gb) in zip(zip(ts, vals), zip(ts[1:], vals[1:])):
        if gb < ga - probe.tol * (1 + abs(ga)):
            return _fail(cls, cond, a, b)
    return None


def _continuous(g, probe, cls, cond):
    # oscillation over t +- t*2^-j must vanish as j grows
    for t in probe.grid:
        gt = float(g(t))
        h = t * 2.0 ** -probe.refine_levels
        osc = max(abs(float(g(t + h)) - gt), abs(float(g(max(t - h, 0.0))) - gt))
        if osc > 1e3 * probe.tol * (1 + abs(gt)):
            return _fail(cls, cond, t)
    return None


def _lower_semicontinuous(g, probe, cls):
    for t in probe.grid:
        gt = float(g(t))
        h = t * 2.0 ** -probe.refine_levels
        near = min(float(g(t + s * h * 2.0 ** -j)) for s in (-1, 1) for j in range(4))
        if gt > near + 1e3 * probe.tol * (1 + abs(gt)):
            return _fail(cls, "(ii)", t)
    return None


def check_phi(g: GaugeFn, probe: ProbeConfig | None = None) -> ClassReport:
    probe = probe or ProbeConfig()
    bad = _zero_only_at_zero(g, probe, PHI) or _lower_semicontinuous(g, probe, PHI)
    if bad:
        return bad
    ts = [probe.ratio_start * 2.0 ** -j for j in range(probe.ratio_scales + 1)]
    ratios = [float(g(t)) / t for t in ts]
    worst = min(range(len(ts)), key=lambda i: (ratios[i], i))
    tail = ratios[len(ratios) * 3 // 4:]
    if min(tail) < probe.ratio_floor:
        return _fail(PHI, "(iii)", ts[worst], k=ratios[worst])
    report = ClassReport(PHI, True, k=min(ratios[worst], 1.0 - 1e-9))
    report.warnings.append("ratio condition probed on one geometric sequence only")
    if tail[-1] < tail[0] * 0.5:
        report.warnings.append("ratio still decreasing at the finest scale; inconclusive")
    return report


def check_omega(g: GaugeFn, probe: ProbeConfig | None = None) -> ClassReport:
    probe = probe or ProbeConfig()
    bad = (
        _nondecreasing(g, probe, OMEGA, "(ii)")
        or _zero_only_at_zero(g, probe, OMEGA)
        or _continuous(g, probe, OMEGA, "(iii)")
    )
    if bad:
        return bad
    ts = np.asarray(sorted(set((1.0, *probe.grid))))
    x, y = np.meshgrid(ts, ts, indexing="ij")
    gx, gy, gxy = g(x), g(y), g(x + y)
    excess = (gxy - gx - gy) / (1.0 + gx + gy)
    i, j = np.unravel_index(np.argmax(excess), excess.shape)
    if excess[i, j] > probe.tol:
        return _fail(OMEGA, "(iv)", ts[i], ts[j])
    return ClassReport(OMEGA, True)


def check_psi(g: GaugeFn, probe: ProbeConfig | None = None) -> ClassReport:
    probe = probe or ProbeConfig()
    bad = (
        _nondecreasing(g, probe, PSI, "(ii)")
        or _zero_only_at_zero(g, probe, PSI)
        or _continuous(g, probe, PSI, "(iii)")
    )
    return bad or ClassReport(PSI, True)


CHECKERS = {PHI: check_phi, OMEGA: check_omega, PSI: check_psi}


@dataclass(frozen=True)
class GaugeTriple:
    """``(f, phi, psi)``; ``psi`` may be the zero gauge, which disables the slack term."""

    f: GaugeFn
    phi: GaugeFn
    psi: GaugeFn = field(default_factory=zero)

    def __post_init__(self):
        for cls, g in ((OMEGA, self.f), (PHI, self.phi), (PSI, self.psi)):
            if cls == PSI and g.is_zero:
                continue
            if cls in g.trusted:
                continue
            report = CHECKERS[cls](g)
            if not report.passed:
                raise GaugeError(
                    f"{g.to_json()} is not in class {cls}: condition {report.failed_condition} "
                    f"fails at {report.witness}"
                )

    def rhs(self, m: float, n: float) -> float:
        fm = self.f(m)
        return fm - self.phi(fm) + self.psi(n)

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "phi": self.phi.to_json(), "psi": self.psi.to_json()}

    @classmethod
    def from_json(cls, spec: dict) -> "GaugeTriple":
        psi = spec.get("psi", {"kind": "zero"})
        return cls(GaugeFn.from_json(spec["f"]), GaugeFn.from_json(spec["phi"]), GaugeFn.from_json(psi))


def preset_banach_like(k: float, psi: GaugeFn | None = None) -> GaugeTriple:
    """Gauges reducing the condition to ``delta(Tx,Sy) <= k M(x,y) + psi(N(x,y))``."""
    if not 0 < k < 1:
        raise GaugeError(f"k must lie in (0, 1), got {k}")
    return GaugeTriple(identity(), linear(1 - k), psi if psi is not None else zero())
