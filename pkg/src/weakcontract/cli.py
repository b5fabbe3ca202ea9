"""Command-line entry point.

Usage::

    weakcontract certify CONFIG [--tol T] [--seed N] [--out DIR]
    weakcontract solve CONFIG [--tol T] [--seed N] [--max-iter N] [--strategy S] [--out DIR]
    weakcontract gauge-check SPEC --class {phi,omega,psi} [--out FILE]

Exit codes: 0 success, 1 usage or configuration error, 2 condition
violated / gauge outside its class, 3 solver did not reach a verified end
point.  Structured output is written to files; stderr carries a one-line
human summary.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .contraction import Box, MapEvaluationError, MapPair, Sampler, certify
from .dsl import ParseError, parse
from .gauge import CHECKERS, GaugeError, GaugeFn, GaugeTriple
from .metric import MetricSpace
from .solver import STRATEGIES, SelectionStrategy, multistart_uniqueness_probe

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_NO_ENDPOINT = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    name: str
    pair: MapPair
    gauges: GaugeTriple
    domain: Box
    sampler: Sampler
    tol: float = 1e-12
    max_violations: int = 100
    x0: list = field(default_factory=lambda: [0.0])
    strategy: SelectionStrategy = field(default_factory=SelectionStrategy)
    solver_tol: float = 1e-10
    max_iter: int = 100_000
    out_dir: Path = Path(".")


def load_config(path, overrides: dict | None = None) -> RunConfig:
    """Read a JSON run configuration; ``overrides`` (from flags) win over file values."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    ov = {k: v for k, v in (overrides or {}).items() if v is not None}

    space = raw.get("space", {"kind": "real-line"})
    if space.get("kind") != "real-line":
        raise ConfigError("only real-line spaces can be configured from a file")
    try:
        T = parse(raw["T"])
        S_src = raw.get("S", "same-as-T")
        S = T if S_src == "same-as-T" else parse(S_src)
    except KeyError:
        raise ConfigError("config needs a 'T' map") from None
    except ParseError as exc:
        raise ConfigError(f"map definition: {exc}") from None

    dom = raw.get("domain", [0.0, 1.0])
    if not (isinstance(dom, list) and len(dom) == 2):
        raise ConfigError("domain must be [lo, hi]")
    try:
        domain = Box.interval(*dom)
        gauges = GaugeTriple.from_json(raw["gauges"])
        smp = dict(raw.get("sampler", {"kind": "grid", "resolution": 201}))
        if "seed" in ov:
            smp["seed"] = ov["seed"]
        sampler = Sampler(**smp)
    except KeyError:
        raise ConfigError("config needs a 'gauges' object with 'f' and 'phi'") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

    solver = raw.get("solver", {})
    x0 = solver.get("x0", [0.0])
    x0 = x0 if isinstance(x0, list) else [x0]
    try:
        strategy = SelectionStrategy(ov.get("strategy", solver.get("strategy", "nearest")),
                                     ov.get("seed", solver.get("seed", 0)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg = RunConfig(
        name=path.stem,
        pair=MapPair(T, S, MetricSpace.real_line()),
        gauges=gauges,
        domain=domain,
        sampler=sampler,
        tol=float(ov.get("tol", raw.get("tol", 1e-12))),
        max_violations=int(raw.get("max_violations", 100)),
        x0=[float(v) for v in x0],
        strategy=strategy,
        solver_tol=float(ov.get("tol", solver.get("tol", 1e-10))),
        max_iter=int(ov.get("max_iter", solver.get("max_iter", 100_000))),
        out_dir=Path(ov.get("out", raw.get("out", "."))),
    )
    if cfg.tol < 0 or not cfg.solver_tol > 0:
        raise ConfigError("tol must be positive")
    if cfg.max_iter < 1:
        raise ConfigError("max_iter must be >= 1")
    if not cfg.x0:
        raise ConfigError("solver.x0 must list at least one start")
    return cfg


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_certify(args) -> int:
    cfg = load_config(args.config, {"tol": args.tol, "seed": args.seed, "out": args.out})
    report = certify(cfg.pair, cfg.gauges, cfg.domain, cfg.sampler, cfg.tol, cfg.max_violations)
    out = cfg.out_dir / f"{cfg.name}.report.json"
    _write(out, report.dumps())
    print(f"{report.verdict}: min residual {report.min_residual!r} at {report.argmin}, "
          f"{report.n_violations} violation(s) -> {out}", file=sys.stderr)
    return EXIT_OK if report.certified else EXIT_VIOLATED


def cmd_solve(args) -> int:
    cfg = load_config(args.config, {"tol": args.tol, "seed": args.seed, "out": args.out,
                                    "max_iter": args.max_iter, "strategy": args.strategy})
    probe = multistart_uniqueness_probe(cfg.pair, cfg.gauges, cfg.x0, cfg.strategy,
                                        cfg.solver_tol, cfg.max_iter)
    result_path = cfg.out_dir / f"{cfg.name}.result.json"
    _write(result_path, probe.dumps())
    for i, (_, r) in enumerate(probe.runs):
        suffix = "" if len(probe.runs) == 1 else f".{i}"
        _write(cfg.out_dir / f"{cfg.name}.trace{suffix}.csv", r.trace.to_csv())
    ok = not probe.flagged
    print(f"end points {probe.endpoints} (unique={probe.unique}); "
          f"{len(probe.flagged)} start(s) flagged -> {result_path}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NO_ENDPOINT


def cmd_gauge_check(args) -> int:
    try:
        g = GaugeFn.from_json(json.loads(args.spec))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"gauge spec is not JSON: {exc}") from None
    except (GaugeError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    report = CHECKERS[args.gauge_class](g)
    text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    if args.out:
        _write(Path(args.out), text)
    sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakcontract", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="check the contraction condition on sampled pairs")
    p.add_argument("config")
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("solve", help="iterate toward a common end point from each start")
    p.add_argument("config")
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--strategy", choices=STRATEGIES)
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gauge-check", help="probe a gauge for class membership")
    p.add_argument("spec", help='JSON gauge spec, e.g. \'{"kind":"linear","k":0.25}\'')
    p.add_argument("--class", dest="gauge_class", required=True, choices=sorted(CHECKERS))
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=cmd_gauge_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, GaugeError, MapEvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
