"""Certify generalized weakly contractive conditions for pairs of set-valued
maps and compute common end points by alternating iteration."""
from .contraction import (
    Box, CertificationReport, ConditionResidual, MapEvaluationError, MapPair, Sampler,
    big_m, certify, residual, small_n,
)
from .dsl import MapDef, MapEvalError, ParseError, eval_map, parse, to_source
from .gauge import (
    ClassReport, GaugeError, GaugeFn, GaugeTriple, ProbeConfig, check_omega, check_phi,
    check_psi, preset_banach_like,
)
from .metric import (
    FiniteSet, Interval, MetricSpace, SpaceError, dist, gap, gap_oracle, sup_dist,
    sup_dist_oracle,
)
from .solver import (
    EndpointResult, IterationTrace, SelectionStrategy, check_monotone, iterate,
    lift_single_valued, multistart_uniqueness_probe, solve, tail_bound, verify_endpoint,
)

__version__ = "0.1.0"
