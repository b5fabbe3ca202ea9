"""Hand-coded versions of the two worked example map pairs on ``E = [0, 1]``.

Example 1 satisfies the condition with ``psi`` disabled and has the single
common end point 0.  Example 2 has the two end points 0 and 1; its stated
gauges do not satisfy the condition on the whole square (the residual is
negative near ``y = 1``), so it doubles as a violation-detection case.
"""
from .contraction import Box, MapPair
from .gauge import GaugeTriple, linear, quad_scale, identity, zero
from .metric import Interval, MetricSpace

EXAMPLE1_T = "otherwise -> [x/4, x/2]"
EXAMPLE1_S = "otherwise -> [0, x/5]"
EXAMPLE2_T = "if x == 1 -> {1}; otherwise -> [x/3, x/2]"

UNIT = Box.interval(0.0, 1.0)
EXAMPLE2_INTERIOR = Box.interval(0.0, 0.995)


def example1_T(x):
    return Interval(x / 4, x / 2)


def example1_S(x):
    return Interval(0, x / 5)


def example2_map(x):
    if x == 1:
        return Interval(1.0, 1.0)
    return Interval(x / 3, x / 2)


def example1_pair() -> MapPair:
    return MapPair(example1_T, example1_S, MetricSpace.real_line())


def example1_gauges() -> GaugeTriple:
    return GaugeTriple(linear(2.0), linear(0.25), zero())


def example2_pair() -> MapPair:
    return MapPair(example2_map, example2_map, MetricSpace.real_line())


def example2_gauges() -> GaugeTriple:
    return GaugeTriple(identity(), linear(0.2), quad_scale(2.0))
