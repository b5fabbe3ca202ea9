import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import corner_gap, corner_sup, pairwise_max, pairwise_min
from weakcontract.metric import (
    FiniteSet, Interval, MetricSpace, SpaceError, as_set, dist, gap, gap_oracle,
    parse_set_literal, sup_dist, sup_dist_oracle,
)

R = MetricSpace.real_line()
reals = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw):
    a, b = draw(reals), draw(reals)
    return Interval(min(a, b), max(a, b))


def test_dist_examples():
    assert dist(R, 0.3, 0.7) == pytest.approx(0.4, abs=1e-15)
    assert dist(R, 0.3, 0.3) == 0
    assert dist(MetricSpace.euclidean(2), (0, 0), (3, 4)) == 5.0
    assert dist(MetricSpace.chebyshev(2), (0, 0), (3, 4)) == 4.0


def test_dimension_mismatch():
    with pytest.raises(SpaceError):
        dist(MetricSpace.euclidean(2), (0, 0), (1, 2, 3))


def test_point_validation():
    with pytest.raises(SpaceError):
        R.point(float("nan"))
    with pytest.raises(SpaceError):
        MetricSpace.finite_table([[0, 1], [1, 0]]).point(2)


def test_finite_table_must_be_metric():
    with pytest.raises(SpaceError, match="triangle"):
        MetricSpace.finite_table([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(SpaceError, match="asymmetric"):
        MetricSpace.finite_table([[0, 1], [2, 0]])
    with pytest.raises(SpaceError, match="diagonal"):
        MetricSpace.finite_table([[1, 1], [1, 0]])
    sp = MetricSpace.finite_table([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert dist(sp, 0, 2) == 2


def test_empty_sets_rejected():
    with pytest.raises(SpaceError):
        Interval(1, 0)
    with pytest.raises(SpaceError):
        FiniteSet(())
    with pytest.raises(SpaceError):
        Interval(0, math.inf)


def test_interval_only_on_real_line():
    with pytest.raises(SpaceError):
        as_set(MetricSpace.euclidean(2), Interval(0, 1))


def test_gap_examples():
    assert gap(R, Interval(0, 1), Interval(2, 3)) == 1
    assert gap(R, 0.5, Interval(0, 1)) == 0
    x = 0.9
    assert gap(R, 1.0, Interval(x / 3, x / 2)) == pytest.approx(0.55, abs=1e-15)


def test_sup_dist_examples():
    assert sup_dist(R, Interval(0, 1), Interval(2, 3)) == 3
    assert sup_dist(R, 1.0, Interval(1 / 4, 1 / 2)) == 0.75
    assert sup_dist(R, Interval(0.2, 0.2), Interval(0.2, 0.2)) == 0


def test_mixed_interval_and_finite_set():
    A = FiniteSet((0.0, 5.0))
    B = Interval(1, 2)
    assert gap(R, A, B) == 1
    assert sup_dist(R, A, B) == 4  # |5 - 1|
    assert sup_dist(R, B, A) == 4


def test_nd_finite_sets():
    sp = MetricSpace.euclidean(2)
    A = FiniteSet(((0, 0), (1, 0)))
    B = FiniteSet(((0, 3), (4, 3)))
    assert gap(sp, A, B) == 3
    assert sup_dist(sp, A, B) == 5


def test_oracle_examples():
    v = sup_dist_oracle(R, Interval(0, 1), Interval(2, 3), 100_000, seed=1)
    assert 3 - 1e-3 <= v <= 3
    assert sup_dist_oracle(R, 0.25, 1.0, 1) == 0.75
    v = sup_dist_oracle(R, Interval(0, 1), Interval(0, 1), 100_000, seed=2)
    assert 1 - 1e-3 <= v <= 1
    with pytest.raises(ValueError):
        sup_dist_oracle(R, 0, 1, 0)


def test_oracle_nd_and_table():
    sp = MetricSpace.euclidean(2)
    A = FiniteSet(((0, 0), (1, 0)))
    B = FiniteSet(((0, 3), (4, 3)))
    assert sup_dist_oracle(sp, A, B, 200, seed=0) == 5
    assert gap_oracle(sp, A, B, 200, seed=0) == 3
    t = MetricSpace.finite_table([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert sup_dist_oracle(t, FiniteSet((0, 1)), FiniteSet((2,)), 100) == 2


@settings(max_examples=200, deadline=None)
@given(reals, reals, reals)
def test_real_line_metric_axioms(p, q, r):
    assert dist(R, p, q) == dist(R, q, p)
    assert dist(R, p, p) == 0
    assert (dist(R, p, q) == 0) == (p == q)
    assert dist(R, p, r) <= dist(R, p, q) + dist(R, q, r) + 1e-9 * (1 + abs(p) + abs(q) + abs(r))


@pytest.mark.parametrize("space", [MetricSpace.euclidean(3), MetricSpace.chebyshev(3)])
def test_nd_metric_axioms(space):
    rng = np.random.default_rng(0)
    for p, q, r in rng.uniform(-10, 10, size=(500, 3, 3)):
        p, q, r = map(tuple, (p, q, r))
        assert dist(space, p, q) == dist(space, q, p)
        assert dist(space, p, p) == 0
        assert dist(space, p, r) <= dist(space, p, q) + dist(space, q, r) + 1e-12


@settings(max_examples=200, deadline=None)
@given(intervals(), intervals(), intervals())
def test_sup_dist_triangle(A, B, C):
    lhs = sup_dist(R, A, C)
    assert lhs <= sup_dist(R, A, B) + sup_dist(R, B, C) + 1e-9 * (1 + lhs)


@settings(max_examples=200, deadline=None)
@given(intervals(), intervals())
def test_gap_below_sup_and_symmetric(A, B):
    assert gap(R, A, B) <= sup_dist(R, A, B)
    assert gap(R, A, B) == gap(R, B, A)
    assert sup_dist(R, A, B) == sup_dist(R, B, A)
    if A.is_singleton and B.is_singleton:
        assert gap(R, A, B) == sup_dist(R, A, B)


@settings(max_examples=300, deadline=None)
@given(intervals(), intervals())
def test_interval_closed_forms_match_enumeration(A, B):
    a, b = (A.lo, A.hi), (B.lo, B.hi)
    assert sup_dist(R, A, B) == corner_sup(a, b)
    assert gap(R, A, B) == corner_gap(a, b)


def test_finite_sets_match_exhaustive():
    rng = np.random.default_rng(5)
    sp = MetricSpace.euclidean(2)
    for _ in range(50):
        A = [tuple(p) for p in rng.uniform(-1, 1, size=(rng.integers(1, 6), 2)).tolist()]
        B = [tuple(p) for p in rng.uniform(-1, 1, size=(rng.integers(1, 6), 2)).tolist()]
        d = sp.dist
        assert sup_dist(sp, FiniteSet(A), FiniteSet(B)) == pairwise_max(d, A, B)
        assert gap(sp, FiniteSet(A), FiniteSet(B)) == pairwise_min(d, A, B)


def test_set_literals():
    assert parse_set_literal("[0.25, 0.5]") == Interval(0.25, 0.5)
    assert parse_set_literal("{1, 2, 3}") == FiniteSet((1.0, 2.0, 3.0))
    for bad in ("[1]", "(0, 1)", "{}", "[a, b]"):
        with pytest.raises(SpaceError):
            parse_set_literal(bad)


def test_values_are_immutable():
    A = Interval(0, 1)
    with pytest.raises(Exception):
        A.lo = 2
