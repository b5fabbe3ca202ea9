# %% [markdown]
# Gap and sup-distance between bounded sets
#
# The two set functionals behind everything else: the gap (closest approach)
# and the sup-distance (farthest pair). On the real line both have closed
# forms on intervals; the Monte-Carlo oracles bracket them from the right side.

# %%
import numpy as np

from weakcontract.metric import FiniteSet, Interval, MetricSpace, gap, gap_oracle, sup_dist, sup_dist_oracle

R = MetricSpace.real_line()
A, B = Interval(0.0, 1.0), Interval(2.0, 3.0)
print("gap      ", gap(R, A, B))
print("sup_dist ", sup_dist(R, A, B))

# %% [markdown]
# A point is just a singleton set, and the sup-distance of a set with itself
# is its diameter.

# %%
print(sup_dist(R, 1.0, Interval(0.25, 0.5)))
print(sup_dist(R, A, A))

# %%
for n in (10, 100, 10_000):
    print(n, sup_dist_oracle(R, A, B, n, seed=0), gap_oracle(R, A, B, n, seed=0))

# %% [markdown]
# Finite sets work in any of the supported spaces.

# %%
plane = MetricSpace.euclidean(2)
P = FiniteSet(((0, 0), (1, 0)))
Q = FiniteSet(((0, 3), (4, 3)))
print(gap(plane, P, Q), sup_dist(plane, P, Q))

rng = np.random.default_rng(1)
pts = [tuple(p) for p in rng.uniform(-1, 1, (5, 2))]
print("diameter of a random cloud:", sup_dist(plane, FiniteSet(pts), FiniteSet(pts)))
