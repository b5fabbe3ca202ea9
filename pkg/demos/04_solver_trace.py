# %% [markdown]
# Alternating iteration toward a common end point
#
# Starting at x0 we alternate between T and S and pick a point of each image
# set. The gap between consecutive images should never grow.

# %%
import numpy as np

from weakcontract.fixtures import example1_gauges, example1_pair, example2_gauges, example2_pair
from weakcontract.solver import (
    STRATEGIES, SelectionStrategy, check_monotone, iterate, multistart_uniqueness_probe, solve,
    tail_bound,
)

pair = example1_pair()
tr = iterate(pair, 1.0, SelectionStrategy("sup-endpoint"))
print(tr.iterates[:8])
print("steps:", tr.iterations_used, "converged:", tr.converged)
print(tr.to_csv().splitlines()[:4])

# %%
for kind in STRATEGIES:
    t = iterate(pair, 0.7, SelectionStrategy(kind, seed=3))
    print(f"{kind:13s} final={t.final:.3e} steps={t.iterations_used:3d} monotone={check_monotone(t)[0]}")

# %% [markdown]
# A tail estimate from the last gap, with k taken from the phi gauge.

# %%
print(tail_bound(tr, 0.25, example1_gauges().f))

# %%
res = solve(pair, example1_gauges(), 0.3, SelectionStrategy("nearest"))
print(res.z, res.is_endpoint, res.delta_T, res.delta_S)

# %% [markdown]
# Multistart: the first pair funnels every start to 0; the second pair has
# two end points, 0 and 1.

# %%
starts = np.linspace(0, 1, 11)
print(multistart_uniqueness_probe(pair, example1_gauges(), starts).endpoints)
print(multistart_uniqueness_probe(example2_pair(), example2_gauges(), [0.9, 1.0]).endpoints)
