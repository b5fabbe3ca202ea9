# %% [markdown]
# Certifying the contraction condition on a grid
#
# `certify` evaluates the residual rhs - lhs at every grid pair and keeps the
# worst offenders. The first pair passes everywhere on the unit square.

# %%
import time

from weakcontract.contraction import Sampler, certify, residual
from weakcontract.fixtures import (
    EXAMPLE2_INTERIOR, UNIT, example1_gauges, example1_pair, example2_gauges, example2_pair,
)

t0 = time.perf_counter()
rep = certify(example1_pair(), example1_gauges(), UNIT, Sampler("grid", 201))
print(rep.verdict, rep.min_residual, rep.argmin, f"{time.perf_counter() - t0:.2f}s")

# %% [markdown]
# The second pair has a jump at x = 1 and the condition fails near it.

# %%
pair, gauges = example2_pair(), example2_gauges()
r = residual(pair, gauges, 0.9, 1.0)
print(r)

rep = certify(pair, gauges, UNIT, Sampler("grid", 201))
print(rep.verdict, rep.n_violations, "violations; worst:")
for v in rep.violations[:5]:
    print(f"  ({v.x:.3f}, {v.y:.3f})  residual {v.residual:+.4f}")

# %% [markdown]
# Staying away from the jump, the same pair certifies.

# %%
rep = certify(pair, gauges, EXAMPLE2_INTERIOR, Sampler("grid", 201))
print(rep.verdict, rep.min_residual)

# %%
rep = certify(pair, gauges, UNIT, Sampler("random", count=2000, seed=7))
print(rep.dumps()[:400])
