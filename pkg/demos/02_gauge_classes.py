# %% [markdown]
# Probing gauge functions
#
# Each gauge class is checked numerically on a log-spaced grid. A failed probe
# comes back with the condition that broke and a witness.

# %%
from weakcontract.gauge import (
    GaugeTriple, check_omega, check_phi, check_psi, linear, log1p, power, quad_scale, zero,
)

for name, g in [("linear(0.3)", linear(0.3)), ("log1p", log1p()), ("power(2)", power(2)), ("zero", zero())]:
    for label, check in (("phi", check_phi), ("omega", check_omega)):
        r = check(g)
        print(f"{name:12s} {label:6s} passed={r.passed!s:5s} failed={r.failed_condition} witness={r.witness}")

# %% [markdown]
# t**2 is not subadditive, and t**2 / t tends to zero, so it fails both probes.
# The witness pair can be checked by hand:

# %%
x, y = check_omega(power(2)).witness
print((x + y) ** 2, ">", x**2 + y**2)

# %%
print(check_psi(quad_scale(2)))

# %% [markdown]
# A triple evaluates the right-hand side f(M) - phi(f(M)) + psi(N).

# %%
gauges = GaugeTriple(linear(2.0), linear(0.25), zero())
print(gauges.rhs(0.5, 0.1))
print(gauges.to_json())
