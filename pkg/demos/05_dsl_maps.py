# %% [markdown]
# Writing set-valued maps as text
#
# Maps are written as guarded clauses (`if guard -> set`); the first match wins.

# %%
from weakcontract.dsl import ParseError, check_coverage, parse, to_source

src = "if x == 1 -> {1}; otherwise -> [x/3, x/2]"
T = parse(src)
for x in (0.0, 0.3, 0.9, 1.0):
    print(x, T(x))

print(to_source(T))

# %% [markdown]
# A bare set expression is shorthand for a single `otherwise` clause.

# %%
print(parse("[0, x/5]")(0.5))

# %%
for bad in ("otherwise -> [x/4,", "if x < 0 -> {0}; otherwise -> {1}; if x > 2 -> {2}"):
    try:
        parse(bad)
    except ParseError as err:
        print(err)

# %%
gaps = check_coverage(parse("if x < 0.5 -> {0}"), 0.0, 1.0, n=11)
print("uncovered:", gaps)
