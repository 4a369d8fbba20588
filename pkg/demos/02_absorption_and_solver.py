# %% [markdown]
# # Absorption and minimum absorbing sets
#
# x is absorbed by y when a monochromatic path runs from x to y. An absorbing
# set is a cover of V by the coverage sets A(y) = {y} + {x absorbed by y}.

# %%
from absorbset import (
    ConstructionParams,
    absorbed_by,
    absorbed_by_construction,
    build,
    generate,
    greedy_upper_bound,
    is_absorbing,
    min_absorbing_brute,
    min_absorbing_set_exact,
)

rainbow = build(3, 3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)])
rel = absorbed_by(rainbow)
print("absorbed pairs:", sorted(rel.pairs()))
print("{1, 2} absorbing:", is_absorbing(rel, {1, 2}))
print(min_absorbing_set_exact(rel))

# %% [markdown]
# On construction instances the relation is just the direct arcs plus colour-n
# reachability inside bags; the general closure agrees.

# %%
t, layout = generate(ConstructionParams(4, 6, seed=3))
fast, general = absorbed_by_construction(t, layout), absorbed_by(t)
print("fast path == general:", fast == general)

# %%
print("greedy:", greedy_upper_bound(general))
print("exact: ", min_absorbing_set_exact(general))
print("brute: ", min_absorbing_brute(general))
