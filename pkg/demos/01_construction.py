# %% [markdown]
# # The bag construction
#
# Each bag is labelled by a subset of {1, ..., n-1} of size floor((n-1)/2) and
# holds m vertices. Arcs inside a bag use colour n; an arc into the bag of P'
# from the bag of P uses a colour from P' - P.

# %%
from absorbset import ConstructionParams, enumerate_family, generate, serialize, validate_structure

n, m = 5, 2
print("family:", enumerate_family(n))

# %%
t, layout = generate(ConstructionParams(n, m, seed=12345))
print(t, "with", layout.p, "bags of", layout.m)
print(serialize(t, layout)[:200], "...")

# %% [markdown]
# The colour rule makes the colours entering a bag, leaving it, and used inside
# it pairwise disjoint. `validate_structure` checks exactly that.

# %%
print(validate_structure(t, layout).summary())

# %% [markdown]
# Consequence: for every colour below n, no two arcs of that colour chain.

# %%
for c in range(1, n):
    adj = t.colour_subgraph(c).astype(int)
    print(f"colour {c}: {adj.sum():3d} arcs, paths of length 2: {int((adj @ adj).sum())}")
