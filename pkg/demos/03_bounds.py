# %% [markdown]
# # Probability bounds
#
# For fixed p the union bound C(mp, p-1)(1 - 2^-(p-1))^m eventually drops below
# one; the first such m certifies that a hard instance exists. The relaxed
# closed form is weaker and needs a larger m.

# %%
from absorbset import family_size, minimal_m, relaxed_bound_log, stirling_ratio, union_bound_log

print(f"{'n':>3} {'p':>4} {'m (union)':>10} {'m (relaxed)':>12}")
for n in range(2, 8):
    p = family_size(n)
    print(f"{n:>3} {p:>4} {minimal_m(p, 'union'):>10} {minimal_m(p, 'relaxed'):>12}")

# %%
p = 3
for m in (10, 20, 28, 29, 40, 60):
    print(f"m={m:3d}  log union={union_bound_log(p, m):9.4f}  log relaxed={relaxed_bound_log(p, m):9.4f}")

# %% [markdown]
# p(n) grows like 2^n / sqrt(n); the normalised ratio settles near 1/sqrt(2 pi).

# %%
for n in (5, 10, 20, 40, 60):
    print(n, round(stirling_ratio(n), 4))
