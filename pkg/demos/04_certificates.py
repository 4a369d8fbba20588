# %% [markdown]
# # Certified hard instances
#
# `hunt` samples seeds until the exact solver shows no absorbing set of size
# p - 1 exists. `verify` regenerates the instance from the seed, checks the
# digest and enumerates every smaller candidate set without the solver.

# %%
from absorbset import hunt, verify

for n, m in [(2, 3), (3, 10), (4, 35)]:
    report = hunt(n, m, seed_start=1, max_trials=10)
    print(report.summary())
    cert = report.certificate
    print(cert.to_text())
    print("verified:", verify(cert))
