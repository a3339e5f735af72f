# %% [markdown]
# # From flow counts to parameters
#
# The bundled 34x34 matrix holds synthetic integer flows between labelled
# vertices. Counts are mapped into (0, 1) with (x + 1/2) / (max + 1) before
# estimation.

# %%
import numpy as np

from betagraph import estimate, normalize_counts, sufficient_stats
from betagraph.cli import run_diagnostics
from betagraph.datasets import load_synthetic_counts

# %%
raw = load_synthetic_counts()
W = normalize_counts(raw)
print(raw.n, "vertices, weights in", W.w[W.w > 0].min().round(5), "..", W.w.max().round(5))

# %%
report = estimate(sufficient_stats(W))
order = np.argsort(report.theta_hat.a)[::-1]
for i in order[:5]:
    print(f"{raw.labels[i]}  a = {report.theta_hat.a[i]:.3f}  b = {report.theta_hat.b[i]:.3f}")

# %% [markdown]
# Same checks as `betagraph validate`.

# %%
values, failures = run_diagnostics(W)
for k, v in values.items():
    print(k, v)
print("failures:", failures or "none")
