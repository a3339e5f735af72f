# %% [markdown]
# # Parameter recovery
#
# Draw a, b uniformly on [1, 5] for 100 vertices, sample one weighted graph and
# estimate the parameters back from it.

# %%
import numpy as np

from betagraph import EstimatorConfig, GeneratorConfig, recovery_experiment

# %%
res = recovery_experiment(GeneratorConfig(n=100, param_low=1.0, param_high=5.0, seed=0), EstimatorConfig(record_trace=True))
r = res.report
print(f"iterations {r.iterations}, residual {r.final_residual:.2e}, jacobian L1 {r.jacobian_l1:.3f}")
print(f"MSE a = {res.mse_a:.4f}, MSE b = {res.mse_b:.4f}")

# %% [markdown]
# Estimates against the truth, first few vertices.

# %%
print(np.column_stack([res.true_params.a, res.theta_hat.a])[:8].round(3))

# %% [markdown]
# The error shrinks as the graph grows since every vertex gets more edges.

# %%
for n in (10, 25, 50, 100):
    mse = [recovery_experiment(GeneratorConfig(n, 1.0, 5.0, s)).mse_a for s in range(5)]
    print(n, round(float(np.median(mse)), 4))
