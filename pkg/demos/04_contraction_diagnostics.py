# %% [markdown]
# # Convergence diagnostics
#
# Starting from eps * 1 the iterates climb monotonically to the estimate, and
# the step sizes shrink by roughly the L1 norm of the Jacobian at the solution.

# %%
import numpy as np

from betagraph import EstimatorConfig, estimate, generate_graph, sufficient_stats
from betagraph.estimator import init_params, iterate_step, jacobian_column_sums

# %%
rng = np.random.default_rng(3)
a, b = rng.uniform(1, 5, 40), rng.uniform(1, 5, 40)
stats = sufficient_stats(generate_graph(a, b, rng))
report = estimate(stats, EstimatorConfig(record_trace=True))

trace = np.array(report.trace)
ratios = trace[1:] / trace[:-1]
print("eps =", round(report.epsilon, 4), " iterations =", report.iterations)
print("tail step ratios:", ratios[-5:].round(4))
print("jacobian L1 norm:", round(report.jacobian_l1, 4))

# %% [markdown]
# Coordinates never decrease along the trajectory.

# %%
theta = init_params(stats)
drops = 0
for _ in range(50):
    nxt = iterate_step(theta, stats)
    drops += int(np.sum(nxt.as_vector() < theta.as_vector()))
    theta = nxt
print("coordinate decreases in the first 50 steps:", drops)

# %%
sums = jacobian_column_sums(report.theta_hat)
print("largest column sums:", np.sort(sums)[-3:].round(4))
