# %% [markdown]
# # Special functions
#
# digamma, trigamma and the inverse digamma used by the estimator,
# checked against a few closed-form values.

# %%
import numpy as np

from betagraph.special import EULER_GAMMA, LN2, digamma, duplication_gap, inverse_digamma, solve_epsilon, trigamma

# %%
print("psi(1)   =", digamma(1.0), " expected", -EULER_GAMMA)
print("psi(1/2) =", digamma(0.5), " expected", -EULER_GAMMA - 2 * LN2)
print("psi'(1)  =", trigamma(1.0), " expected", np.pi ** 2 / 6)

# %% [markdown]
# Inverse digamma is Newton on psi, so the roundtrip should be exact to a few ulps.

# %%
x = np.logspace(-3, 3, 7)
print(np.column_stack([x, inverse_digamma(digamma(x))]))

# %% [markdown]
# psi(2x) - psi(x) falls from infinity down to ln 2, so each M > ln 2 picks a unique starting point.

# %%
for M in (0.7, 1.0, 2 * LN2, 5.0):
    eps = solve_epsilon(M)
    print(f"M = {M:.4f}  eps = {eps:.6f}  gap(eps) = {duplication_gap(eps):.6f}")
