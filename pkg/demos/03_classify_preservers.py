# %% [markdown]
# # Recovering the form of a spectrum-preserving map
#
# A linear map on d x d matrices that keeps every spectrum is either
# X -> S^-1 X S or X -> S^-1 X^T S. Given only its d^2 x d^2 matrix we
# recover which one it is, and S up to a scalar.

# %%
import numpy as np

from ence import (
    check_det_trace,
    check_ep_on_density,
    check_unital,
    classify_preserver,
    random_invertible,
    superop_transpose_conjugation,
)
from ence.preserver import scalar_calibration
from ence.maps import Superoperator

# %%
s = random_invertible(3, seed=11, max_cond=50)
l = superop_transpose_conjugation(s)
form = classify_preserver(l)
c = scalar_calibration(form.s, s)
print(form.kind.value, "residual", form.residual)
print("S error after calibration:", np.linalg.norm(c * form.s - s) / np.linalg.norm(s))

# %% [markdown]
# The sampling checks agree: the map is unital and keeps determinant and trace.

# %%
rep = check_ep_on_density(l, 200, seed=0)
print(rep.ep_on_samples, rep.unital, check_unital(l), check_det_trace(l))

# %% [markdown]
# A small random kick breaks everything at once.

# %%
rng = np.random.default_rng(0)
g = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
bad = Superoperator(3, l.mat + 1e-3 * g / np.linalg.norm(g))
print(classify_preserver(bad).kind.value, check_ep_on_density(bad, 50, 0).ep_on_samples)
