# %% [markdown]
# # Spotting correlations with the partial transpose
#
# A state with a product eigenbasis keeps its spectrum when we transpose
# one side. Anything else may not, and when the spectrum moves we know the
# state carries correlations that no product basis can hold.

# %%
import numpy as np

from ence import bell_state, ncc_measure, pcc_state, pt_detect, random_pcc_spec, rho_p

# %% [markdown]
# Start with a classical-classical state on 2x3: random weights over
# random local bases.

# %%
rho = pcc_state(random_pcc_spec(2, 3, seed=1))
r = pt_detect(rho, (2, 3))
print("detected:", r.detected, " deviation:", r.deviation)

# %% [markdown]
# The Bell state is the opposite extreme. Its partial transpose is the swap
# operator over two, which has a negative eigenvalue.

# %%
r = pt_detect(bell_state(), (2, 2))
print(np.round(r.spectrum_before.real, 12))
print(np.round(r.spectrum_after.real, 12))
print("deviation:", r.deviation, " measure:", ncc_measure(bell_state(), (2, 2)))

# %% [markdown]
# Mixing the Bell state with white noise: the shift in spectrum scales
# linearly with the Bell fraction p, so even p = 0.01 is seen.

# %%
for p in (0.01, 0.1, 0.5, 1.0):
    r = pt_detect(rho_p(p), (2, 2))
    print(f"p={p:<5} detected={r.detected}  deviation={r.deviation:.4f}  measure={ncc_measure(rho_p(p), (2, 2)):.4f}")
