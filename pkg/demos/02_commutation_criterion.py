# %% [markdown]
# # Where linear detection goes blind
#
# Take a state that is classical on B only: a mixture of sigma_j (x) |j><j|
# with sigma_j that do not commute. No linear map applied to B can change
# its spectrum, yet it has no product eigenbasis. The commutation test on
# the blocks of rho separates the two situations.

# %%
import numpy as np

from ence import bell_state, chen_test, onewcc_state, pcc_test, pt_detect, random_onewcc_spec

# %%
spec = random_onewcc_spec(3, 3, seed=4)
rho = onewcc_state(spec)
comm = spec.sigmas[0] @ spec.sigmas[1] - spec.sigmas[1] @ spec.sigmas[0]
print("sigma_0, sigma_1 commutator size:", np.abs(comm).max())

# %%
print("PT on B fires:", pt_detect(rho, (3, 3), "B").detected)
print("commutation test, B classical:", chen_test(rho, (3, 3), "B").passes)
print("commutation test, A classical:", chen_test(rho, (3, 3), "A").passes)
print("product eigenbasis:", pcc_test(rho, (3, 3)))

# %% [markdown]
# The Bell state fails on both sides; the largest commutator between blocks
# is exactly 1/4.

# %%
r = chen_test(bell_state(), (2, 2), "B")
print(r.passes, r.max_commutator_norm, r.pairs_tested)
