# %% [markdown]
# # Applying a preserver to one side
#
# When a spectrum-preserving map acts on B alone, the spectrum of the
# bipartite state lands in one of two places: the original spectrum, or the
# spectrum of the partial transpose. The similarity part drops out.

# %%
from ence import (
    random_density,
    random_invertible,
    superop_conjugation,
    superop_transpose_conjugation,
    verify_main_theorem,
)
from ence.maps import apply_partial
from ence.matcore import eig_general, eig_herm, partial_transpose, spectral_deviation

# %%
rho = random_density(6, seed=2)
s = random_invertible(3, seed=3)
out = apply_partial(superop_transpose_conjugation(s), rho, (2, 3))
print("vs rho:   ", spectral_deviation(eig_general(out), eig_herm(rho).spectrum))
print("vs rho^TB:", spectral_deviation(eig_general(out), eig_herm(partial_transpose(rho, (2, 3))).spectrum))

# %%
for name, l in (("similarity", superop_conjugation(s)), ("transpose-similarity", superop_transpose_conjugation(s))):
    r = verify_main_theorem(l, d_a=2, trials=50, seed=0)
    print(f"{name:22s} {r.branch.value:16s} max deviation {r.max_deviation:.1e}")
