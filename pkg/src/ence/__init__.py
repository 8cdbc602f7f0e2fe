"""Eigenvalue-change detection of bipartite nonclassical correlation.

Submodules:

``matcore``    tensor products, partial transpose/trace, spectra
``states``     state families and seeded random ensembles
``maps``       superoperators, partial application of a map
``preserver``  eigenvalue-preserver checks and structure recovery
``detect``     partial-transpose and commutation detectors
``matfile``    JSON matrix files
``cli``        the ``ence`` command
"""

from .detect import chen_test, ncc_measure, pcc_test, pt_detect
from .maps import (
    Superoperator,
    apply,
    apply_partial,
    compose,
    superop_conjugation,
    superop_identity,
    superop_transpose,
    superop_transpose_conjugation,
)
from .matcore import (
    BipartiteDims,
    cartesian_decompose,
    eig_general,
    eig_herm,
    partial_trace,
    partial_transpose,
    spectra_equal,
    spectral_deviation,
    tensor,
)
from .preserver import (
    Branch,
    MapKind,
    check_det_trace,
    check_ep_on_density,
    check_unital,
    classify_preserver,
    verify_main_theorem,
)
from .states import (
    OnewccSpec,
    PccSpec,
    bell_state,
    onewcc_state,
    pcc_state,
    random_density,
    random_invertible,
    random_onewcc_spec,
    random_pcc_spec,
    random_unitary,
    rho_p,
)

__version__ = "0.1.0"
