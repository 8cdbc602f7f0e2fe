"""Analysis of linear eigenvalue-preserving maps.

A linear map that preserves the spectrum of every density matrix is
either ``A -> S^{-1} A S`` or ``A -> S^{-1} A^T S`` for some invertible
``S``. The functions here check the behavioural consequences on sampled
states (unitality, determinant and trace preservation, spectrum
preservation), recover ``S`` from a superoperator, and check that
``I (x) map`` changes spectra of bipartite states exactly like the
identity or the partial transpose does.

Sampling-based verdicts mean "no counterexample found among
``samples_tested`` states"; they are not proofs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .maps import MAX_COND, Superoperator, apply, apply_partial, commutation_matrix
from .matcore import (
    TOL_SPECTRA,
    BipartiteDims,
    eig_general,
    eig_herm,
    partial_transpose,
    spectra_equal,
    spectral_deviation,
)
from .states import child_seeds, random_density

TOL_CLASSIFY = 1e-8
RANK_ONE_RATIO = 1e-8


class NotEPError(ValueError):
    """A map failed the eigenvalue-preservation precondition."""


class MapKind(str, enum.Enum):
    SIMILARITY = "Similarity"
    TRANSPOSE_SIMILARITY = "TransposeSimilarity"
    NOT_EP = "NotEP"


class Branch(str, enum.Enum):
    IDENTITY = "IdentityBranch"
    TRANSPOSE = "TransposeBranch"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class MapForm:
    """Result of :func:`classify_preserver`.

    ``s`` is normalized to ``|det s| = 1`` with its first nonzero entry
    real and positive; it is ``None`` when ``kind`` is ``NOT_EP``.
    """

    kind: MapKind
    s: np.ndarray | None
    residual: float


@dataclass(frozen=True)
class EpReport:
    unital: bool
    det_trace_preserving: bool
    ep_on_samples: bool
    worst_spectrum_deviation: float
    samples_tested: int


@dataclass(frozen=True)
class MainTheoremReport:
    branch: Branch
    trials: int
    max_deviation: float
    identity_deviation: float
    transpose_deviation: float


def sample_states(d: int, samples: int, seed):
    """Yield ``samples`` random density matrices of size ``d``.

    Half are full rank, a quarter pure, a quarter of rank ``ceil(d/2)``;
    low-rank states exercise degenerate eigenvalues.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ranks = (d, d, 1, math.ceil(d / 2))
    for k, ss in enumerate(child_seeds(seed, samples)):
        yield random_density(d, ranks[k % 4], ss)


def check_unital(l: Superoperator, tol: float = TOL_SPECTRA) -> bool:
    eye = np.eye(l.d)
    return bool(np.max(np.abs(apply(l, eye) - eye)) <= tol)


def _det_trace_kept(image: np.ndarray, rho: np.ndarray, tol: float) -> bool:
    return bool(
        abs(np.trace(image) - np.trace(rho)) <= tol
        and abs(np.linalg.det(image) - np.linalg.det(rho)) <= tol
    )


def check_det_trace(l: Superoperator, samples: int = 200, seed=0, tol: float = TOL_SPECTRA) -> bool:
    """True if determinant and trace of every sampled state survive the map."""
    return all(_det_trace_kept(apply(l, rho), rho, tol) for rho in sample_states(l.d, samples, seed))


def check_ep_on_density(l: Superoperator, samples: int = 200, seed=0, tol: float = TOL_SPECTRA) -> EpReport:
    """Compare the spectrum of ``l(rho)`` with that of ``rho`` on sampled states.

    Images need not be Hermitian, so their spectra come from the general
    eigensolver. The report also carries the unitality verdict and the
    determinant/trace verdict on the same samples that
    :func:`check_det_trace` would draw for this seed.
    """
    worst = 0.0
    ep_ok = det_ok = True
    for rho in sample_states(l.d, samples, seed):
        image = apply(l, rho)
        before = eig_herm(rho).spectrum
        after = eig_general(image)
        worst = max(worst, spectral_deviation(before, after))
        ep_ok = ep_ok and spectra_equal(before, after, tol)
        det_ok = det_ok and _det_trace_kept(image, rho, tol)
    return EpReport(
        unital=check_unital(l, tol),
        det_trace_preserving=det_ok,
        ep_on_samples=ep_ok,
        worst_spectrum_deviation=worst,
        samples_tested=samples,
    )


def rearrange(mat: np.ndarray, d: int) -> np.ndarray:
    """Reshuffle a ``d^2 x d^2`` matrix so Kronecker factors become an outer product.

    If ``mat = X (x) Y`` then ``rearrange(mat)[(i,j),(k,l)] = X[i,j] Y[k,l]``,
    a rank-one matrix.
    """
    return np.asarray(mat).reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def nearest_kronecker(mat: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Best Frobenius approximation ``mat ~ X (x) Y`` with square ``d x d`` factors.

    Returns ``X``, ``Y`` and the ratio of the second to the first singular
    value of the rearranged matrix (zero for an exact Kronecker product).
    """
    u, sv, vh = np.linalg.svd(rearrange(mat, d))
    if sv[0] == 0:
        return np.zeros((d, d)), np.zeros((d, d)), np.inf
    root = np.sqrt(sv[0])
    x = root * u[:, 0].reshape(d, d)
    y = root * vh[0].reshape(d, d)
    ratio = sv[1] / sv[0] if sv.size > 1 else 0.0
    return x, y, float(ratio)


def normalize_gauge(s: np.ndarray) -> np.ndarray:
    """Rescale ``s`` to unit determinant modulus with first nonzero entry real-positive."""
    d = s.shape[0]
    s = s / abs(np.linalg.det(s)) ** (1.0 / d)
    flat = s.ravel()
    big = np.flatnonzero(np.abs(flat) > 1e-12 * np.max(np.abs(flat)))
    phase = flat[big[0]] / abs(flat[big[0]])
    return s / phase


def scalar_calibration(s_hat: np.ndarray, s: np.ndarray) -> complex:
    """The complex ``c`` minimizing ``||c * s_hat - s||_F``."""
    return complex(np.vdot(s_hat, s) / np.vdot(s_hat, s_hat))


def _fit_similarity(mat: np.ndarray, d: int):
    # mat ~ S^T (x) S^{-1}: the first factor is S^T up to a scalar, which cancels
    x, _, ratio = nearest_kronecker(mat, d)
    cond = np.linalg.cond(x)
    if not np.isfinite(cond) or cond > MAX_COND:
        return None, np.inf, ratio
    s = x.T
    candidate = np.kron(s.T, np.linalg.inv(s))
    residual = np.linalg.norm(mat - candidate) / np.linalg.norm(candidate)
    return s, float(residual), ratio


def classify_preserver(l: Superoperator, tol: float = TOL_CLASSIFY, rank_tol: float = RANK_ONE_RATIO) -> MapForm:
    """Recover ``S`` such that ``l`` is ``A -> S^{-1} A S`` or ``A -> S^{-1} A^T S``.

    The similarity form has superoperator ``S^T (x) S^{-1}``, a Kronecker
    product, so the rearranged matrix must have rank one. Its dominant
    singular pair gives the factors; the fit is accepted when the second
    singular value is at most ``rank_tol`` times the first and the
    relative Frobenius residual ``||l - S^T (x) S^{-1}|| / ||S^T (x) S^{-1}||``
    is at most ``tol``. The same test is then run on ``l`` composed with
    the transpose. If neither fits, ``NOT_EP`` is returned with the smaller
    residual.
    """
    d = l.d
    fits = []
    for kind, mat in (
        (MapKind.SIMILARITY, l.mat),
        (MapKind.TRANSPOSE_SIMILARITY, l.mat @ commutation_matrix(d)),
    ):
        s, residual, ratio = _fit_similarity(mat, d)
        if ratio <= rank_tol and residual <= tol:
            return MapForm(kind, normalize_gauge(s), residual)
        fits.append(max(residual, ratio))
    return MapForm(MapKind.NOT_EP, None, min(fits))


def verify_main_theorem(
    l: Superoperator,
    d_a: int,
    trials: int = 50,
    seed=0,
    tol: float = TOL_SPECTRA,
    ep_samples: int = 50,
) -> MainTheoremReport:
    """Check that ``I (x) l`` acts on spectra like the identity or like the partial transpose.

    For each of ``trials`` random states on ``d_a x l.d`` the spectrum of
    ``(I (x) l) rho`` is compared with those of ``rho`` and of its partial
    transpose on B. The identity branch is reported when every trial
    matches ``rho``, the transpose branch when every trial matches the
    partial transpose, and ``VIOLATED`` otherwise.

    Raises :class:`NotEPError` if ``l`` fails :func:`check_ep_on_density`
    on ``ep_samples`` states.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seeds = child_seeds(seed, 2)
    ep = check_ep_on_density(l, ep_samples, seeds[0], tol)
    if not ep.ep_on_samples:
        raise NotEPError(
            f"map is not eigenvalue-preserving on density matrices "
            f"(worst deviation {ep.worst_spectrum_deviation:.3g} over {ep.samples_tested} samples)"
        )
    dims = BipartiteDims(d_a, l.d)
    id_dev = tr_dev = 0.0
    id_ok = tr_ok = True
    for rho in sample_states(dims.total, trials, seeds[1]):
        image = eig_general(apply_partial(l, rho, dims, "B"))
        plain = eig_herm(rho).spectrum
        pt = eig_herm(partial_transpose(rho, dims, "B")).spectrum
        d1, d2 = spectral_deviation(image, plain), spectral_deviation(image, pt)
        id_dev, tr_dev = max(id_dev, d1), max(tr_dev, d2)
        id_ok = id_ok and spectra_equal(image, plain, tol)
        tr_ok = tr_ok and spectra_equal(image, pt, tol)
    if id_ok:
        branch, dev = Branch.IDENTITY, id_dev
    elif tr_ok:
        branch, dev = Branch.TRANSPOSE, tr_dev
    else:
        branch, dev = Branch.VIOLATED, min(id_dev, tr_dev)
    return MainTheoremReport(branch, trials, dev, id_dev, tr_dev)
