"""Dense complex linear algebra for bipartite density matrices.

Conventions used throughout the package:

* Matrices are plain 2-D complex :class:`numpy.ndarray` objects.
* In a bipartite matrix on ``d_a * d_b`` dimensions, subsystem A is the
  major (slow) index: row ``i * d_b + k`` corresponds to ``|i>_A |k>_B``.
  This is the ordering produced by :func:`numpy.kron`.
* Spectra are 1-D complex arrays in canonical order: descending real part,
  ties broken by descending imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-9
TOL_SPECTRA = 1e-8
TOL_RECON = 1e-9

SIDES = ("A", "B")


class BipartiteDims(NamedTuple):
    """Local dimensions ``(d_a, d_b)`` of a bipartite system."""

    d_a: int
    d_b: int

    @property
    def total(self) -> int:
        return self.d_a * self.d_b

    def swapped(self) -> "BipartiteDims":
        return BipartiteDims(self.d_b, self.d_a)

    def check(self, mat: np.ndarray) -> None:
        """Raise ``ValueError`` unless ``mat`` is square of size ``d_a * d_b``."""
        if self.d_a < 1 or self.d_b < 1:
            raise ValueError(f"local dimensions must be positive, got {tuple(self)}")
        if mat.shape != (self.total, self.total):
            raise ValueError(
                f"matrix of shape {mat.shape} does not match dims "
                f"{self.d_a}x{self.d_b} (expected {self.total}x{self.total})"
            )


def as_dims(dims) -> BipartiteDims:
    if isinstance(dims, BipartiteDims):
        return dims
    d_a, d_b = dims
    return BipartiteDims(int(d_a), int(d_b))


def check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return side


def as_cmatrix(m) -> np.ndarray:
    """Return ``m`` as a square complex array with finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(m))))


def is_hermitian(m: np.ndarray, tol: float = TOL_HERM) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * _scale(m))


def check_density(
    rho,
    tol_herm: float = TOL_HERM,
    tol_trace: float = TOL_TRACE,
    tol_psd: float = TOL_PSD,
) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises ``ValueError`` naming the first violated invariant
    (Hermiticity, unit trace, positive semidefiniteness).
    """
    rho = as_cmatrix(rho)
    if not is_hermitian(rho, tol_herm):
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol_trace * _scale(rho):
        raise ValueError(f"density matrix trace is {tr.real:.6g}, expected 1")
    lo = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
    if lo < -tol_psd:
        raise ValueError(f"density matrix has negative eigenvalue {lo:.3g}")
    return rho


def is_density(rho, **tols) -> bool:
    try:
        check_density(rho, **tols)
    except ValueError:
        return False
    return True


def tensor(a, b) -> np.ndarray:
    """Kronecker product with ``a`` on the major index."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def _blocks(rho: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    # axes: (i, k, i', l) for rho[(i,k),(i',l)]
    return rho.reshape(dims.d_a, dims.d_b, dims.d_a, dims.d_b)


def partial_transpose(rho, dims, side: str = "B") -> np.ndarray:
    """Transpose one tensor factor of a bipartite matrix.

    For ``side="B"`` every ``d_b x d_b`` block ``rho[(i,:),(i',:)]`` is
    replaced by its transpose; ``side="A"`` transposes the block grid
    instead.
    """
    rho = as_cmatrix(rho)
    dims = as_dims(dims)
    dims.check(rho)
    t = _blocks(rho, dims)
    if check_side(side) == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return t.reshape(dims.total, dims.total)


def partial_trace(rho, dims, side: str = "B") -> np.ndarray:
    """Trace out subsystem ``side`` and return the reduced matrix on the other."""
    rho = as_cmatrix(rho)
    dims = as_dims(dims)
    dims.check(rho)
    t = _blocks(rho, dims)
    if check_side(side) == "B":
        return np.einsum("ikjk->ij", t)
    return np.einsum("ikil->kl", t)


def canonical_order(values, tie_tol: float = 1e-12) -> np.ndarray:
    """Indices that put ``values`` in canonical spectrum order.

    Descending real part, then descending imaginary part. Real parts within
    ``tie_tol * max(1, max|v|)`` of their neighbour count as equal, so
    round-off cannot separate a conjugate pair.
    """
    v = np.asarray(values, dtype=complex).ravel()
    if v.size == 0:
        return np.arange(0)
    by_real = np.argsort(-v.real, kind="stable")
    gap = tie_tol * max(1.0, float(np.max(np.abs(v))))
    cluster = np.concatenate(([0], np.cumsum(np.diff(-v.real[by_real]) > gap)))
    return by_real[np.lexsort((-v.imag[by_real], cluster))]


def canonical_sort(values, tie_tol: float = 1e-12) -> np.ndarray:
    v = np.asarray(values, dtype=complex).ravel()
    return v[canonical_order(v, tie_tol)]


@dataclass(frozen=True)
class EigSystem:
    """Eigenvalues with right (and optionally left) eigenvectors as columns."""

    spectrum: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray | None = None


def eig_herm(h, tol_herm: float = TOL_HERM) -> EigSystem:
    """Eigendecomposition of a Hermitian matrix.

    Returns the real spectrum in descending order (stored as complex for
    uniformity with :func:`eig_general`) with orthonormal eigenvectors in
    matching column order.
    """
    h = as_cmatrix(h)
    if not is_hermitian(h, tol_herm):
        raise ValueError("eig_herm requires a Hermitian matrix")
    h = (h + h.conj().T) / 2
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"Hermitian eigensolver failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return EigSystem(spectrum=w[order].astype(complex), right_vectors=v[:, order])


def eig_general(m) -> np.ndarray:
    """Eigenvalues of an arbitrary square matrix with algebraic multiplicity.

    Uses LAPACK's Schur-based dense solver. No eigenvectors are formed, so
    defective matrices are handled without special cases.
    """
    m = as_cmatrix(m)
    try:
        w = scipy.linalg.eigvals(m, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"general eigensolver failed: {exc}") from exc
    return canonical_sort(w)


def eig_biorthogonal(m) -> EigSystem:
    """Eigenvalues with a biorthogonal pair of left/right eigenvector systems.

    Only meaningful for diagonalizable ``m``. Columns are scaled so that
    ``left_vectors.conj().T @ right_vectors`` is the identity.
    """
    m = as_cmatrix(m)
    w, vl, vr = scipy.linalg.eig(m, left=True, right=True)
    overlaps = np.einsum("ij,ij->j", vl.conj(), vr)
    if np.any(np.abs(overlaps) < 1e-12):
        raise np.linalg.LinAlgError("matrix is defective or nearly so")
    vl = vl / overlaps.conj()
    order = canonical_order(w)
    return EigSystem(spectrum=w[order], right_vectors=vr[:, order], left_vectors=vl[:, order])


def _distance_matrix(s1, s2) -> np.ndarray:
    s1 = np.asarray(s1, dtype=complex).ravel()
    s2 = np.asarray(s2, dtype=complex).ravel()
    if s1.shape != s2.shape:
        raise ValueError(f"spectra have different lengths: {s1.size} vs {s2.size}")
    return np.abs(s1[:, None] - s2[None, :])


def spectra_equal(s1, s2, tol: float = TOL_SPECTRA) -> bool:
    """Multiset equality of two spectra up to ``tol``.

    A greedy nearest-neighbour pass over the canonically sorted lists is
    tried first; if it leaves a value unmatched, an optimal assignment
    decides whether any perfect matching within ``tol`` exists.
    """
    a, b = canonical_sort(s1), canonical_sort(s2)
    dist = _distance_matrix(a, b)
    used = np.zeros(b.size, dtype=bool)
    for i in range(a.size):
        row = np.where(used, np.inf, dist[i])
        j = int(np.argmin(row))
        if row[j] > tol:
            break
        used[j] = True
    else:
        return True
    too_far = (dist > tol).astype(float)
    rows, cols = linear_sum_assignment(too_far)
    return bool(too_far[rows, cols].sum() == 0)


def _has_perfect_matching(adj: np.ndarray) -> bool:
    # Kuhn's augmenting paths; adj[i, j] allows pairing row i with column j
    n = adj.shape[0]
    owner = [-1] * n
    neighbours = [np.flatnonzero(row).tolist() for row in adj]

    def augment(i, seen):
        for j in neighbours[i]:
            if not seen[j]:
                seen[j] = True
                if owner[j] < 0 or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def spectral_deviation(s1, s2) -> float:
    """Bottleneck matching distance between two spectra.

    The smallest ``t`` such that the values of ``s1`` can be paired
    one-to-one with those of ``s2`` with every pair within distance ``t``.
    ``spectra_equal(s1, s2, tol)`` holds exactly when this is ``<= tol``.
    """
    dist = _distance_matrix(s1, s2)
    candidates = np.unique(dist)
    # no perfect matching can beat the largest row/column minimum
    floor = max(dist.min(axis=1).max(), dist.min(axis=0).max())
    candidates = candidates[candidates >= floor]
    lo, hi = 0, candidates.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(dist <= candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def cartesian_decompose(m) -> tuple[np.ndarray, np.ndarray]:
    """Split ``m`` as ``h1 + 1j * h2`` with both parts Hermitian."""
    m = as_cmatrix(m)
    mh = m.conj().T
    return (m + mh) / 2, (m - mh) / 2j
