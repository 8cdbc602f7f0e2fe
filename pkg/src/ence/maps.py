"""Superoperator representation of linear maps on d x d matrices.

Matrices are vectorized by stacking columns, so that

    vec(A X B) = (B^T (x) A) vec(X).

With this convention the similarity map ``X -> S^{-1} X S`` has the
superoperator ``S^T (x) S^{-1}`` and the transpose map is the commutation
matrix ``K_d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .matcore import as_cmatrix, as_dims, check_side

MAX_COND = 1e8


def vec(a: np.ndarray) -> np.ndarray:
    """Column-stack ``a`` into a 1-D array."""
    return np.asarray(a).T.reshape(-1)


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ValueError(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape(d, d).T


@dataclass(frozen=True)
class Superoperator:
    """A linear map on ``d x d`` matrices stored as a ``d^2 x d^2`` matrix."""

    d: int
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.shape != (self.d**2, self.d**2):
            raise ValueError(f"superoperator for d={self.d} must be {self.d**2}x{self.d**2}, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("superoperator has non-finite entries")
        object.__setattr__(self, "mat", mat)

    @classmethod
    def from_matrix(cls, mat) -> "Superoperator":
        mat = np.asarray(mat, dtype=complex)
        d = int(round(np.sqrt(mat.shape[0])))
        if mat.ndim != 2 or d * d != mat.shape[0]:
            raise ValueError(f"superoperator matrix must be d^2 x d^2, got shape {mat.shape}")
        return cls(d, mat)

    def __call__(self, a) -> np.ndarray:
        return apply(self, a)


def superop_from_function(fn: Callable[[np.ndarray], np.ndarray], d: int) -> Superoperator:
    """Tabulate a linear function on ``d x d`` matrices by its action on matrix units."""
    mat = np.zeros((d * d, d * d), dtype=complex)
    for col in range(d * d):
        unit = np.zeros(d * d, dtype=complex)
        unit[col] = 1
        mat[:, col] = vec(fn(unvec(unit)))
    return Superoperator(d, mat)


def superop_identity(d: int) -> Superoperator:
    return Superoperator(d, np.eye(d * d))


def superop_conjugation(s, max_cond: float = MAX_COND) -> Superoperator:
    """Superoperator of ``A -> S^{-1} A S``.

    Refuses ``s`` whose condition number exceeds ``max_cond``.
    """
    s = as_cmatrix(s)
    cond = np.linalg.cond(s)
    if not np.isfinite(cond) or cond > max_cond:
        raise ValueError(f"S is singular or ill-conditioned (cond = {cond:.3g} > {max_cond:.3g})")
    return Superoperator(s.shape[0], np.kron(s.T, np.linalg.inv(s)))


def commutation_matrix(d: int) -> np.ndarray:
    """Permutation ``K_d`` with ``vec(A^T) = K_d vec(A)``."""
    k = np.zeros((d * d, d * d))
    idx = np.arange(d * d).reshape(d, d)
    # vec(A)[j*d + i] = A[i, j], so vec(A^T)[j*d + i] = vec(A)[i*d + j]
    k[idx.T.ravel(), idx.ravel()] = 1
    return k


def superop_transpose(d: int) -> Superoperator:
    if d < 1:
        raise ValueError("d must be >= 1")
    return Superoperator(d, commutation_matrix(d))


def compose(f: Superoperator, g: Superoperator) -> Superoperator:
    """The map ``A -> f(g(A))``."""
    if f.d != g.d:
        raise ValueError(f"cannot compose maps on d={f.d} and d={g.d}")
    return Superoperator(f.d, f.mat @ g.mat)


def superop_transpose_conjugation(s, max_cond: float = MAX_COND) -> Superoperator:
    """Superoperator of ``A -> S^{-1} A^T S``."""
    conj = superop_conjugation(s, max_cond)
    return compose(conj, superop_transpose(conj.d))


def apply(l: Superoperator, a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (l.d, l.d):
        raise ValueError(f"map acts on {l.d}x{l.d} matrices, got {a.shape}")
    return unvec(l.mat @ vec(a))


def apply_partial(l: Superoperator, rho, dims, side: str = "B") -> np.ndarray:
    """Apply ``I (x) l`` (``side="B"``) or ``l (x) I`` (``side="A"``) to a bipartite matrix.

    Works block by block: for ``side="B"`` each ``d_b x d_b`` block
    ``<i|rho|i'>`` is replaced by ``l(<i|rho|i'>)``. The lifted
    superoperator is never formed.
    """
    rho = as_cmatrix(rho)
    dims = as_dims(dims)
    dims.check(rho)
    if check_side(side) == "A":
        swapped = _swap(rho, dims)
        return _swap(apply_partial(l, swapped, dims.swapped(), "B"), dims.swapped())
    if l.d != dims.d_b:
        raise ValueError(f"map acts on d={l.d} but subsystem B has d_b={dims.d_b}")
    d_a, d_b = dims
    # blocks[i, i', k, l] = rho[(i,k),(i',l)]
    blocks = rho.reshape(d_a, d_b, d_a, d_b).transpose(0, 2, 1, 3)
    vecs = blocks.transpose(0, 1, 3, 2).reshape(d_a, d_a, d_b * d_b)
    out = (vecs @ l.mat.T).reshape(d_a, d_a, d_b, d_b).transpose(0, 1, 3, 2)
    return out.transpose(0, 2, 1, 3).reshape(dims.total, dims.total)


def _swap(rho: np.ndarray, dims) -> np.ndarray:
    # reorder a (d_a, d_b) matrix into (d_b, d_a) ordering
    d_a, d_b = dims
    return rho.reshape(d_a, d_b, d_a, d_b).transpose(1, 0, 3, 2).reshape(d_a * d_b, d_a * d_b)
