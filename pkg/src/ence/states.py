"""State families and seeded random ensembles.

Every random generator accepts ``seed`` as anything
:func:`numpy.random.default_rng` understands (an integer, a
``SeedSequence`` or a ``Generator``). Integer seeds drive NumPy's PCG64
bit generator, so the same seed gives bit-identical output on a given
platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import (
    TOL_PSD,
    TOL_TRACE,
    as_cmatrix,
    check_density,
    is_hermitian,
    tensor,
)

RNG_ALGORITHM = "numpy.PCG64 (SeedSequence-derived streams)"
TOL_UNITARY = 1e-10


def rng_from(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def child_seeds(seed, n: int) -> list[np.random.SeedSequence]:
    """Independent per-trial seed sequences derived by counter from ``seed``.

    Child ``i`` depends only on ``seed`` and ``i``, never on how many
    children were requested before, so repeated calls agree.
    """
    base = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [
        np.random.SeedSequence(base.entropy, spawn_key=base.spawn_key + (i,))
        for i in range(n)
    ]


def _check_unitary(u: np.ndarray, name: str) -> None:
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > TOL_UNITARY * max(1, u.shape[0]):
        raise ValueError(f"{name} is not unitary (max deviation {err:.2e})")


def ginibre(rows: int, cols: int, seed) -> np.ndarray:
    """Matrix of independent standard complex Gaussians (unit variance)."""
    rng = rng_from(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix.

    The columns of Q are rephased by the phases of R's diagonal; without
    this step the distribution is not Haar.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    q, r = np.linalg.qr(ginibre(d, d, seed))
    diag = np.diagonal(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases


def random_density(d: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Random density matrix ``G G^dagger / tr(G G^dagger)``, ``G`` a ``d x rank`` Ginibre matrix."""
    if rank is None:
        rank = d
    if d < 1 or not 1 <= rank <= d:
        raise ValueError(f"need 1 <= rank <= d, got d={d}, rank={rank}")
    g = ginibre(d, rank, seed)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_pure(d: int, seed) -> np.ndarray:
    return random_density(d, 1, seed)


def random_invertible(d: int, seed, max_cond: float = 100.0) -> np.ndarray:
    """Random complex matrix with 2-norm condition number at most ``max_cond``.

    Built as ``U diag(s) V^dagger`` with Haar ``U, V`` and singular values
    log-uniform on ``[1, max_cond]``.
    """
    if max_cond < 1:
        raise ValueError("max_cond must be >= 1")
    rng = rng_from(seed)
    u = random_unitary(d, rng)
    v = random_unitary(d, rng)
    s = np.exp(rng.uniform(0.0, np.log(max_cond), size=d))
    return (u * s) @ v.conj().T


@dataclass
class PccSpec:
    """Eigen-data of a properly classically correlated state.

    ``weights[i, j]`` is the eigenvalue attached to ``|u_i> (x) |v_j>``,
    where ``u_i`` and ``v_j`` are the columns of ``basis_a`` and ``basis_b``.
    """

    weights: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.basis_a = as_cmatrix(self.basis_a)
        self.basis_b = as_cmatrix(self.basis_b)
        shape = (self.basis_a.shape[0], self.basis_b.shape[0])
        if self.weights.shape != shape:
            raise ValueError(f"weights must have shape {shape}, got {self.weights.shape}")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(self.weights.sum() - 1) > TOL_TRACE:
            raise ValueError(f"weights sum to {self.weights.sum():.12g}, expected 1")
        _check_unitary(self.basis_a, "basis_a")
        _check_unitary(self.basis_b, "basis_b")


@dataclass
class OnewccSpec:
    """Data of a one-way classically correlated state ``sum_j sigma_j (x) |v_j><v_j|``.

    ``sigmas[j]`` pairs with column ``j`` of ``basis_b``; each must be
    positive semidefinite and their traces must add up to one.
    """

    sigmas: list
    basis_b: np.ndarray

    def __post_init__(self):
        self.sigmas = [as_cmatrix(s) for s in self.sigmas]
        self.basis_b = as_cmatrix(self.basis_b)
        if len(self.sigmas) != self.basis_b.shape[0]:
            raise ValueError(
                f"need one sigma per basis_b vector: {len(self.sigmas)} vs {self.basis_b.shape[0]}"
            )
        d_a = self.sigmas[0].shape[0]
        for s in self.sigmas:
            if s.shape != (d_a, d_a):
                raise ValueError("all sigmas must have the same shape")
            if not is_hermitian(s):
                raise ValueError("sigmas must be Hermitian")
            if np.linalg.eigvalsh(s)[0] < -TOL_PSD:
                raise ValueError("sigmas must be positive semidefinite")
        total = sum(np.trace(s).real for s in self.sigmas)
        if abs(total - 1) > TOL_TRACE:
            raise ValueError(f"sigma traces sum to {total:.12g}, expected 1")
        _check_unitary(self.basis_b, "basis_b")


def _projector(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


def pcc_state(spec: PccSpec) -> np.ndarray:
    """``sum_ij e_ij |u_i><u_i| (x) |v_j><v_j|``; its spectrum is ``spec.weights``."""
    u = np.kron(spec.basis_a, spec.basis_b)
    rho = (u * spec.weights.ravel()) @ u.conj().T
    return check_density((rho + rho.conj().T) / 2)


def onewcc_state(spec: OnewccSpec) -> np.ndarray:
    rho = sum(tensor(s, _projector(spec.basis_b[:, j])) for j, s in enumerate(spec.sigmas))
    return check_density((rho + rho.conj().T) / 2)


def bell_state() -> np.ndarray:
    """``|Phi+><Phi+|`` on two qubits."""
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return _projector(psi)


def rho_p(p: float, rho_npt=None) -> np.ndarray:
    """Convex mixture ``(1 - p) I / d + p rho_npt`` for ``0 < p <= 1``.

    ``rho_npt`` defaults to :func:`bell_state`. Whether the supplied state
    actually has a non-positive partial transpose is the caller's concern.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    rho_npt = bell_state() if rho_npt is None else check_density(rho_npt)
    d = rho_npt.shape[0]
    return (1 - p) * np.eye(d) / d + p * rho_npt


def random_pcc_spec(d_a: int, d_b: int, seed, computational: bool = False) -> PccSpec:
    """Random weights (flat Dirichlet) with Haar bases, or computational bases if asked."""
    rng = rng_from(seed)
    weights = rng.dirichlet(np.ones(d_a * d_b)).reshape(d_a, d_b)
    if computational:
        return PccSpec(weights, np.eye(d_a), np.eye(d_b))
    return PccSpec(weights, random_unitary(d_a, rng), random_unitary(d_b, rng))


def random_onewcc_spec(d_a: int, d_b: int, seed, commuting: bool = False) -> OnewccSpec:
    """Random 1wcc data with a Haar basis on B.

    With ``commuting=False`` the ``sigma_j`` are independent random density
    matrices (rescaled), which almost surely do not commute for ``d_a > 1``
    and ``d_b > 1``. With ``commuting=True`` they share one eigenbasis.
    """
    rng = rng_from(seed)
    probs = rng.dirichlet(np.ones(d_b))
    if commuting:
        w = random_unitary(d_a, rng)
        sigmas = []
        for pj in probs:
            lam = rng.dirichlet(np.ones(d_a))
            sigmas.append(pj * (w * lam) @ w.conj().T)
    else:
        sigmas = [pj * random_density(d_a, seed=rng) for pj in probs]
    return OnewccSpec(sigmas, random_unitary(d_b, rng))
