"""Detectors and a scalar measure of bipartite nonclassical correlation.

A state has a product eigenbasis exactly when it is properly classically
correlated. Partial transposition preserves the spectrum of every such
state, so a spectrum change certifies the absence of a product
eigenbasis. The converse fails: one-way classically correlated states
keep their spectrum under partial transposition on the classical side.
The commutation test decides the one-way question exactly, and running
it on both sides decides the product-eigenbasis question.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .matcore import (
    TOL_SPECTRA,
    as_dims,
    check_density,
    check_side,
    eig_herm,
    partial_transpose,
    spectral_deviation,
)

TOL_COMMUTE = 1e-8
MAX_CHEN_DIM = 8


@dataclass(frozen=True)
class DetectionReport:
    detected: bool
    spectrum_before: np.ndarray
    spectrum_after: np.ndarray
    deviation: float
    side: str
    method: str


@dataclass(frozen=True)
class CommutationReport:
    passes: bool
    max_commutator_norm: float
    pairs_tested: int
    classical_side: str
    cons: str = "computational"


def pt_detect(rho, dims, side: str = "B", tol: float = TOL_SPECTRA) -> DetectionReport:
    """Compare the spectrum of ``rho`` with that of its partial transpose.

    ``deviation`` is the bottleneck matching distance between the two
    spectra and ``detected`` is ``deviation > tol``. Detection proves the
    state has no product eigenbasis; no detection proves nothing.
    """
    rho = check_density(rho)
    dims = as_dims(dims)
    dims.check(rho)
    before = eig_herm(rho).spectrum
    after = eig_herm(partial_transpose(rho, dims, side)).spectrum
    dev = spectral_deviation(before, after)
    return DetectionReport(dev > tol, before, after, dev, side, "PT")


def _blocks_over(rho: np.ndarray, dims, classical_side: str) -> np.ndarray:
    # operators on the classical side, indexed by a computational basis pair of the other side
    d_a, d_b = dims
    t = rho.reshape(d_a, d_b, d_a, d_b)
    if classical_side == "B":
        return t.transpose(0, 2, 1, 3).reshape(d_a * d_a, d_b, d_b)
    return t.transpose(1, 3, 0, 2).reshape(d_b * d_b, d_a, d_a)


def chen_test(
    rho,
    dims,
    classical_side: str = "B",
    tol: float = TOL_COMMUTE,
    max_dim: int = MAX_CHEN_DIM,
) -> CommutationReport:
    """Commutation test for one-way classical correlation.

    For ``classical_side="B"`` the operators ``<i|rho|i'>`` on B, taken
    over the computational basis of A, must all commute with one another;
    this holds iff ``rho = sum_j sigma_j (x) |v_j><v_j|`` for some
    orthonormal basis ``{v_j}`` of B. Commutators are measured by their
    largest absolute entry against ``tol * max|rho|^2``.

    Raises ``ValueError`` if either local dimension exceeds ``max_dim``
    (the number of pairs grows as the fourth power of the dimension).
    """
    rho = check_density(rho)
    dims = as_dims(dims)
    dims.check(rho)
    check_side(classical_side)
    if max(dims) > max_dim:
        raise ValueError(f"local dimension {max(dims)} exceeds max_dim={max_dim}")
    blocks = _blocks_over(rho, dims, classical_side)
    worst = 0.0
    pairs = 0
    for x, y in itertools.combinations(range(len(blocks)), 2):
        comm = blocks[x] @ blocks[y] - blocks[y] @ blocks[x]
        worst = max(worst, float(np.max(np.abs(comm))))
        pairs += 1
    scale = float(np.max(np.abs(rho))) ** 2
    return CommutationReport(worst <= tol * scale, worst, pairs, classical_side)


def pcc_test(rho, dims, tol: float = TOL_COMMUTE, max_dim: int = MAX_CHEN_DIM) -> bool:
    """True iff ``rho`` has a product eigenbasis (commutation test on both sides)."""
    return (
        chen_test(rho, dims, "A", tol, max_dim).passes
        and chen_test(rho, dims, "B", tol, max_dim).passes
    )


def ncc_measure(rho, dims, side: str = "B") -> float:
    """Half the l1 distance between the sorted spectra of ``rho`` and its partial transpose.

    Zero for every state with a product eigenbasis; a positive value
    certifies nonclassical correlation. Invariant under local unitaries.
    """
    rho = check_density(rho)
    dims = as_dims(dims)
    before = eig_herm(rho).spectrum.real
    after = eig_herm(partial_transpose(rho, dims, side)).spectrum.real
    return float(0.5 * np.sum(np.abs(before - after)))
