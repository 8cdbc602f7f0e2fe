"""Reference computations that share no code path with the package.

Deliberately slow and simple: explicit loops, a textbook Jacobi sweep,
Faddeev-LeVerrier characteristic polynomials in extended precision.
"""

import itertools

import mpmath
import numpy as np


def kron_loops(a, b):
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(m):
                for l in range(m):
                    out[i * m + k, j * m + l] = a[i, j] * b[k, l]
    return out


def partial_trace_loops(rho, d_a, d_b, side):
    if side == "B":
        out = np.zeros((d_a, d_a), dtype=complex)
        for i in range(d_a):
            for j in range(d_a):
                for k in range(d_b):
                    out[i, j] += rho[i * d_b + k, j * d_b + k]
    else:
        out = np.zeros((d_b, d_b), dtype=complex)
        for k in range(d_b):
            for l in range(d_b):
                for i in range(d_a):
                    out[k, l] += rho[i * d_b + k, i * d_b + l]
    return out


def partial_transpose_loops(rho, d_a, d_b, side):
    out = np.zeros_like(rho, dtype=complex)
    for i in range(d_a):
        for j in range(d_a):
            for k in range(d_b):
                for l in range(d_b):
                    if side == "B":
                        out[i * d_b + k, j * d_b + l] = rho[i * d_b + l, j * d_b + k]
                    else:
                        out[i * d_b + k, j * d_b + l] = rho[j * d_b + k, i * d_b + l]
    return out


def jacobi_eigvalsh(h, sweeps=100):
    """Eigenvalues of a complex Hermitian matrix, descending, by cyclic Jacobi.

    The complex matrix is embedded as the real symmetric [[Re, -Im], [Im, Re]],
    whose spectrum is that of ``h`` with every value doubled.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    a = np.block([[h.real, -h.imag], [h.imag, h.real]]).astype(float)
    m = 2 * n
    for _ in range(sweeps):
        off = np.sqrt(np.sum(a**2) - np.sum(np.diag(a) ** 2))
        if off < 1e-15:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta**2 + 1)) if theta != 0 else 1.0
                c = 1 / np.sqrt(t**2 + 1)
                s = t * c
                rot = np.eye(m)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    vals = np.sort(np.diag(a))[::-1]
    return vals[::2]


def charpoly_roots(m, dps=50):
    """Eigenvalues as roots of the Faddeev-LeVerrier characteristic polynomial."""
    with mpmath.workdps(dps):
        a = mpmath.matrix([[mpmath.mpc(complex(x)) for x in row] for row in np.asarray(m)])
        n = a.rows
        coeffs = [mpmath.mpf(1)]
        mk = mpmath.zeros(n, n)
        eye = mpmath.eye(n)
        for k in range(1, n + 1):
            mk = a * (mk + coeffs[-1] * eye) if k > 1 else a * eye
            c = -sum(mk[i, i] for i in range(n)) / k
            coeffs.append(c)
        roots = mpmath.polyroots(coeffs, maxsteps=500, extraprec=200)
        return np.array([complex(r) for r in roots])


def det_leibniz(m):
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    total = 0j
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i in range(n):
            term = term * m[i, perm[i]]
        total += term
    return total


def multiset_close(s1, s2, tol):
    """Brute-force check over all pairings (small inputs only)."""
    s1, s2 = list(s1), list(s2)
    return any(
        all(abs(s1[i] - s2[p]) <= tol for i, p in enumerate(perm))
        for perm in itertools.permutations(range(len(s2)))
    )
