"""Shared fixtures-free helpers for the test suite."""

import numpy as np


def random_state(rng, n_qubits):
    psi = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return psi / np.linalg.norm(psi)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def count_below(h, shift):
    """
    Number of eigenvalues of Hermitian ``h`` below ``shift`` (Sylvester inertia).

    Gaussian elimination of ``h - shift*I`` without pivoting; the number of
    negative pivots equals the number of negative eigenvalues.
    """
    a = np.array(h, dtype=complex) - shift * np.eye(len(h))
    tiny = 1e-30 * max(1.0, np.max(np.abs(a)))
    neg = 0
    n = len(a)
    for k in range(n):
        piv = a[k, k].real
        if piv == 0.0:
            piv = tiny  # eigenvalue exactly at the shift; count it as non-negative
        if piv < 0:
            neg += 1
        if k + 1 < n:
            a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:]) / piv
    return neg


def bisect_eigenvalues(h, tol=1e-14):
    """Ascending spectrum of ``h`` by inertia bisection; no library eigensolver."""
    h = np.asarray(h, dtype=complex)
    n = len(h)
    bound = np.max(np.sum(np.abs(h), axis=1)) + 1.0  # Gershgorin
    out = np.empty(n)
    for k in range(n):
        lo, hi = -bound, bound
        while hi - lo > tol * max(1.0, bound):
            mid = 0.5 * (lo + hi)
            if count_below(h, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
    return out
