"""
Dense complex linear algebra for small qubit registers.

Operators are plain ``numpy`` arrays of shape ``(2**N, 2**N)`` with
``N <= 4``. Qubits are labelled ``1..N`` and qubit 1 is the most
significant bit of the computational-basis index, so ``|100>`` is index 4
for three qubits.

The Hermitian eigensolver is a cyclic complex Jacobi iteration. For the
matrix sizes used here (at most 16x16) it is robust, accurate to roundoff
and has no dependency beyond numpy array arithmetic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimMismatch, DimOverflow, NoConvergence, NonHermitian

MAX_DIM = 16
HERMITIAN_TOL = 1e-10
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
    if not 1 <= a.shape[0] <= MAX_DIM:
        raise DimOverflow(f"matrix dimension {a.shape[0]} outside 1..{MAX_DIM}")
    return a


def hermiticity_error(m) -> float:
    """Return ``max_ij |M_ij - conj(M_ji)|``."""
    a = np.asarray(m, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)))


def n_qubits_of(dim: int) -> int:
    """Number of qubits for a register of dimension ``dim`` (a power of two)."""
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim or n > 4:
        raise DimMismatch(f"dimension {dim} is not 2**N with N in 1..4")
    return n


def check_subset(members: Iterable[int], n_qubits: int) -> tuple[int, ...]:
    """Validate a qubit subset: non-empty, strictly increasing, inside ``1..N``."""
    out = tuple(int(k) for k in members)
    if not out:
        raise DimMismatch("qubit subset must be non-empty")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise DimMismatch(f"qubit subset {out} must be strictly increasing")
    if out[0] < 1 or out[-1] > n_qubits:
        raise DimMismatch(f"qubit subset {out} outside 1..{n_qubits}")
    return out


def eig_hermitian(m, vectors: bool = False):
    """
    Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix, dimension at most 16.
    vectors : bool
        If true also return the unitary matrix of column eigenvectors.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    v : ndarray, optional
        Eigenvectors, ``m @ v[:, k] == w[k] * v[:, k]``.

    Raises
    ------
    NonHermitian
        If ``m`` departs from Hermiticity by more than 1e-10.
    NoConvergence
        If more than 100 sweeps are needed.
    """
    a = as_matrix(m)
    if hermiticity_error(a) > HERMITIAN_TOL:
        raise NonHermitian(f"asymmetry {hermiticity_error(a):.3e} exceeds {HERMITIAN_TOL}")
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex) if vectors else None

    tol = JACOBI_REL_TOL * np.linalg.norm(a)
    negligible = max(1e-6 * tol / n, np.finfo(float).tiny)
    diag_mask = np.eye(n, dtype=bool)
    sweeps = 0
    while True:
        off = np.linalg.norm(a[~diag_mask])
        if off <= tol:
            break
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= negligible:
                    # far below the stopping tolerance; rotating would only
                    # risk overflow in theta for subnormal entries
                    a[p, q] = a[q, p] = 0.0
                    continue
                ph = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                phc = ph.conjugate()
                # columns: A <- A V with V = [[c, s], [-s*phc, c*phc]]
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp - s * phc * cq
                a[:, q] = s * cp + c * phc * cq
                # rows: A <- V^H A
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * ph * rq
                a[q, :] = s * rp + c * ph * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q]
                    v[:, p] = c * vp - s * phc * vq
                    v[:, q] = s * vp + c * phc * vq

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], v[:, order]
    return w[order]


def trace_norm(m) -> float:
    """Trace norm ``sum_k |lambda_k|`` of a Hermitian matrix."""
    return float(np.sum(np.abs(eig_hermitian(m))))


def _split_axes(n: int, subset: Sequence[int]) -> tuple[list[int], list[int]]:
    inside = [k - 1 for k in subset]
    outside = [k for k in range(n) if k not in inside]
    return inside, outside


def partial_trace(rho, keep: Sequence[int]) -> np.ndarray:
    """
    Reduced operator on the qubits in ``keep`` (1-based), tracing out the rest.

    The kept qubits retain their relative order in the output.
    """
    a = as_matrix(rho)
    n = n_qubits_of(a.shape[0])
    keep = check_subset(keep, n)
    kept, traced = _split_axes(n, keep)
    dk, dt = 1 << len(kept), 1 << len(traced)
    t = a.reshape([2] * (2 * n))
    perm = kept + traced + [n + k for k in kept] + [n + k for k in traced]
    t = t.transpose(perm).reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def partial_transpose(rho, transpose_set: Sequence[int]) -> np.ndarray:
    """
    Partial transpose over the qubits in ``transpose_set`` (1-based).

    ``<a,b|out|a',b'> = <a,b'|rho|a',b>`` where ``b`` labels the transposed
    qubits. The map is an exact involution.
    """
    a = as_matrix(rho)
    n = n_qubits_of(a.shape[0])
    tset = check_subset(transpose_set, n)
    perm = list(range(2 * n))
    for k in tset:
        perm[k - 1], perm[n + k - 1] = perm[n + k - 1], perm[k - 1]
    d = a.shape[0]
    return a.reshape([2] * (2 * n)).transpose(perm).reshape(d, d).copy()


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product, ``a`` on the more significant qubits. Vectors or matrices."""
    x = np.asarray(a, dtype=complex)
    y = np.asarray(b, dtype=complex)
    if x.ndim != y.ndim or x.ndim not in (1, 2):
        raise DimMismatch("tensor_product expects two vectors or two matrices")
    out = np.kron(x, y)
    if out.shape[0] > MAX_DIM:
        raise DimOverflow(f"product dimension {out.shape[0]} exceeds {MAX_DIM}")
    return out
