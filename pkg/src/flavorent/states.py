"""
Multiqubit encodings of flavor and mass eigenstates.

A mass eigenstate ``|nu_k>`` of an N-flavor system is the N-qubit basis
state with a single excitation on qubit ``k``; ``|nu_1> = |100>`` for three
flavors. Flavor states are superpositions of these one-hot kets weighted by
a row of the mixing matrix, i.e. generalized W states.

State vectors are plain complex ``numpy`` arrays of length ``2**N``.
"""

from __future__ import annotations

import numpy as np

from .errors import IndexOutOfRange, NonUnitary, NotNormalized
from .linalg import n_qubits_of

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

# lepton rows e, mu, tau, sterile; quark rows d', s', b'
LEPTON_FLAVORS = ("e", "mu", "tau", "s")
QUARK_FLAVORS = ("d'", "s'", "b'")
_ALIASES = {"μ": "mu", "τ": "tau", "d": "d'", "b": "b'", "nu_e": "e", "nu_mu": "mu", "nu_tau": "tau"}


def flavor_row(flavor, n: int) -> int:
    """
    Resolve a flavor label or 1-based row number to a row in ``1..n``.

    Labels: ``e, mu, tau, s`` (``s`` is the sterile row 4) and ``d', s', b'``.
    """
    if isinstance(flavor, (int, np.integer)):
        row = int(flavor)
    else:
        label = _ALIASES.get(str(flavor), str(flavor))
        if label in LEPTON_FLAVORS:
            row = LEPTON_FLAVORS.index(label) + 1
        elif label in QUARK_FLAVORS:
            row = QUARK_FLAVORS.index(label) + 1
        else:
            raise IndexOutOfRange(f"unknown flavor label {flavor!r}")
    if not 1 <= row <= n:
        raise IndexOutOfRange(f"flavor row {row} outside 1..{n}")
    return row


def one_hot_index(n: int, k: int) -> int:
    """Basis index of the N-qubit string with a single 1 on qubit ``k``."""
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"mode {k} outside 1..{n}")
    return 1 << (n - k)


def one_hot_state(n: int, k: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[one_hot_index(n, k)] = 1.0
    return psi


def flavor_state(u, flavor) -> np.ndarray:
    """
    ``sum_k U[row, k] |nu_k>`` embedded in the full ``2**N`` space.

    Raises
    ------
    NonUnitary
        If ``U`` is not unitary to 1e-10.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if u.shape != (n, n):
        raise NonUnitary(f"mixing matrix must be square, got {u.shape}")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(n)))
    if dev > UNITARY_TOL:
        raise NonUnitary(f"U^dagger U deviates from identity by {dev:.3e}")
    row = flavor_row(flavor, n)
    psi = np.zeros(1 << n, dtype=complex)
    for k in range(1, n + 1):
        psi[one_hot_index(n, k)] = u[row - 1, k - 1]
    return psi


def w_state(n: int) -> np.ndarray:
    psi = sum(one_hot_state(n, k) for k in range(1, n + 1))
    return psi / np.sqrt(n)


def ghz_state(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return psi


def density_matrix(psi) -> np.ndarray:
    """Projector ``|psi><psi|``; ``psi`` must be normalized to 1e-12."""
    psi = np.asarray(psi, dtype=complex)
    n_qubits_of(psi.shape[0])
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"state norm^2 is {norm!r}")
    return np.outer(psi, psi.conj())
