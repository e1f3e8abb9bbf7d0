"""
Bipartite entanglement over every split of an N-qubit register.

Pure states are scored with the von Neumann entropy (bits) of the reduced
state; mixed states with the logarithmic negativity
``log2 || rho^{T_B} ||_1``. Averages run over all ``C(N, n)`` choices of the
n-qubit side, so a balanced split counts each pair of complementary sides
twice; both orderings give the same value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadSplit, NotDensityMatrix
from .linalg import (
    HERMITIAN_TOL,
    check_subset,
    eig_hermitian,
    hermiticity_error,
    n_qubits_of,
    partial_transpose,
    trace_norm,
)

CLAMP_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class Bipartition:
    """Ordered split ``(side_a; side_b)`` of qubits ``1..n_qubits``."""

    n_qubits: int
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        a = check_subset(self.side_a, self.n_qubits)
        b = check_subset(self.side_b, self.n_qubits)
        if set(a) & set(b) or len(a) + len(b) != self.n_qubits:
            raise BadSplit(f"{a} and {b} do not partition 1..{self.n_qubits}")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def from_side(cls, n_qubits: int, side_a) -> "Bipartition":
        a = tuple(sorted(int(k) for k in side_a))
        b = tuple(k for k in range(1, n_qubits + 1) if k not in a)
        if not a or not b:
            raise BadSplit(f"side {a} is not a proper subset of 1..{n_qubits}")
        return cls(n_qubits, a, b)

    def swapped(self) -> "Bipartition":
        return Bipartition(self.n_qubits, self.side_b, self.side_a)

    @property
    def label(self) -> str:
        return "({};{})".format(",".join(map(str, self.side_a)), ",".join(map(str, self.side_b)))

    @property
    def key(self) -> str:
        """Compact column name, e.g. ``12_3``."""
        return "".join(map(str, self.side_a)) + "_" + "".join(map(str, self.side_b))

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class MeasureReport:
    per_bipartition: dict
    average: float
    split_size: int

    def values(self) -> list[float]:
        return list(self.per_bipartition.values())


def bipartitions(n: int, n_a: int) -> list[Bipartition]:
    """All ``C(n, n_a)`` splits with an ``n_a``-qubit first side, lexicographic."""
    if not 1 <= n_a < n:
        raise BadSplit(f"split size {n_a} must satisfy 1 <= n < {n}")
    return [Bipartition.from_side(n, c) for c in itertools.combinations(range(1, n + 1), n_a)]


def _as_state(psi) -> tuple[np.ndarray, int]:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise NotDensityMatrix("expected a state vector")
    return psi, n_qubits_of(psi.shape[0])


def reduced_state(psi, side) -> np.ndarray:
    """Reduced density matrix of a pure state on the qubits in ``side``."""
    psi, n = _as_state(psi)
    side = check_subset(side, n)
    kept = [k - 1 for k in side]
    rest = [k for k in range(n) if k not in kept]
    m = psi.reshape([2] * n).transpose(kept + rest).reshape(1 << len(kept), -1)
    return m @ m.conj().T


def clamp_spectrum(w) -> np.ndarray:
    """Zero out roundoff negatives; anything below -1e-10 is an error."""
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < -CLAMP_TOL:
        raise NotDensityMatrix(f"eigenvalue {w.min():.3e} below -{CLAMP_TOL}")
    return np.where(w < 0.0, 0.0, w)


def schmidt_spectrum(psi, b: Bipartition) -> np.ndarray:
    """
    Squared Schmidt coefficients across ``b``, ascending, padded with zeros
    to the dimension of ``side_a``.

    The smaller side is diagonalized; both sides share the nonzero spectrum.
    """
    small = b.side_a if len(b.side_a) <= len(b.side_b) else b.side_b
    w = clamp_spectrum(eig_hermitian(reduced_state(psi, small)))
    pad = (1 << len(b.side_a)) - w.size
    if pad > 0:
        w = np.concatenate([np.zeros(pad), w])
    elif pad < 0:
        w = w[-pad:]
    return w


def shannon_bits(w) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``."""
    w = np.asarray(w, dtype=float)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log2(w))) if w.size else 0.0


def entropy_of_bipartition(psi, b: Bipartition) -> float:
    """Von Neumann entropy (bits) of the reduction of ``psi`` to ``b.side_a``."""
    psi, n = _as_state(psi)
    if b.n_qubits != n:
        raise BadSplit(f"bipartition is for {b.n_qubits} qubits, state has {n}")
    return shannon_bits(schmidt_spectrum(psi, b))


def _average(kernel: Callable, obj, n: int, n_a: int) -> MeasureReport:
    per = {b: kernel(obj, b) for b in bipartitions(n, n_a)}
    return MeasureReport(per, float(np.mean(list(per.values()))), n_a)


def average_entropy(psi, n_a: int) -> MeasureReport:
    psi, n = _as_state(psi)
    return _average(entropy_of_bipartition, psi, n, n_a)


def check_density_matrix(rho) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity (all to 1e-10)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NotDensityMatrix(f"expected a square matrix, got shape {rho.shape}")
    if hermiticity_error(rho) > HERMITIAN_TOL:
        raise NotDensityMatrix("matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotDensityMatrix(f"trace {tr!r} differs from 1")
    w = eig_hermitian(rho)
    if w[0] < -CLAMP_TOL:
        raise NotDensityMatrix(f"negative eigenvalue {w[0]:.3e}")
    return rho


def _log_negativity(rho: np.ndarray, b: Bipartition) -> float:
    val = math.log2(trace_norm(partial_transpose(rho, b.side_b)))
    return max(val, 0.0)


def log_negativity(rho, b: Bipartition, check: bool = True) -> float:
    """``log2`` of the trace norm of ``rho`` partially transposed on ``b.side_b``."""
    rho = check_density_matrix(rho) if check else np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho.shape[0])
    if b.n_qubits != n:
        raise BadSplit(f"bipartition is for {b.n_qubits} qubits, matrix has {n}")
    return _log_negativity(rho, b)


def average_negativity(rho, n_a: int, check: bool = True) -> MeasureReport:
    rho = check_density_matrix(rho) if check else np.asarray(rho, dtype=complex)
    return _average(_log_negativity, rho, n_qubits_of(rho.shape[0]), n_a)
