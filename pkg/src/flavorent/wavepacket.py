"""
Wave-packet density matrices of a propagating three-flavor neutrino.

Distances are given in meters and converted to natural units
(``hbar = c = 1``, energies in GeV) with ``x[1/GeV] = x[m] / hbar_c``.
Squared-mass splittings are given in eV^2 and converted with 1e-18.

The stationary matrix is

    rho_jk(x) = U_aj U_ak^* exp[-i dm2_jk x / (2E)
                                - (dm2_jk x / (4 sqrt(2) E^2 sigma_x))^2
                                - (xi dm2_jk / (4 sqrt(2) E sigma_p))^2]

with ``sigma_x = 1 / (2 sigma_p)``, embedded in the 8x8 one-hot space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketInvalid, UnitError
from .measures import Bipartition, _log_negativity, bipartitions, check_density_matrix
from .mixing import MNSP, MixingParams3, u3
from .states import flavor_row, one_hot_index

HBAR_C_GEV_M = 1.9732696e-16
EV2_TO_GEV2 = 1e-18
ZERO_THRESHOLD = 1e-9


def splittings(dm2_small: float, dm2_large: float) -> tuple[float, float, float]:
    """``(dm2_21, dm2_31, dm2_32)`` from the solar and atmospheric splittings."""
    if dm2_small < 0 or dm2_large < 0:
        raise UnitError("squared-mass splittings must be non-negative")
    return (dm2_small, dm2_large + dm2_small / 2, dm2_large - dm2_small / 2)


@dataclass(frozen=True)
class WavePacketParams:
    """
    Beam parameters. ``E0`` and ``sigma_p`` in GeV, splittings in eV^2,
    ``hbar_c`` in GeV*m (set it to 1 to work directly in 1/GeV).
    """

    mixing: MixingParams3
    E0: float = 10.0
    sigma_p: float = 1.0
    xi: float = 0.0
    dm2_21: float = 7.92e-5
    dm2_31: float = field(default_factory=lambda: splittings(7.92e-5, 2.6e-3)[1])
    dm2_32: float = field(default_factory=lambda: splittings(7.92e-5, 2.6e-3)[2])
    hbar_c: float = HBAR_C_GEV_M

    def __post_init__(self):
        if not self.E0 > 0:
            raise UnitError(f"E0 must be positive, got {self.E0}")
        if not self.sigma_p > 0:
            raise UnitError(f"sigma_p must be positive, got {self.sigma_p}")
        if not self.hbar_c > 0:
            raise UnitError(f"hbar_c must be positive, got {self.hbar_c}")
        if abs(self.dm2_31 - self.dm2_32 - self.dm2_21) > 1e-12:
            raise UnitError("inconsistent splittings: dm2_31 - dm2_32 != dm2_21")

    @classmethod
    def from_splittings(cls, mixing: MixingParams3, dm2_small: float = 7.92e-5,
                        dm2_large: float = 2.6e-3, **kw) -> "WavePacketParams":
        d21, d31, d32 = splittings(dm2_small, dm2_large)
        return cls(mixing=mixing, dm2_21=d21, dm2_31=d31, dm2_32=d32, **kw)

    @classmethod
    def mnsp_beam(cls, delta: float, **kw) -> "WavePacketParams":
        """MNSP central angles, 10 GeV beam with 1 GeV momentum spread."""
        return cls.from_splittings(MNSP.params(delta), **kw)

    @property
    def sigma_x(self) -> float:
        return 1.0 / (2.0 * self.sigma_p)

    @property
    def narrow_packet(self) -> bool:
        """Validity flag for the relativistic expansion (``sigma_p << E0``)."""
        return self.sigma_p <= 0.1 * self.E0

    def mass_squares(self, m1: float = 0.0) -> np.ndarray:
        """``m_j^2`` in GeV^2 with lightest mass ``m1`` (eV)."""
        base = m1 * m1
        return (np.array([base, base + self.dm2_21, base + self.dm2_31]) * EV2_TO_GEV2)

    def dm2_matrix(self) -> np.ndarray:
        """``m_j^2 - m_k^2`` in GeV^2."""
        m2 = self.mass_squares()
        return m2[:, None] - m2[None, :]


def _embed(amplitudes: np.ndarray) -> np.ndarray:
    rho = np.zeros((8, 8), dtype=complex)
    idx = [one_hot_index(3, k) for k in (1, 2, 3)]
    rho[np.ix_(idx, idx)] = amplitudes
    return rho


def damping_exponent(x_m: float, p: WavePacketParams) -> np.ndarray:
    """Real Gaussian damping exponents (>= 0) of every ``(j, k)`` coherence at ``x``."""
    x = x_m / p.hbar_c
    dm2 = p.dm2_matrix()
    coh = (dm2 * x / (4.0 * math.sqrt(2.0) * p.E0 ** 2 * p.sigma_x)) ** 2
    loc = (p.xi * dm2 / (4.0 * math.sqrt(2.0) * p.E0 * p.sigma_p)) ** 2
    return coh + loc


def rho_stationary(flavor, x_m: float, p: WavePacketParams) -> np.ndarray:
    """Time-averaged 8x8 density matrix of flavor ``flavor`` at distance ``x_m`` (m)."""
    if x_m < 0:
        raise UnitError(f"distance must be non-negative, got {x_m}")
    row = flavor_row(flavor, 3) - 1
    u = u3(p.mixing)[row]
    x = x_m / p.hbar_c
    phase = -p.dm2_matrix() * x / (2.0 * p.E0)
    amp = np.outer(u, u.conj()) * np.exp(1j * phase - damping_exponent(x_m, p))
    return _embed(amp)


def kinematics(p: WavePacketParams, m1: float = 0.0):
    """Energies, momenta and group velocities ``(E_j, p_j, v_j)`` of the mass states."""
    m2 = p.mass_squares(m1)
    e = p.E0 + p.xi * m2 / (2.0 * p.E0)
    mom = p.E0 - (1.0 - p.xi) * m2 / (2.0 * p.E0)
    v = 1.0 - m2 / (2.0 * e ** 2)
    return e, mom, v


def rho_dynamic(flavor, x_m: float, t_m: float, p: WavePacketParams,
                m1: float = 0.0, normalize: bool = True) -> np.ndarray:
    """
    Space-time density matrix at position ``x_m`` and time ``t_m`` (light-meters).

    With ``normalize`` the spatial-density prefactor is dropped and the
    matrix rescaled to unit trace. Exploratory: at macroscopic distances
    ``x - v t`` loses precision in double arithmetic.
    """
    row = flavor_row(flavor, 3) - 1
    u = u3(p.mixing)[row]
    x = x_m / p.hbar_c
    t = t_m / p.hbar_c
    e, mom, v = kinematics(p, m1)
    g = -((x - v * t) ** 2) / (4.0 * p.sigma_x ** 2)
    phase = -e * t + mom * x
    if normalize:
        g = g - g.max()
    amp = np.outer(u, u.conj()) * np.exp(1j * (phase[:, None] - phase[None, :]) + g[:, None] + g[None, :])
    if normalize:
        amp /= np.trace(amp).real
    else:
        amp /= math.sqrt(2.0 * math.pi * p.sigma_x ** 2)
    return _embed(amp)


@dataclass(frozen=True)
class CoherenceProfile:
    x_grid: np.ndarray
    curves: dict
    average: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.x_grid) <= 0):
            raise ValueError("distance grid must be strictly increasing")


def negativity_at(flavor, x_m: float, p: WavePacketParams, n_a: int = 2):
    rho = check_density_matrix(rho_stationary(flavor, x_m, p))
    return {b: _log_negativity(rho, b) for b in bipartitions(3, n_a)}


def negativity_profile(flavor, x_grid, p: WavePacketParams, n_a: int = 2) -> CoherenceProfile:
    """Per-bipartition and average log-negativity along ``x_grid`` (meters)."""
    x_grid = np.asarray(x_grid, dtype=float)
    if np.any(np.diff(x_grid) <= 0):
        raise ValueError("distance grid must be strictly increasing")
    splits = bipartitions(3, n_a)
    curves = {b: np.empty(x_grid.size) for b in splits}
    for i, x in enumerate(x_grid):
        vals = negativity_at(flavor, x, p, n_a)
        for b in splits:
            curves[b][i] = vals[b]
    average = np.mean(np.array([curves[b] for b in splits]), axis=0)
    return CoherenceProfile(x_grid, curves, average)


def average_negativity_at(flavor, x_m: float, p: WavePacketParams) -> float:
    return float(np.mean(list(negativity_at(flavor, x_m, p).values())))


def vanishing_distance(fn, eps: float, bracket: tuple[float, float],
                       points_per_decade: int = 20, rel_width: float = 0.01) -> float:
    """
    Smallest ``x`` in ``bracket`` with ``fn(x) <= eps``.

    A log-spaced scan finds the first grid cell where ``fn`` drops to ``eps``;
    bisection in ``log x`` then narrows the cell to ``rel_width``. The upper
    end of the final cell is returned.
    """
    lo, hi = bracket
    if not 0 < lo < hi:
        raise BracketInvalid(f"bad bracket {bracket}")
    if fn(lo) <= eps:
        raise BracketInvalid(f"value at x_lo={lo:g} is already <= {eps:g}")
    if fn(hi) > eps:
        raise BracketInvalid(f"value at x_hi={hi:g} is still > {eps:g}")
    n = max(2, int(math.ceil(points_per_decade * math.log10(hi / lo))) + 1)
    grid = np.geomspace(lo, hi, n)
    a = lo
    b = hi
    for x in grid[1:]:
        if fn(x) <= eps:
            b = x
            break
        a = x
    while b / a - 1.0 > rel_width:
        mid = math.sqrt(a * b)
        if fn(mid) <= eps:
            b = mid
        else:
            a = mid
    return float(b)


def decoherence_length(flavor, p: WavePacketParams, eps: float = ZERO_THRESHOLD,
                       bracket: tuple[float, float] = (1e3, 1e13)) -> float:
    """Distance (m) at which the average 2:1 log-negativity first drops to ``eps``."""
    return vanishing_distance(lambda x: average_negativity_at(flavor, x, p), eps, bracket)


def bipartition_vanishing_distance(flavor, split: Bipartition, p: WavePacketParams,
                                   eps: float = ZERO_THRESHOLD,
                                   bracket: tuple[float, float] = (1e3, 1e13)) -> float:
    """Like ``decoherence_length`` for a single bipartition."""
    return vanishing_distance(lambda x: negativity_at(flavor, x, p)[split], eps, bracket)
