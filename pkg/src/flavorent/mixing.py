"""
Three- and four-flavor mixing matrices and their parameter presets.

Everything here is in radians. The only degree conversion happens when the
CKM preset is built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

TWO_PI = 2.0 * math.pi


def _wrap_phase(x: float) -> float:
    x = math.fmod(float(x), TWO_PI)
    if x < 0.0:
        x += TWO_PI
    # fmod can land exactly on 2*pi after the shift for tiny negative inputs
    return 0.0 if x >= TWO_PI else x


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class MixingParams3:
    """Angles ``theta12, theta13, theta23`` and CP phase ``delta`` (radians).

    ``delta`` is wrapped into ``[0, 2*pi)`` on construction.
    """

    theta12: float
    theta13: float
    theta23: float
    delta: float = 0.0

    def __post_init__(self):
        _check_finite(theta12=self.theta12, theta13=self.theta13, theta23=self.theta23, delta=self.delta)
        object.__setattr__(self, "delta", _wrap_phase(self.delta))

    def with_delta(self, delta: float) -> "MixingParams3":
        return replace(self, delta=delta)

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.theta12, self.theta13, self.theta23)


@dataclass(frozen=True)
class MixingParams4:
    """Six angles and the three phases ``delta14, delta23, delta34`` (radians)."""

    theta12: float
    theta13: float
    theta14: float
    theta23: float
    theta24: float
    theta34: float
    delta14: float = 0.0
    delta23: float = 0.0
    delta34: float = 0.0

    def __post_init__(self):
        _check_finite(**{k: getattr(self, k) for k in self.__dataclass_fields__})
        for k in ("delta14", "delta23", "delta34"):
            object.__setattr__(self, k, _wrap_phase(getattr(self, k)))

    def with_phases(self, delta14: float, delta23: float, delta34: float) -> "MixingParams4":
        return replace(self, delta14=delta14, delta23=delta23, delta34=delta34)


def u3(p: MixingParams3) -> np.ndarray:
    """Standard three-flavor parametrization with the phase on ``s13``."""
    c12, s12 = math.cos(p.theta12), math.sin(p.theta12)
    c13, s13 = math.cos(p.theta13), math.sin(p.theta13)
    c23, s23 = math.cos(p.theta23), math.sin(p.theta23)
    e = complex(math.cos(p.delta), math.sin(p.delta))
    return np.array(
        [
            [c12 * c13, s12 * c13, s13 / e],
            [-s12 * c23 - c12 * s23 * s13 * e, c12 * c23 - s12 * s23 * s13 * e, s23 * c13],
            [s12 * s23 - c12 * c23 * s13 * e, -c12 * s23 - s12 * c23 * s13 * e, c23 * c13],
        ],
        dtype=complex,
    )


def u3f(p: MixingParams3) -> np.ndarray:
    """``u3`` with its third column multiplied by ``exp(i delta)``."""
    u = u3(p)
    u[:, 2] *= complex(math.cos(p.delta), math.sin(p.delta))
    return u


def _rotation(i: int, j: int, theta: float, phase: float = 0.0) -> np.ndarray:
    """4x4 rotation in the (i, j) plane (0-based) with an optional phase."""
    r = np.eye(4, dtype=complex)
    c, s = math.cos(theta), math.sin(theta)
    z = complex(math.cos(phase), math.sin(phase))
    r[i, i] = r[j, j] = c
    r[i, j] = s / z
    r[j, i] = -s * z
    return r


def u4f(p: MixingParams4) -> np.ndarray:
    """Four-flavor matrix ``U34 U24 U23 U14 U13 U12 U_delta(delta14)``."""
    u_delta = np.diag([1, 1, 1, complex(math.cos(p.delta14), math.sin(p.delta14))])
    factors = (
        _rotation(2, 3, p.theta34, p.delta34),
        _rotation(1, 3, p.theta24),
        _rotation(1, 2, p.theta23, p.delta23),
        _rotation(0, 3, p.theta14, p.delta14),
        _rotation(0, 2, p.theta13),
        _rotation(0, 1, p.theta12),
        u_delta,
    )
    out = np.eye(4, dtype=complex)
    for f in factors:
        out = out @ f
    return out


THETA13_MAX = math.acos(math.sqrt(2.0 / 3.0))


def maximal3(delta: float = math.pi / 2) -> MixingParams3:
    """Angles giving ``|U_ij| = 1/sqrt(3)`` for every entry; phase free."""
    return MixingParams3(math.pi / 4, THETA13_MAX, math.pi / 4, delta)


MAXIMAL4_ANGLES = dict(
    theta12=math.pi / 4,
    theta13=THETA13_MAX,
    theta14=math.pi / 6,
    theta23=math.pi / 6,
    theta24=math.asin(math.sqrt(1.0 / 3.0)),
    theta34=math.pi / 4,
)


def maximal4(phi: float = 0.0) -> MixingParams4:
    """Maximal four-flavor preset with phases ``(phi, pi - phi, phi)``."""
    return MixingParams4(**MAXIMAL4_ANGLES, delta14=phi, delta23=math.pi - phi, delta34=phi)


def maximal4_phases(delta14: float, delta23: float, delta34: float) -> MixingParams4:
    """Maximal four-flavor angles with arbitrary phases."""
    return MixingParams4(**MAXIMAL4_ANGLES, delta14=delta14, delta23=delta23, delta34=delta34)


def u4f_max_closed(phi: float) -> np.ndarray:
    """Closed form of ``u4f(maximal4(phi))``."""
    z = complex(math.cos(phi), math.sin(phi))
    return 0.5 * np.array(
        [[1, 1, 1, 1], [-1, 1, -z, z], [-1, -1, 1, 1], [1, -1, -z, z]],
        dtype=complex,
    )


def u3f_max_closed() -> np.ndarray:
    y = complex(math.cos(TWO_PI / 3), math.sin(TWO_PI / 3))
    return np.array([[1, 1, 1], [1j * y, 1j * y * y, 1j], [1j * y * y, 1j * y, 1j]]) / math.sqrt(3)


def angle_from_sin2(s2: float) -> float:
    """Principal branch ``arcsin(sqrt(s2))`` in ``[0, pi/2]``."""
    if not 0.0 <= s2 <= 1.0:
        raise ValueError(f"sin^2 value {s2} outside [0, 1]")
    return math.asin(math.sqrt(s2))


def angle_extent_from_sin2(central: float, lower: float, upper: float) -> float:
    """
    Angular uncertainty from an asymmetric ``sin^2`` interval.

    The side with the larger fractional ``sin^2`` uncertainty is propagated
    through ``arcsin(sqrt(.))``.
    """
    up = (upper - central) / central
    down = (central - lower) / central
    theta = angle_from_sin2(central)
    if up >= down:
        return angle_from_sin2(upper) - theta
    return theta - angle_from_sin2(lower)


@dataclass(frozen=True)
class ExperimentalPreset:
    """
    Central mixing angles with uncertainties.

    ``theta_extent`` is the quoted angular uncertainty and ``theta_sigma``
    the 1-sigma spread used for Gaussian sampling. ``delta`` is ``None``
    when the phase is undetermined and has to be supplied by the caller.
    """

    name: str
    theta: tuple[float, float, float]
    theta_extent: tuple[float, float, float]
    theta_sigma: tuple[float, float, float]
    delta: float | None = None
    delta_sigma: float | None = None
    dm2_small: float | None = None
    dm2_large: float | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if min(self.theta_extent) < 0 or min(self.theta_sigma) < 0:
            raise ValueError("spreads must be non-negative")
        if self.delta_sigma is not None and self.delta_sigma < 0:
            raise ValueError("spreads must be non-negative")

    def params(self, delta: float | None = None) -> MixingParams3:
        if delta is None:
            delta = self.delta
        if delta is None:
            raise ValueError(f"preset {self.name!r} has no phase; pass delta explicitly")
        return MixingParams3(*self.theta, delta)


def _ckm() -> ExperimentalPreset:
    deg = math.radians
    angles = (deg(13.0), deg(0.2), deg(2.4))
    spread = (deg(0.1),) * 3
    return ExperimentalPreset("ckm", angles, spread, spread, delta=1.05, delta_sigma=0.24)


# sin^2 theta: (central, lower, upper)
MNSP_SIN2 = {
    "theta12": (0.314, 0.314 * (1 - 0.15), 0.314 * (1 + 0.18)),
    "theta13": (0.008, 0.0, 0.008 + 0.023),
    "theta23": (0.45, 0.45 * (1 - 0.20), 0.45 * (1 + 0.35)),
}


def _mnsp() -> ExperimentalPreset:
    keys = ("theta12", "theta13", "theta23")
    angles = tuple(angle_from_sin2(MNSP_SIN2[k][0]) for k in keys)
    extent = tuple(angle_extent_from_sin2(*MNSP_SIN2[k]) for k in keys)
    sigma = tuple(e / 3.0 for e in extent)
    return ExperimentalPreset(
        "mnsp", angles, extent, sigma, delta=None, dm2_small=7.92e-5, dm2_large=2.6e-3,
        notes={"sin2": MNSP_SIN2},
    )


CKM = _ckm()
MNSP = _mnsp()


def presets() -> dict:
    """All parameter presets keyed by name."""
    return {"maximal3": maximal3, "maximal4": maximal4, "ckm": CKM, "mnsp": MNSP}
