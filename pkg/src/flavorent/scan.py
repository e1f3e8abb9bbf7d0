"""
Table, sweep and Monte-Carlo drivers behind the command line.

Every driver returns a :class:`CsvTable`; rendering it is deterministic so
repeated runs with the same inputs produce byte-identical text.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import BadSpec, FlavorEntError
from .measures import average_entropy, average_negativity, bipartitions
from .mixing import CKM, MNSP, MixingParams3, maximal3, maximal4_phases, u3, u3f, u4f
from .states import QUARK_FLAVORS, density_matrix, flavor_state
from .wavepacket import (
    WavePacketParams,
    bipartition_vanishing_distance,
    decoherence_length,
    negativity_profile,
)


def _fmt_value(v, float_fmt: str) -> str:
    if isinstance(v, (float, np.floating)):
        return float_fmt % v
    return str(v)


@dataclass
class CsvTable:
    """Header parameters, column names and rows of a CSV document."""

    params: dict
    columns: list
    rows: list = field(default_factory=list)
    float_fmt: str = "%.9g"

    def render(self) -> str:
        buf = io.StringIO()
        meta = {"flavorent": __version__, **self.params}
        buf.write("# " + " ".join(f"{k}={_fmt_value(v, '%.9g')}" for k, v in meta.items()) + "\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt_value(v, self.float_fmt) for v in row) + "\n")
        return buf.getvalue()


SPLIT_KEYS3 = [b.key for b in bipartitions(3, 2)]


def entropy_row(u: np.ndarray, flavor) -> list[float]:
    """2:1 entropies of one flavor row followed by their average."""
    rep = average_entropy(flavor_state(u, flavor), 2)
    return rep.values() + [rep.average]


def table_quark() -> CsvTable:
    """Entropies of the three quark flavor states at the central CKM values."""
    u = u3(CKM.params())
    table = CsvTable(
        {"command": "table-quark", "preset": "ckm", "delta": CKM.delta},
        ["flavor"] + SPLIT_KEYS3 + ["average"],
        float_fmt="%.4f",
    )
    for f in QUARK_FLAVORS:
        table.rows.append([f] + entropy_row(u, f))
    return table


def neutrino_entropy_grid(deltas, flavor, theta=MNSP.theta) -> np.ndarray:
    """Array ``[len(deltas), 4]`` of 2:1 entropies and average along ``deltas``."""
    return np.array([entropy_row(u3(MixingParams3(*theta, d)), flavor) for d in deltas])


def table_neutrino(delta_grid: int = 256) -> CsvTable:
    """
    Entropies of e, mu, tau at central MNSP angles.

    Every column is reported as ``min`` and ``max`` over a uniform grid of
    ``delta_grid`` phases in ``[0, 2*pi)``; for the electron row they agree.
    """
    if delta_grid < 64:
        raise BadSpec(f"delta grid must have at least 64 points, got {delta_grid}")
    deltas = np.arange(delta_grid) * (2.0 * math.pi / delta_grid)
    cols = ["flavor"]
    for k in SPLIT_KEYS3 + ["average"]:
        cols += [f"{k}_min", f"{k}_max"]
    table = CsvTable({"command": "table-neutrino", "preset": "mnsp", "delta_grid": delta_grid}, cols,
                     float_fmt="%.4f")
    for f in ("e", "mu", "tau"):
        vals = neutrino_entropy_grid(deltas, f)
        row = [f]
        for j in range(vals.shape[1]):
            row += [vals[:, j].min(), vals[:, j].max()]
        table.rows.append(row)
    return table


# ---------------------------------------------------------------- sweeps

FAMILY_PARAMS = {
    "maximal3": ("delta",),
    "maximal4": ("delta14", "delta23", "delta34"),
    "ckm": ("theta12", "theta13", "theta23", "delta"),
    "mnsp": ("theta12", "theta13", "theta23", "delta"),
}


def family_defaults(family: str) -> dict:
    if family == "maximal3":
        return {"delta": math.pi / 2}
    if family == "maximal4":
        return {"delta14": 0.0, "delta23": math.pi, "delta34": 0.0}
    if family == "ckm":
        return dict(zip(FAMILY_PARAMS["ckm"], CKM.theta + (CKM.delta,)))
    if family == "mnsp":
        # the phase is undetermined and must be set or swept
        return dict(zip(FAMILY_PARAMS["mnsp"][:3], MNSP.theta))
    raise BadSpec(f"unknown family {family!r}; choose from {sorted(FAMILY_PARAMS)}")


def family_unitary(family: str, values: dict) -> np.ndarray:
    if family == "maximal3":
        return u3f(maximal3(values["delta"]))
    if family == "maximal4":
        return u4f(maximal4_phases(values["delta14"], values["delta23"], values["delta34"]))
    return u3(MixingParams3(values["theta12"], values["theta13"], values["theta23"], values["delta"]))


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """``NAME:START:STOP:COUNT``; ``pi`` and simple expressions like ``2*pi`` allowed."""
        parts = text.split(":")
        if len(parts) != 4:
            raise BadSpec(f"axis {text!r} is not NAME:START:STOP:COUNT")
        try:
            count = int(parts[3])
        except ValueError:
            raise BadSpec(f"axis count {parts[3]!r} is not an integer") from None
        return cls(parts[0], parse_number(parts[1]), parse_number(parts[2]), count)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


def parse_number(text: str) -> float:
    """Float literal, optionally a product/quotient with ``pi`` (``pi/2``, ``2*pi``)."""
    t = text.strip().lower()
    try:
        return float(t)
    except ValueError:
        pass
    value = 1.0
    tokens = t.replace("/", " / ").replace("*", " * ").split()
    op = "*"
    for tok in tokens:
        if tok in ("*", "/"):
            op = tok
            continue
        if tok == "pi":
            x = math.pi
        else:
            try:
                x = float(tok)
            except ValueError:
                raise BadSpec(f"cannot parse number {text!r}") from None
        value = value * x if op == "*" else value / x
    if not tokens or not math.isfinite(value):
        raise BadSpec(f"cannot parse number {text!r}")
    return value


@dataclass(frozen=True)
class SweepSpec:
    """One- or two-axis grid over the parameters of a mixing family."""

    family: str
    flavor: str
    axes: tuple
    fixed: dict = field(default_factory=dict)
    measure: str = "entropy"
    split: int = 1

    def __post_init__(self):
        if self.family not in FAMILY_PARAMS:
            raise BadSpec(f"unknown family {self.family!r}; choose from {sorted(FAMILY_PARAMS)}")
        allowed = FAMILY_PARAMS[self.family]
        if not 1 <= len(self.axes) <= 2:
            raise BadSpec("a sweep needs one or two axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise BadSpec(f"repeated axis in {names}")
        for a in self.axes:
            if a.name not in allowed:
                raise BadSpec(f"family {self.family} has no parameter {a.name!r}; choose from {allowed}")
            if a.count < 2:
                raise BadSpec(f"axis {a.name} needs count >= 2")
            if not a.start < a.stop:
                raise BadSpec(f"axis {a.name} needs start < stop")
        for k, v in self.fixed.items():
            if k not in allowed:
                raise BadSpec(f"family {self.family} has no parameter {k!r}")
            if k in names:
                raise BadSpec(f"{k} is both swept and fixed")
            if not math.isfinite(v):
                raise BadSpec(f"{k} must be finite")
        missing = set(allowed) - set(self.base_values()) - set(names)
        if missing:
            raise BadSpec(f"family {self.family} needs a value for {sorted(missing)}")
        if self.measure not in ("entropy", "negativity"):
            raise BadSpec(f"measure must be entropy or negativity, got {self.measure!r}")
        if not 1 <= self.split < self.n_qubits:
            raise BadSpec(f"split size must be in 1..{self.n_qubits - 1}")

    @property
    def n_qubits(self) -> int:
        return 4 if self.family == "maximal4" else 3

    def base_values(self) -> dict:
        return {**family_defaults(self.family), **self.fixed}


def _measure(psi: np.ndarray, measure: str, split: int):
    if measure == "entropy":
        return average_entropy(psi, split)
    return average_negativity(density_matrix(psi), split, check=False)


def sweep(spec: SweepSpec) -> CsvTable:
    """Per-bipartition measure and average at every grid point, row-major."""
    names = [a.name for a in spec.axes]
    splits = bipartitions(spec.n_qubits, spec.split)
    params = {"command": "sweep", "family": spec.family, "flavor": spec.flavor,
              "measure": spec.measure, "split": spec.split}
    for a in spec.axes:
        params[f"axis_{a.name}"] = f"{a.start:.9g}:{a.stop:.9g}:{a.count}"
    params.update({k: float(v) for k, v in sorted(spec.fixed.items())})
    table = CsvTable(params, names + [b.key for b in splits] + ["average"])
    base = spec.base_values()
    for point in itertools.product(*(a.grid() for a in spec.axes)):
        values = {**base, **dict(zip(names, point))}
        psi = flavor_state(family_unitary(spec.family, values), spec.flavor)
        rep = _measure(psi, spec.measure, spec.split)
        table.rows.append([float(x) for x in point] + rep.values() + [rep.average])
    return table


# ---------------------------------------------------------------- Monte Carlo

MAX_REJECTIONS = 100


@dataclass(frozen=True)
class McSpec:
    """Gaussian sampling of the MNSP angles; sigma is ``sigma_fraction`` of the quoted extent."""

    samples: int = 100
    seed: int = 0
    sigma_fraction: float = 1.0 / 3.0
    delta_grid: int = 64
    flavor: str = "mu"

    def __post_init__(self):
        if self.samples < 1:
            raise BadSpec("samples must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise BadSpec("seed must be an unsigned 64-bit integer")
        if not self.sigma_fraction >= 0:
            raise BadSpec("sigma fraction must be non-negative")
        if self.delta_grid < 2:
            raise BadSpec("delta grid needs at least 2 points")

    @property
    def sigmas(self) -> np.ndarray:
        return self.sigma_fraction * np.asarray(MNSP.theta_extent)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for sample ``index``."""
    return np.random.Generator(np.random.Philox(key=seed ^ index))


def draw_angles(rng: np.random.Generator, central, sigmas) -> np.ndarray:
    """One Gaussian draw per angle, resampled until it lies in ``[0, pi/2]``."""
    out = np.empty(len(central))
    for j, (mu, s) in enumerate(zip(central, sigmas)):
        for _ in range(MAX_REJECTIONS):
            x = rng.normal(mu, s)
            if 0.0 <= x <= math.pi / 2:
                break
        else:
            raise FlavorEntError(f"angle {j} could not be drawn inside [0, pi/2]")
        out[j] = x
    return out


def monte_carlo(spec: McSpec) -> CsvTable:
    """
    Band of the 2:1 entropies along a ``delta`` grid on ``[0, 2*pi)``.

    Each sample draws one set of angles which is then used for the whole
    ``delta`` curve.
    """
    deltas = np.arange(spec.delta_grid) * (2.0 * math.pi / spec.delta_grid)
    central = neutrino_entropy_grid(deltas, spec.flavor)
    draws = np.empty((spec.samples,) + central.shape)
    for i in range(spec.samples):
        theta = draw_angles(sample_rng(spec.seed, i), MNSP.theta, spec.sigmas)
        draws[i] = neutrino_entropy_grid(deltas, spec.flavor, tuple(theta))
    p16, p84 = np.percentile(draws, [16.0, 84.0], axis=0)
    params = {"command": "mc", "preset": "mnsp", "flavor": spec.flavor, "samples": spec.samples,
              "seed": spec.seed, "sigma_fraction": spec.sigma_fraction, "delta_grid": spec.delta_grid}
    table = CsvTable(params, ["delta", "split", "central", "mean", "min", "max", "p16", "p84"])
    keys = SPLIT_KEYS3 + ["average"]
    for i, d in enumerate(deltas):
        for j, k in enumerate(keys):
            col = draws[:, i, j]
            table.rows.append([float(d), k, central[i, j], col.mean(), col.min(), col.max(),
                               p16[i, j], p84[i, j]])
    return table


# ---------------------------------------------------------------- wave packets


def wavepacket_table(flavor, p: WavePacketParams, x_min: float, x_max: float, points: int) -> CsvTable:
    """2:1 log-negativities on a log-spaced distance grid (meters)."""
    if not 0 < x_min < x_max:
        raise BadSpec("need 0 < x_min < x_max")
    if points < 2:
        raise BadSpec("need at least 2 grid points")
    grid = np.geomspace(x_min, x_max, points)
    prof = negativity_profile(flavor, grid, p)
    splits = list(prof.curves)
    table = CsvTable(
        {"command": "wavepacket", "flavor": flavor, **wavepacket_header(p)},
        ["x_m"] + [b.key for b in splits] + ["average"],
    )
    for i, x in enumerate(grid):
        table.rows.append([float(x)] + [float(prof.curves[b][i]) for b in splits] + [float(prof.average[i])])
    return table


def wavepacket_header(p: WavePacketParams) -> dict:
    m = p.mixing
    return {"E0": p.E0, "sigma_p": p.sigma_p, "xi": p.xi, "dm2_21": p.dm2_21, "dm2_31": p.dm2_31,
            "dm2_32": p.dm2_32, "theta12": m.theta12, "theta13": m.theta13, "theta23": m.theta23,
            "delta": m.delta, "hbar_c": p.hbar_c}


def decoherence_table(flavor, p: WavePacketParams, eps: float, bracket) -> CsvTable:
    """Decoherence length plus the vanishing distance of each 2:1 split."""
    table = CsvTable(
        {"command": "decoherence-length", "flavor": flavor, "eps": eps, **wavepacket_header(p)},
        ["quantity", "length_m", "length_km"],
    )
    length = decoherence_length(flavor, p, eps, bracket)
    table.rows.append(["average", length, length / 1e3])
    for b in bipartitions(3, 2):
        try:
            d = bipartition_vanishing_distance(flavor, b, p, eps, bracket)
        except FlavorEntError:
            d = float("nan")
        table.rows.append([b.key, d, d / 1e3])
    return table
