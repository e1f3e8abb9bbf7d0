"""
Closed-form reduced spectra of the maximal-angle W-like flavor states.

Three flavors: rows e, mu, tau of ``u3f(maximal3(delta))``.
Four flavors: rows e, mu, tau, s of ``u4f`` at the maximal angles with free
phases ``(delta14, delta23, delta34)``.

Each four-flavor eigenvalue is stored as data,

    (constant + sum_k coef_k * cos(a_k*delta14 + b_k*delta23 + c_k*delta34)) / denominator

so a wrong coefficient is a one-entry fix, and every pair can be checked to
sum to one.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnknownSplit
from .measures import Bipartition, shannon_bits
from .states import flavor_row

# phase combinations (multipliers of delta14, delta23, delta34)
C14 = (1, 0, 0)
C23 = (0, 1, 0)
C34 = (0, 0, 1)
S = (1, 1, 0)  # d14 + d23
D1 = (1, 0, -1)  # d14 - d34
D2 = (1, -1, -1)  # d14 - d23 - d34
P = (0, 1, 1)  # d23 + d34
Q = (0, 2, 1)  # 2 d23 + d34

_QUARTER = (4, ((3, {}), (1, {})))
_HALF = (2, ((1, {}), (1, {})))

# (flavor, canonical side) -> (denominator, (entry, entry)); entry = (constant, {phase: coef})
W4_TABLE = {
    ("e", (1,)): _QUARTER,
    ("e", (2,)): _QUARTER,
    ("e", (3,)): _QUARTER,
    ("e", (4,)): _QUARTER,
    ("mu", (4,)): _QUARTER,
    ("tau", (4,)): _QUARTER,
    ("s", (4,)): _QUARTER,
    ("mu", (1,)): (36, ((25, {C14: -6, C23: -6, S: -2}), (11, {C14: 6, C23: 6, S: 2}))),
    ("mu", (2,)): (36, ((11, {C14: -6, C23: -6, S: 2}), (25, {C14: 6, C23: 6, S: -2}))),
    ("mu", (3,)): (36, ((5, {S: -4}), (31, {S: 4}))),
    ("tau", (1,)): (72, (
        (16, {C14: -6, C23: -6, S: -2, D1: 6, D2: -6, C34: -9, P: 6, Q: 3}),
        (56, {C14: 6, C23: 6, S: 2, D1: -6, D2: 6, C34: 9, P: -6, Q: -3}),
    )),
    ("tau", (2,)): (72, (
        (56, {C14: -6, C23: -6, S: 2, D1: -6, D2: -6, C34: -9, P: -6, Q: 3}),
        (16, {C14: 6, C23: 6, S: -2, D1: 6, D2: 6, C34: 9, P: 6, Q: -3}),
    )),
    ("tau", (3,)): (36, ((11, {S: 2, D1: -6, P: -6}), (25, {S: -2, D1: 6, P: 6}))),
    ("s", (1,)): (72, (
        # P coefficient is +6: with -6 the pair would not sum to one
        (56, {C14: 6, C23: 6, S: 2, D1: 6, D2: -6, C34: -9, P: 6, Q: 3}),
        (16, {C14: -6, C23: -6, S: -2, D1: -6, D2: 6, C34: 9, P: -6, Q: -3}),
    )),
    ("s", (2,)): (72, (
        (16, {C14: 6, C23: 6, S: -2, D1: -6, D2: -6, C34: -9, P: -6, Q: 3}),
        (56, {C14: -6, C23: -6, S: 2, D1: 6, D2: 6, C34: 9, P: 6, Q: -3}),
    )),
    ("s", (3,)): (36, ((25, {S: -2, D1: -6, P: -6}), (11, {S: 2, D1: 6, P: 6}))),
    ("e", (1, 2)): _HALF,
    ("e", (1, 3)): _HALF,
    ("e", (1, 4)): _HALF,
    ("mu", (1, 2)): (18, ((7, {S: -2}), (11, {S: 2}))),
    ("mu", (1, 3)): (18, ((10, {C14: -3, C23: -3, S: 1}), (8, {C14: 3, C23: 3, S: -1}))),
    ("mu", (1, 4)): (18, ((8, {C14: -3, C23: -3, S: -1}), (10, {C14: 3, C23: 3, S: 1}))),
    ("tau", (1, 2)): (18, ((10, {S: 1, D1: -3, P: -3}), (8, {S: -1, D1: 3, P: 3}))),
    ("tau", (1, 3)): (72, (
        # D1 coefficient is -6: with +6 the pair would not sum to one
        (38, {C14: -6, C23: -6, S: 2, D1: -6, D2: -6, C34: -9, P: -6, Q: 3}),
        (34, {C14: 6, C23: 6, S: -2, D1: 6, D2: 6, C34: 9, P: 6, Q: -3}),
    )),
    ("tau", (1, 4)): (72, (
        (34, {C14: -6, C23: -6, S: -2, D1: 6, D2: -6, C34: -9, P: 6, Q: 3}),
        (38, {C14: 6, C23: 6, S: 2, D1: -6, D2: 6, C34: 9, P: -6, Q: -3}),
    )),
    ("s", (1, 2)): (18, ((8, {S: -1, D1: -3, P: -3}), (10, {S: 1, D1: 3, P: 3}))),
    ("s", (1, 3)): (72, (
        (34, {C14: 6, C23: 6, S: -2, D1: -6, D2: -6, C34: -9, P: -6, Q: 3}),
        (38, {C14: -6, C23: -6, S: 2, D1: 6, D2: 6, C34: 9, P: 6, Q: -3}),
    )),
    ("s", (1, 4)): (72, (
        (38, {C14: 6, C23: 6, S: 2, D1: 6, D2: -6, C34: -9, P: 6, Q: 3}),
        (34, {C14: -6, C23: -6, S: -2, D1: -6, D2: 6, C34: 9, P: -6, Q: -3}),
    )),
}

W4_FLAVORS = ("e", "mu", "tau", "s")
W3_FLAVORS = ("e", "mu", "tau")
W21 = math.log2(3) - 2.0 / 3.0
W31 = 2.0 - 0.75 * math.log2(3)


def canonical_splits4() -> list[Bipartition]:
    """The 4 unbalanced and 3 balanced splits with a tabulated spectrum."""
    sides = [(1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4)]
    return [Bipartition.from_side(4, s) for s in sides]


def _flavor_label(flavor, n: int, allowed) -> str:
    row = flavor_row(flavor, n)
    label = ("e", "mu", "tau", "s")[row - 1]
    if label not in allowed:
        raise UnknownSplit(f"no closed form for flavor {flavor!r}")
    return label


def _canonical_side4(b: Bipartition) -> tuple[int, ...]:
    if b.n_qubits != 4:
        raise UnknownSplit(f"expected a 4-qubit split, got {b}")
    if len(b.side_a) == 1:
        return b.side_a
    if len(b.side_b) == 1:
        return b.side_b
    return b.side_a if 1 in b.side_a else b.side_b


def _evaluate(entry, d14: float, d23: float, d34: float) -> float:
    const, terms = entry
    total = float(const)
    for (a, b, c), coef in terms.items():
        total += coef * math.cos(a * d14 + b * d23 + c * d34)
    return total


def w4_eigs(flavor, split: Bipartition, d14: float, d23: float, d34: float) -> np.ndarray:
    """
    Spectrum of the reduction of ``|W_flavor^(4)>`` to ``split.side_a``.

    Ascending, zero-padded to ``2**len(side_a)``. Values within 1e-12 of the
    physical range are clamped into it.
    """
    label = _flavor_label(flavor, 4, W4_FLAVORS)
    side = _canonical_side4(split)
    try:
        denom, entries = W4_TABLE[(label, side)]
    except KeyError:
        raise UnknownSplit(f"no closed form for {label} {split}") from None
    vals = np.array([_evaluate(e, d14, d23, d34) / denom for e in entries])
    vals = np.clip(vals, 0.0, 1.0)
    dim = 1 << len(split.side_a)
    out = np.zeros(dim)
    out[dim - vals.size:] = np.sort(vals)
    return out


def w4_entropy(flavor, split: Bipartition, d14: float, d23: float, d34: float) -> float:
    return shannon_bits(w4_eigs(flavor, split, d14, d23, d34))


def w3_eigs(flavor, split: Bipartition, delta: float) -> np.ndarray:
    """
    Nonzero spectrum (ascending pair) across a 2:1 split of ``|W_flavor^(3)(delta)>``.
    """
    label = _flavor_label(flavor, 3, W3_FLAVORS)
    if split.n_qubits != 3:
        raise UnknownSplit(f"expected a 3-qubit split, got {split}")
    pair = split.side_a if len(split.side_a) == 2 else split.side_b
    shift = math.cos(delta) / (2.0 * math.sqrt(3.0))
    if label == "e" or pair == (1, 2):
        p = 1.0 / 3.0
    elif (label, pair) in (("mu", (1, 3)), ("tau", (2, 3))):
        p = 1.0 / 3.0 - shift
    else:
        p = 1.0 / 3.0 + shift
    return np.sort(np.clip([p, 1.0 - p], 0.0, 1.0))


def w3_entropy(flavor, split: Bipartition, delta: float) -> float:
    return shannon_bits(w3_eigs(flavor, split, delta))


W3_MU_MAX_13_2 = math.acos(-1.0 / math.sqrt(3.0))  # mu, (1,3;2) reaches 1 bit
W3_MU_MAX_23_1 = math.acos(1.0 / math.sqrt(3.0))  # mu, (2,3;1) reaches 1 bit
W4_MU_MAX_1 = math.acos(1.5 * (math.sqrt(2.0) - 1.0))  # mu, (1;2,3,4) at d14 = d23
W4_MU_MAX_2 = math.acos(-1.5 * (math.sqrt(2.0) - 1.0))  # mu, (2;1,3,4) at d14 = d23
