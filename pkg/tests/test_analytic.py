import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flavorent.analytic import (
    W3_MU_MAX_13_2,
    W4_MU_MAX_1,
    W4_MU_MAX_2,
    W4_TABLE,
    W21,
    W31,
    _evaluate,
    canonical_splits4,
    w3_eigs,
    w3_entropy,
    w4_eigs,
    w4_entropy,
)
from flavorent.errors import IndexOutOfRange, UnknownSplit
from flavorent.measures import Bipartition, bipartitions, entropy_of_bipartition, schmidt_spectrum
from flavorent.mixing import maximal3, maximal4_phases, u3f, u4f
from flavorent.states import flavor_state

phases = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


def split(n, side):
    return Bipartition.from_side(n, side)


def test_reference_constants():
    assert W21 == pytest.approx(0.9182958340544896, abs=1e-15)
    assert W31 == pytest.approx(0.8112781244591328, abs=1e-15)


def test_w3_examples():
    for d in (0.0, 1.0, 4.0):
        for b in bipartitions(3, 2):
            assert w3_entropy("e", b, d) == pytest.approx(W21, abs=1e-15)
    assert w3_entropy("mu", split(3, (1, 3)), W3_MU_MAX_13_2) == pytest.approx(1.0, abs=1e-12)
    assert w3_entropy("mu", split(3, (1, 3)), 0.0) == pytest.approx(0.2632565778259573, abs=1e-12)
    np.testing.assert_allclose(w3_eigs("mu", split(3, (2,)), 0.0), [1 / 3 - 1 / (2 * math.sqrt(3)), 2 / 3 + 1 / (2 * math.sqrt(3))])


def test_w4_examples():
    e1 = w4_eigs("e", split(4, (1,)), 0.3, 1.2, 2.0)
    np.testing.assert_allclose(e1, [0.25, 0.75], atol=1e-15)
    np.testing.assert_allclose(w4_eigs("mu", split(4, (3,)), 1.0, math.pi - 1.0, 0.2), [0.25, 0.75], atol=1e-14)
    np.testing.assert_allclose(w4_eigs("mu", split(4, (1, 2)), 0.4, math.pi - 0.4, 0.0), [0, 0, 0.5, 0.5], atol=1e-14)
    assert w4_entropy("s", split(4, (4,)), 0.1, 0.2, 0.3) == pytest.approx(W31, abs=1e-14)
    a = W4_MU_MAX_1
    assert w4_entropy("mu", split(4, (1,)), a, a, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert w4_entropy("mu", split(4, (1,)), -a, -a, 0.0) == pytest.approx(1.0, abs=1e-12)
    b = W4_MU_MAX_2
    assert w4_entropy("mu", split(4, (2,)), b, b, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_complement_sides_are_accepted():
    b = split(4, (2, 3, 4))
    np.testing.assert_allclose(w4_eigs("tau", b, 0.5, 1.5, 2.5)[-2:], w4_eigs("tau", split(4, (1,)), 0.5, 1.5, 2.5))
    assert w4_eigs("tau", b, 0.5, 1.5, 2.5).shape == (8,)


def test_unknown_splits():
    with pytest.raises(UnknownSplit):
        w4_eigs("mu", split(3, (1,)), 0, 0, 0)
    with pytest.raises(IndexOutOfRange):
        w3_eigs("s", split(3, (1,)), 0)


def test_table_covers_every_canonical_split():
    for f in ("e", "mu", "tau", "s"):
        for b in canonical_splits4():
            assert (f, b.side_a) in W4_TABLE


def test_mu_entries_have_no_delta34_dependence():
    for (flavor, _), (_, entries) in W4_TABLE.items():
        if flavor == "mu":
            assert all(c == 0 for entry in entries for (_, _, c) in entry[1])


@settings(max_examples=100, deadline=None)
@given(phases, phases, phases)
def test_raw_pairs_sum_to_one_and_stay_physical(d14, d23, d34):
    for denom, entries in W4_TABLE.values():
        vals = [_evaluate(e, d14, d23, d34) / denom for e in entries]
        assert sum(vals) == pytest.approx(1.0, abs=1e-12)
        assert all(-1e-12 <= v <= 1 + 1e-12 for v in vals)


@settings(max_examples=60, deadline=None)
@given(phases, phases, phases)
def test_w4_closed_forms_match_numerics(d14, d23, d34):
    u = u4f(maximal4_phases(d14, d23, d34))
    for f in ("e", "mu", "tau", "s"):
        psi = flavor_state(u, f)
        for b in canonical_splits4():
            np.testing.assert_allclose(w4_eigs(f, b, d14, d23, d34), schmidt_spectrum(psi, b), atol=1e-10)
            assert w4_entropy(f, b, d14, d23, d34) == pytest.approx(entropy_of_bipartition(psi, b), abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(phases)
def test_w3_closed_forms_match_numerics(d):
    u = u3f(maximal3(d))
    for f in ("e", "mu", "tau"):
        psi = flavor_state(u, f)
        for b in bipartitions(3, 2) + bipartitions(3, 1):
            assert w3_entropy(f, b, d) == pytest.approx(entropy_of_bipartition(psi, b), abs=1e-10)
