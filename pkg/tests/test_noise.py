import numpy as np
import pytest

from lazyqec.code_model import build_rotated_surface_code, build_schedule
from lazyqec.noise import (
    LocationKind,
    NoiseMode,
    NoiseParams,
    TWO_QUBIT_PAULIS,
    make_rng,
    round_census,
    sample_data_errors,
    sample_faults,
    trial_rng,
)


def test_noise_params_range():
    NoiseParams(0.0)
    NoiseParams(1.0)
    with pytest.raises(ValueError):
        NoiseParams(-0.1)
    with pytest.raises(ValueError):
        NoiseParams(1.5)


def test_two_qubit_pauli_count():
    assert len(TWO_QUBIT_PAULIS) == 15
    assert "II" not in TWO_QUBIT_PAULIS


def test_census_covers_every_location():
    lay = build_rotated_surface_code(3)
    census = round_census(build_schedule(lay))
    kinds = [loc.kind for loc in census]
    assert kinds.count(LocationKind.PREP) == 8
    assert kinds.count(LocationKind.MEAS) == 8
    assert kinds.count(LocationKind.CNOT) == 24
    # every (qubit, timestep) slot is either gated or waiting
    n_total = lay.n_data + len(lay.plaquettes)
    slots = sum(2 if loc.kind is LocationKind.CNOT else 1 for loc in census)
    assert slots == 6 * n_total


def test_measurement_flip_probability():
    lay = build_rotated_surface_code(3)
    census = round_census(build_schedule(lay))
    for loc in census:
        expect = 2 * 0.03 / 3 if loc.kind is LocationKind.MEAS else 0.03
        assert loc.fault_probability(0.03) == pytest.approx(expect)


def test_sampling_reproducible():
    lay = build_rotated_surface_code(3)
    sch = build_schedule(lay)
    a = sample_faults(sch, 4, NoiseParams(0.01), seed=7)
    b = sample_faults(sch, 4, NoiseParams(0.01), seed=7)
    assert a == b
    c = sample_faults(sch, 4, NoiseParams(0.01), seed=8)
    assert a != c


def test_p_zero_no_faults():
    lay = build_rotated_surface_code(3)
    sch = build_schedule(lay)
    assert sample_faults(sch, 5, NoiseParams(0.0), seed=1) == []


def test_data_errors_p_limits():
    lay = build_rotated_surface_code(3)
    none = sample_data_errors(lay, NoiseParams(0.0, NoiseMode.PERFECT_MEASUREMENT), seed=3)
    assert none == set()
    full = sample_data_errors(lay, NoiseParams(1.0, NoiseMode.PERFECT_MEASUREMENT), seed=3)
    assert full == {(q, "Z") for q in range(lay.n_data)}


def test_fault_rate_matches_p():
    lay = build_rotated_surface_code(3)
    sch = build_schedule(lay)
    census = round_census(sch)
    p = 0.05
    rounds = 400
    faults = sample_faults(sch, rounds, NoiseParams(p), seed=11)
    expected = rounds * sum(loc.fault_probability(p) for loc in census)
    assert abs(len(faults) - expected) < 5 * np.sqrt(expected)


def test_trial_streams_disjoint():
    x = trial_rng(5, 0).random(4)
    y = trial_rng(5, 1).random(4)
    assert not np.allclose(x, y)
    again = trial_rng(5, 0).random(4)
    assert np.allclose(x, again)


def test_make_rng_streams():
    assert make_rng(1, 0).random() != make_rng(1, 1).random()
    assert make_rng(1, 2).random() == make_rng(1, 2).random()
