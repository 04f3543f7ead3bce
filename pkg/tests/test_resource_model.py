import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lazyqec.resources import (
    InfeasibleError,
    RequirementReport,
    SystemParams,
    bandwidth_per_qubit,
    chernoff_upper_bound_M,
    format_bits_per_second,
    logical_error_rate,
    max_concurrent_failures,
    render_requirement_table,
    requirement_report,
    select_distance,
)

# the nine standard planning cells: (p, p_target) -> d
NINE_CELLS = {
    (1e-3, 1e-15): 29,
    (1e-4, 1e-15): 15,
    (1e-5, 1e-15): 9,
    (1e-3, 1e-12): 23,
    (1e-4, 1e-12): 11,
    (1e-5, 1e-12): 7,
    (1e-3, 1e-9): 17,
    (1e-4, 1e-9): 7,
    (1e-5, 1e-9): 5,
}


def test_nine_standard_distances():
    for (p, p_target), d in NINE_CELLS.items():
        assert select_distance(p, p_target) == d


def test_logical_error_rate_examples():
    assert logical_error_rate(1e-3, 3) == pytest.approx(0.1 * 0.1**2)
    # p at threshold: rate stays at 0.1 regardless of distance
    assert logical_error_rate(1e-2, 3) == pytest.approx(0.1)
    assert logical_error_rate(1e-2, 99) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        logical_error_rate(1e-3, 4)
    with pytest.raises(ValueError):
        logical_error_rate(0.0, 3)


def test_infeasible_at_threshold():
    with pytest.raises(InfeasibleError):
        select_distance(1e-2, 1e-9)
    with pytest.raises(InfeasibleError):
        select_distance(0.5, 1e-9)


def test_selected_distance_is_minimal():
    # smaller odd distances must miss the target under the same arithmetic
    for (p, p_target), d in NINE_CELLS.items():
        if d > 3:
            assert 0.1 * (100.0 * p) ** (d // 2) > p_target


def test_bandwidth_per_qubit():
    assert bandwidth_per_qubit(15, 1e-6) == pytest.approx(224e6)
    assert bandwidth_per_qubit(3, 1.0) == 8.0
    with pytest.raises(ValueError):
        bandwidth_per_qubit(3, 0.0)


def test_max_concurrent_failures_trivials():
    assert max_concurrent_failures(0.0, 1000, 1e-9) == 0
    assert max_concurrent_failures(1.0, 1000, 1e-9) == 2000


def test_max_concurrent_failures_small_example():
    # K=1, p_fail=0.5, p_L=0.1: terms C(2, k) 0.5^k are 1, 0.75, 0.125... wait
    # C(2,1)*0.5 = 1.0, C(2,2)*0.25 = 0.25; both >= 0.1, so M = 2K = 2
    assert max_concurrent_failures(0.5, 1, 0.1) == 2
    # with a generous target the first term already satisfies the bound
    assert max_concurrent_failures(1e-4, 1, 1e-3) == 0
    assert max_concurrent_failures(1e-4, 1, 1e-5) == 1


def test_max_concurrent_failures_monotone_in_p_fail():
    prev = 0
    for pf in (1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0):
        m = max_concurrent_failures(pf, 500, 1e-9)
        assert m >= prev
        prev = m


def test_max_concurrent_failures_monotone_in_K():
    prev = 0
    for K in (10, 100, 1000, 10000):
        m = max_concurrent_failures(2e-3, K, 1e-9)
        assert m >= prev
        prev = m


def test_max_concurrent_failures_definition():
    # returned M is the smallest m whose next term drops below p_L
    pf, K, pl = 3e-3, 200, 1e-9
    m = max_concurrent_failures(pf, K, pl)
    n = 2 * K

    def term(k):
        return math.comb(n, k) * pf**k

    assert term(m + 1) < pl
    if m > 0:
        assert term(m) >= pl


@given(
    st.floats(min_value=1e-8, max_value=0.5),
    st.integers(min_value=1, max_value=2000),
    st.floats(min_value=1e-15, max_value=1e-2),
)
@settings(max_examples=60, deadline=None)
def test_chernoff_never_undershoots(pf, K, pl):
    exact = max_concurrent_failures(pf, K, pl)
    upper = chernoff_upper_bound_M(pf, K, pl)
    assert upper >= exact
    assert upper <= 2 * K


def test_chernoff_trivials():
    assert chernoff_upper_bound_M(0.0, 100, 1e-9) == 0
    assert chernoff_upper_bound_M(1.0, 100, 1e-9) == 200
    assert chernoff_upper_bound_M(1e-20, 100, 1e-9) == 0


def test_chernoff_stays_tight():
    # the bound should stay within a small additive slack of the exact scan
    for pf in (1e-5, 1e-4, 1e-3, 1e-2):
        for K in (100, 1000, 10000):
            exact = max_concurrent_failures(pf, K, 1e-9)
            upper = chernoff_upper_bound_M(pf, K, 1e-9)
            assert exact <= upper <= exact + 6


def test_requirement_report_saturation_equals_naive():
    params = SystemParams(p=1e-3, p_target=1e-15, K=100, tau=1e-6, p_fail=1.0)
    rep = requirement_report(params)
    assert rep.d == 29
    assert rep.M == 200
    assert rep.dec_units_lazy == rep.dec_units_naive == 200
    assert rep.bw_required == pytest.approx(rep.bw_no_lazy) == pytest.approx(84e9)
    assert rep.savings_fraction == 0.0


def test_requirement_report_zero_failures():
    params = SystemParams(p=1e-4, p_target=1e-15, K=100, p_fail=0.0)
    rep = requirement_report(params)
    assert rep.d == 15
    assert rep.M == 0
    assert rep.bw_required == 0.0
    assert rep.savings_fraction == 1.0
    assert rep.bw_no_lazy == pytest.approx(100 * 224e6)


def test_headline_bandwidth_numbers():
    # d=27 at 10^4 qubits: 7.28 Tbit/s; d=29 at 100 qubits: 84 Gbit/s
    assert 1e4 * bandwidth_per_qubit(27, 1e-6) == pytest.approx(7.28e12)
    assert 100 * bandwidth_per_qubit(29, 1e-6) == pytest.approx(84e9)


def test_equation_literal_bandwidth_doubles_at_saturation():
    params = SystemParams(p=1e-3, p_target=1e-15, K=100, p_fail=1.0)
    half = requirement_report(params)
    full = requirement_report(params, per_task_half_bandwidth=False)
    assert full.bw_required == pytest.approx(2 * half.bw_required)


def test_report_json_fields():
    rep = requirement_report(SystemParams(p=1e-4, p_target=1e-12, K=10, p_fail=1e-3))
    doc = rep.to_json_dict()
    assert set(doc) == {
        "d", "p_L", "M", "bw_required", "bw_no_lazy",
        "dec_units_lazy", "dec_units_naive", "savings_fraction",
    }
    assert doc["d"] == 11
    assert isinstance(rep, RequirementReport)


def test_system_params_validation():
    with pytest.raises(ValueError):
        SystemParams(p=1e-3, p_target=0.0, K=10)
    with pytest.raises(ValueError):
        SystemParams(p=1e-3, p_target=1e-9, K=0)
    with pytest.raises(ValueError):
        SystemParams(p=1e-3, p_target=1e-9, K=10, tau=-1.0)
    with pytest.raises(ValueError):
        SystemParams(p=1e-3, p_target=1e-9, K=10, p_fail=1.5)


def test_format_bits_per_second():
    assert format_bits_per_second(7.28e12) == "7.28 Tbit/s"
    assert format_bits_per_second(84e9) == "84 Gbit/s"
    assert format_bits_per_second(520e6) == "520 Mbit/s"
    assert format_bits_per_second(12.0) == "12 bit/s"


def test_render_requirement_table():
    params = SystemParams(p=1e-4, p_target=1e-15, K=100, p_fail=1e-3)
    text = render_requirement_table([(params, requirement_report(params))])
    lines = text.splitlines()
    assert len(lines) == 2
    assert "bw required" in lines[0]
    assert "15" in lines[1]
