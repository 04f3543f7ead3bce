"""Plan decoding hardware for a K-logical-qubit machine.

Given a physical error rate and a target logical error rate, pick the code
distance, measure how often the lazy pre-decoder gives up on a d-round
window, bound the number of full-decoder tasks that can be live at once,
and print the bandwidth and decoding-unit requirements with and without
the lazy stage.
"""

from lazyqec import (
    SystemParams,
    format_bits_per_second,
    render_requirement_table,
    reproduce_table,
    requirement_report,
)


def main():
    print("Closed-form corner cases")
    print("------------------------")
    saturated = requirement_report(
        SystemParams(p=1e-3, p_target=1e-15, K=100, p_fail=1.0)
    )
    print(
        f"p=1e-3, K=100, pre-decoder always failing: d={saturated.d}, "
        f"{saturated.dec_units_lazy} units, "
        f"{format_bits_per_second(saturated.bw_required)} "
        f"(= no-lazy baseline, saving {saturated.savings_fraction:.0%})"
    )
    ideal = requirement_report(
        SystemParams(p=1e-4, p_target=1e-15, K=100, p_fail=0.0)
    )
    print(
        f"p=1e-4, K=100, pre-decoder never failing:  d={ideal.d}, "
        f"{ideal.dec_units_lazy} units needed, saving {ideal.savings_fraction:.0%}\n"
    )

    print("Measured failure rates (this takes a minute or two)")
    print("---------------------------------------------------")
    rows = reproduce_table(
        p_target=1e-15,
        p_list=[1e-4, 1e-5],
        K_list=[100, 1000, 10000],
        trials=10000,
        seed=0,
        workers=4,
    )
    print(render_requirement_table([(pr, rep) for pr, rep, _ in rows]))
    for params, _, est in rows[::3]:
        tag = " (rule-of-three upper bound)" if est.censored else ""
        print(f"measured p_fail(p={params.p:g}, d-round window) = "
              f"{params.p_fail:.2e}{tag}")


if __name__ == "__main__":
    main()
