"""Closed-form planning math for decoding hardware and bandwidth.

Given a physical error rate, a target logical error rate and a system size,
these functions pick a code distance from the standard logical-error
heuristic ``p_L = 0.1 (100 p)^((d+1)/2)``, bound the number of lazy-decoder
failures that can coincide across the machine, and turn that into required
channel bandwidth and decoding-unit counts, with and without the lazy stage.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


class InfeasibleError(ValueError):
    """No code distance can reach the target under the heuristic."""


# Physical error rate at which the heuristic stops decaying with distance.
THRESHOLD = 1e-2


def logical_error_rate(p: float, d: int) -> float:
    """Logical error rate heuristic ``0.1 (100 p)^((d+1)/2)``.

    Evaluated in log space so that very small rates (far below 1e-300)
    degrade to 0.0 instead of raising.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and >= 3")
    log_pl = math.log(0.1) + ((d + 1) // 2) * math.log(100.0 * p)
    try:
        return math.exp(log_pl)
    except OverflowError:
        return math.inf


def select_distance(p: float, p_target: float, d_max: int = 1001) -> int:
    """Smallest odd distance whose heuristic logical rate meets the target.

    The comparison is evaluated directly in floating point with ``<=``: two
    of the standard planning cells land exactly on the target (e.g.
    p=1e-4, p_target=1e-9 at d=7) and the accepted convention counts a rate
    equal to the target as meeting it.
    """
    if not 0.0 < p_target < 1.0:
        raise ValueError("p_target must lie in (0, 1)")
    if p <= 0:
        raise ValueError("p must be positive")
    if p >= THRESHOLD:
        raise InfeasibleError(
            f"p = {p} is at or above the heuristic threshold {THRESHOLD}; "
            "no distance reaches the target"
        )
    for d in range(3, d_max + 1, 2):
        if 0.1 * (100.0 * p) ** ((d + 1) // 2) <= p_target:
            return d
    raise InfeasibleError(f"no distance up to {d_max} reaches {p_target}")


def bandwidth_per_qubit(d: int, tau: float = 1e-6) -> float:
    """Raw syndrome bandwidth of one logical qubit, both bases: (d^2 - 1)/tau
    bits per second for one measurement round every ``tau`` seconds."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    return (d * d - 1) / tau


def max_concurrent_failures(p_fail: float, K: int, p_L: float) -> int:
    """Smallest M with ``C(2K, M+1) p_fail^(M+1) < p_L``, capped at 2K.

    The scan runs in log space (log-gamma binomials), so it stays exact for
    K up to millions and p_fail down to the underflow limit.
    """
    if not 0.0 <= p_fail <= 1.0:
        raise ValueError("p_fail must lie in [0, 1]")
    if K < 1:
        raise ValueError("K must be >= 1")
    if not 0.0 < p_L < 1.0:
        raise ValueError("p_L must lie in (0, 1)")
    if p_fail == 0.0:
        return 0
    if p_fail == 1.0:
        return 2 * K
    n = 2 * K
    log_pl = math.log(p_L)
    lg_n = math.lgamma(n + 1)
    log_pf = math.log(p_fail)
    for m in range(n):
        k = m + 1
        log_term = lg_n - math.lgamma(k + 1) - math.lgamma(n - k + 1) + k * log_pf
        if log_term < log_pl:
            return m
    return n


def chernoff_upper_bound_M(p_fail: float, K: int, p_L: float) -> int:
    """Chernoff-style upper bound on :func:`max_concurrent_failures`.

    Replaces the exact log-gamma binomial with the exponential-family bound
    ``C(n, k) <= exp(n H(k/n))``, so the scanned term
    ``exp(n H(a) + k ln p_fail)`` dominates ``C(n, k) p_fail^k`` pointwise and
    the returned M can never undershoot the exact scan.  No factorials, so it
    stays cheap and stable for very large K.
    """
    if not 0.0 <= p_fail <= 1.0:
        raise ValueError("p_fail must lie in [0, 1]")
    if K < 1:
        raise ValueError("K must be >= 1")
    if not 0.0 < p_L < 1.0:
        raise ValueError("p_L must lie in (0, 1)")
    if p_fail == 0.0:
        return 0
    if p_fail == 1.0:
        return 2 * K
    n = 2 * K
    log_pl = math.log(p_L)
    log_pf = math.log(p_fail)
    for m in range(n):
        k = m + 1
        a = k / n
        entropy = -a * math.log(a) - (1 - a) * math.log(1 - a) if 0 < a < 1 else 0.0
        if n * entropy + k * log_pf < log_pl:
            return m
    return n


@dataclass(frozen=True)
class SystemParams:
    """Inputs of a requirement calculation for a K-logical-qubit machine."""

    p: float
    p_target: float
    K: int
    tau: float = 1e-6            # seconds per syndrome measurement round
    p_fail: float = 0.0          # lazy failure rate per basis per d-round window

    def __post_init__(self):
        if not 0.0 < self.p_target < 1.0:
            raise ValueError("p_target must lie in (0, 1)")
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if not 0.0 <= self.p_fail <= 1.0:
            raise ValueError("p_fail must lie in [0, 1]")


@dataclass(frozen=True)
class RequirementReport:
    d: int
    p_L: float
    M: int
    bw_required: float           # bits/s, whole system
    bw_no_lazy: float            # bits/s, whole system
    dec_units_lazy: int
    dec_units_naive: int
    savings_fraction: float

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "p_L": self.p_L,
            "M": self.M,
            "bw_required": self.bw_required,
            "bw_no_lazy": self.bw_no_lazy,
            "dec_units_lazy": self.dec_units_lazy,
            "dec_units_naive": self.dec_units_naive,
            "savings_fraction": self.savings_fraction,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def requirement_report(
    params: SystemParams,
    *,
    per_task_half_bandwidth: bool = True,
) -> RequirementReport:
    """System requirements with the lazy pre-decoder in front of each basis.

    Each of the 2K (qubit, basis) decoding tasks carries half of a qubit's
    syndrome stream, so a failed window costs ``(d^2 - 1)/(2 tau)`` bits/s
    and full saturation (M = 2K) exactly reproduces the no-lazy bandwidth.
    Passing ``per_task_half_bandwidth=False`` charges the whole per-qubit
    stream ``(d^2 - 1)/tau`` to every task instead, which doubles the
    required bandwidth at saturation.
    """
    d = select_distance(params.p, params.p_target)
    p_L = logical_error_rate(params.p, d)
    M = max_concurrent_failures(params.p_fail, params.K, p_L)
    bw_q = bandwidth_per_qubit(d, params.tau)
    per_task = bw_q / 2.0 if per_task_half_bandwidth else bw_q
    naive = 2 * params.K
    return RequirementReport(
        d=d,
        p_L=p_L,
        M=M,
        bw_required=M * per_task,
        bw_no_lazy=params.K * bw_q,
        dec_units_lazy=M,
        dec_units_naive=naive,
        savings_fraction=1.0 - M / naive,
    )


def format_bits_per_second(bw: float) -> str:
    for unit, scale in (("Tbit/s", 1e12), ("Gbit/s", 1e9), ("Mbit/s", 1e6), ("kbit/s", 1e3)):
        if bw >= scale:
            return f"{bw / scale:.3g} {unit}"
    return f"{bw:.3g} bit/s"


def render_requirement_table(rows: list[tuple[SystemParams, RequirementReport]]) -> str:
    """Aligned text table, one line per (params, report) row."""
    header = ("p", "K", "d", "bw required", "dec. units", "naive units", "saved")
    body = [
        (
            f"{pr.p:g}",
            f"{pr.K}",
            f"{rep.d}",
            format_bits_per_second(rep.bw_required),
            f"{rep.dec_units_lazy}",
            f"{rep.dec_units_naive}",
            f"{100.0 * rep.savings_fraction:.1f}%",
        )
        for pr, rep in rows
    ]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h)
              for i, h in enumerate(header)]
    def line(cells):
        return "  ".join(c.rjust(w) for c, w in zip(cells, widths))
    return "\n".join([line(header)] + [line(r) for r in body])
