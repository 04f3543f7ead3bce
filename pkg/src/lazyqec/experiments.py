"""Monte Carlo campaigns: failure-rate estimation, logical-error estimation,
paired decoder benchmarks, bandwidth curves and requirement tables.

Every estimate is reproducible from a master seed: trial i always draws from
the Philox stream ``(seed, i + 1)``, so results do not depend on the worker
count or on scheduling order.  Rates come with Wilson 95% intervals; a run
with zero observed failures reports the rule-of-three upper bound 3/n and is
marked censored.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass

import numpy as np

from .code_model import (
    CheckBasis,
    CodeKind,
    CodeLayout,
    build_rotated_surface_code,
    build_schedule,
    build_toric_code,
)
from .decoders import DecoderKind, decode
from .graph import DecodingGraph, Syndrome, build_decoding_graph, build_perfect_graph
from .lazy import lazy_decode
from .noise import FaultEvent, NoiseMode, NoiseParams, trial_rng
from .resources import RequirementReport, SystemParams, requirement_report, select_distance


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo rate with a 95% confidence interval."""

    point: float
    ci_low: float
    ci_high: float
    trials: int
    seed: int
    censored: bool = False     # zero events: ci_high is the 3/n bound

    def to_json_dict(self) -> dict:
        return {
            "point": self.point,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "trials": self.trials,
            "seed": self.seed,
            "censored": self.censored,
        }


@dataclass(frozen=True)
class TrialResult:
    index: int
    lazy_success: bool | None = None
    used_fallback: bool = False
    logical_failure: bool | None = None
    wall_time: float = 0.0


def wilson_interval(k: int, n: int, z: float = 1.959964) -> tuple[float, float]:
    """Wilson score interval for k events in n trials."""
    if n <= 0:
        raise ValueError("n must be positive")
    phat = k / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


def estimate_from_counts(k: int, n: int, seed: int) -> Estimate:
    if k == 0:
        return Estimate(0.0, 0.0, min(1.0, 3.0 / n), n, seed, censored=True)
    lo, hi = wilson_interval(k, n)
    return Estimate(k / n, lo, hi, n, seed)


# --- fast per-window fault sampling ------------------------------------------


class _WindowSampler:
    """Vectorized circuit-level fault sampling over a fixed window."""

    def __init__(self, graph: DecodingGraph, p: float):
        census = graph.census
        if census is None:
            raise ValueError("graph carries no circuit census")
        self.census = census
        self.rounds = graph.noisy_rounds
        per_round = np.array([loc.fault_probability(p) for loc in census])
        self.pvec = np.tile(per_round, self.rounds)
        self.n_loc = len(census)

    def sample(self, rng: np.random.Generator) -> list[FaultEvent]:
        hits = np.nonzero(rng.random(self.pvec.size) < self.pvec)[0]
        out = []
        for i in hits:
            loc = self.census[i % self.n_loc]
            choice = int(rng.integers(loc.n_choices)) if loc.n_choices > 1 else 0
            out.append(FaultEvent(int(i) // self.n_loc, loc, choice))
        return out


# --- worker pool --------------------------------------------------------------

_WORKER_CTX = None


def _set_worker_ctx(ctx):
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _run_chunk(args):
    lo, hi = args
    fn, payload, seed = _WORKER_CTX
    return [fn(payload, seed, i) for i in range(lo, hi)]


def _run_trials(fn, payload, seed: int, trials: int, workers: int) -> list:
    """Run ``fn(payload, seed, trial)`` for every trial, optionally across a
    process pool.  Output order and content are worker-count independent."""
    if workers <= 1:
        return [fn(payload, seed, i) for i in range(trials)]
    chunk = max(1, trials // (workers * 8))
    spans = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers, initializer=_set_worker_ctx, initargs=((fn, payload, seed),)) as pool:
        parts = pool.map(_run_chunk, spans)
    return [r for part in parts for r in part]


# --- layout / graph selection ---------------------------------------------------


def _build_layout(kind: CodeKind | str, d: int) -> CodeLayout:
    kind = CodeKind(kind) if isinstance(kind, str) else kind
    if kind is CodeKind.ROTATED_SURFACE:
        return build_rotated_surface_code(d)
    return build_toric_code(d)


# --- p_fail -----------------------------------------------------------------


def _p_fail_trial(payload, seed, trial) -> bool:
    graph, sampler = payload
    rng = trial_rng(seed, trial)
    faults = sampler.sample(rng)
    syndrome = graph.syndrome_of_faults(faults)
    return not lazy_decode(graph, syndrome).success


def estimate_p_fail(
    p: float,
    d: int,
    trials: int,
    seed: int,
    *,
    basis: CheckBasis = CheckBasis.X,
    workers: int = 1,
) -> Estimate:
    """Probability that the lazy decoder fails on one d-round window of one
    check basis under circuit-level noise at rate ``p``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if p == 0.0:
        return estimate_from_counts(0, trials, seed)
    layout = build_rotated_surface_code(d)
    schedule = build_schedule(layout)
    graph = build_decoding_graph(layout, schedule, d, NoiseParams(p), basis)
    sampler = _WindowSampler(graph, p)
    results = _run_trials(_p_fail_trial, (graph, sampler), seed, trials, workers)
    return estimate_from_counts(sum(results), trials, seed)


# --- logical error rates -------------------------------------------------------


def _perfect_trial(payload, seed, trial) -> bool:
    layout, graph, kind, p, edge_of_qubit = payload
    rng = trial_rng(seed, trial)
    hits = np.nonzero(rng.random(layout.n_data) < p)[0]
    error = frozenset(int(q) for q in hits)
    defects: set = set()
    for q in error:
        e = graph.edge(edge_of_qubit[q])
        defects.symmetric_difference_update((e.u,) if e.v is None else (e.u, e.v))
    syndrome = Syndrome(frozenset(defects))
    if kind is DecoderKind.LAZY:
        outcome = lazy_decode(graph, syndrome)
        if not outcome.success:
            return True   # the pre-decoder alone gave up: count as failure
        correction = outcome.correction
    else:
        correction = decode(graph, syndrome, kind).correction
    residual = set(error)
    for eid in correction:
        residual.symmetric_difference_update(graph.edge(eid).frame)
    from .graph import is_logical_failure

    return is_logical_failure(layout, residual, CheckBasis.Z)


def _circuit_trial(payload, seed, trial) -> bool:
    graph, sampler, kind = payload
    rng = trial_rng(seed, trial)
    faults = sampler.sample(rng)
    syndrome = graph.syndrome_of_faults(faults)
    if kind is DecoderKind.LAZY:
        outcome = lazy_decode(graph, syndrome)
        if not outcome.success:
            return True
        correction = outcome.correction
    else:
        correction = decode(graph, syndrome, kind).correction
    return (graph.obs_of_faults(faults) ^ graph.obs_of_edges(correction)) != 0


def estimate_logical_error(
    decoder_kind: DecoderKind,
    p: float,
    d: int,
    trials: int,
    seed: int,
    mode: NoiseMode = NoiseMode.PERFECT_MEASUREMENT,
    *,
    layout_kind: CodeKind | None = None,
    workers: int = 1,
) -> Estimate:
    """Logical failure rate of one decoder configuration.

    Perfect-measurement mode draws independent Z data errors on a single
    2D slice (toric layout by default).  Circuit-level mode decodes a closed
    window of d noisy rounds plus one noiseless closing round (rotated layout
    by default) and compares logical flips of error and correction.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if p == 0.0:
        return estimate_from_counts(0, trials, seed)
    if mode is NoiseMode.PERFECT_MEASUREMENT:
        kind = layout_kind or CodeKind.TORIC_2D
        layout = _build_layout(kind, d)
        graph = build_perfect_graph(layout, NoiseParams(p, mode), CheckBasis.X)
        edge_of_qubit = _edge_of_qubit(graph, layout)
        payload = (layout, graph, decoder_kind, p, edge_of_qubit)
        results = _run_trials(_perfect_trial, payload, seed, trials, workers)
    else:
        kind = layout_kind or CodeKind.ROTATED_SURFACE
        layout = _build_layout(kind, d)
        schedule = build_schedule(layout)
        graph = build_decoding_graph(
            layout, schedule, d + 1, NoiseParams(p), CheckBasis.X,
            drop_initial=False, noisy_rounds=d,
        )
        sampler = _WindowSampler(graph, p)
        results = _run_trials(_circuit_trial, (graph, sampler, decoder_kind), seed, trials, workers)
    return estimate_from_counts(sum(results), trials, seed)


def _edge_of_qubit(graph: DecodingGraph, layout: CodeLayout) -> dict[int, int]:
    """Map each data qubit to its edge in a single-slice graph via the
    representative error frames."""
    out: dict[int, int] = {}
    for eid in range(graph.n_edges):
        for q in graph.edge(eid).frame:
            out[q] = eid
    missing = set(range(layout.n_data)) - set(out)
    if missing:
        raise ValueError(f"qubits without an edge: {sorted(missing)}")
    return out


# --- paired runtime benchmark ----------------------------------------------------


def benchmark_runtime(
    decoder_kinds: list[DecoderKind],
    p: float,
    d: int,
    trials: int,
    seed: int,
    *,
    layout_kind: CodeKind = CodeKind.TORIC_2D,
) -> dict[DecoderKind, dict[str, float]]:
    """Wall-time statistics per decoder kind over an identical instance
    stream (perfect-measurement mode).  Timings cover the decode call only."""
    layout = _build_layout(layout_kind, d)
    graph = build_perfect_graph(layout, NoiseParams(p, NoiseMode.PERFECT_MEASUREMENT))
    edge_of_qubit = _edge_of_qubit(graph, layout)

    syndromes: list[Syndrome] = []
    for i in range(trials):
        rng = trial_rng(seed, i)
        hits = np.nonzero(rng.random(layout.n_data) < p)[0]
        defects: set = set()
        for q in hits:
            e = graph.edge(edge_of_qubit[int(q)])
            defects.symmetric_difference_update((e.u,) if e.v is None else (e.u, e.v))
        syndromes.append(Syndrome(frozenset(defects)))

    out: dict[DecoderKind, dict[str, float]] = {}
    for kind in decoder_kinds:
        times = np.empty(trials)
        fallbacks = 0
        for i, syndrome in enumerate(syndromes):
            t0 = time.perf_counter()
            rec = decode(graph, syndrome, kind)
            times[i] = time.perf_counter() - t0
            fallbacks += rec.used_fallback
        out[kind] = {
            "mean": float(times.mean()),
            "p99": float(np.percentile(times, 99)),
            "max": float(times.max()),
            "total": float(times.sum()),
            "fallback_fraction": fallbacks / trials,
        }
    return out


# --- bandwidth curves and the requirement table -----------------------------------


def bandwidth_curve(
    p_list: list[float],
    d_list: list[int],
    trials: int,
    seed: int,
    *,
    tau: float = 1e-6,
    workers: int = 1,
) -> list[dict]:
    """Average readout-to-decoder bandwidth per logical qubit, with and
    without the lazy stage.  A failed window retransmits its basis's full
    syndrome stream, so the with-lazy average is ``p_fail (d^2 - 1)/tau``."""
    rows = []
    for p in p_list:
        for d in d_list:
            est = estimate_p_fail(p, d, trials, seed, workers=workers)
            bw = (d * d - 1) / tau
            p_eff = est.point if not est.censored else est.ci_high
            rows.append(
                {
                    "p": p,
                    "d": d,
                    "p_fail": est.point,
                    "p_fail_ci_high": est.ci_high,
                    "censored": est.censored,
                    "bw_without": bw,
                    "bw_with": est.point * bw,
                    "bw_with_upper": p_eff * bw,
                }
            )
    return rows


def reproduce_table(
    p_target: float,
    p_list: list[float],
    K_list: list[int],
    trials: int,
    seed: int,
    *,
    tau: float = 1e-6,
    workers: int = 1,
) -> list[tuple[SystemParams, RequirementReport, Estimate]]:
    """Requirement report rows over a (p, K) grid with re-measured p_fail.

    The failure probability is measured once per physical rate at the
    selected distance; censored estimates fall back to their upper bound so
    the provisioning stays conservative.
    """
    rows = []
    for p in p_list:
        d = select_distance(p, p_target)
        est = estimate_p_fail(p, d, trials, seed, workers=workers)
        p_fail = est.ci_high if est.censored else est.point
        for K in K_list:
            params = SystemParams(p=p, p_target=p_target, K=K, tau=tau, p_fail=p_fail)
            rows.append((params, requirement_report(params), est))
    return rows
