"""Space-time decoding graphs built by symbolic fault propagation.

Vertices are syndrome locations ``(check_index, round)`` for one check basis.
Every enumerable circuit fault is propagated through the circuit as a sparse
Pauli frame; its detection pattern in this basis (at most two flipped
difference-syndrome locations) becomes an edge or a half-edge.  Faults sharing
a detection pattern are merged with the XOR-aware rule
``p_e = (1 - prod_i (1 - 2 p_i)) / 2`` and carry weight
``w_e = ln((1 - p_e) / p_e)``.

The same machinery yields the 2D graph of the perfect-measurement mode, where
edges are simply data qubits joining the one or two checks that see them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .code_model import CheckBasis, CircuitSchedule, CodeLayout, Cnot, MeasureAncilla, PrepAncilla
from .noise import (
    FaultEvent,
    FaultLocation,
    LocationKind,
    NoiseMode,
    NoiseParams,
    fault_pauli_bits,
    round_census,
)

Vertex = tuple[int, int]   # (check index within basis, round)


class ScheduleError(RuntimeError):
    """A single fault triggered three or more detectors of one basis."""


@dataclass(frozen=True)
class Syndrome:
    """Defect set: locations where the difference syndrome is 1."""

    defects: frozenset[Vertex]

    @classmethod
    def of(cls, defects: Iterable[Vertex]) -> "Syndrome":
        return cls(frozenset(defects))

    def __len__(self) -> int:
        return len(self.defects)


@dataclass(frozen=True)
class Edge:
    u: Vertex
    v: Vertex | None           # None: half-edge to the boundary
    probability: float
    weight: float
    kind: str                  # space | time | diagonal | boundary | time_boundary
    obs: int | None            # logical-flip bitmask of the representative frame
    frame: frozenset[int]      # representative residual data error

    @property
    def is_half(self) -> bool:
        return self.v is None


class DefectClasses(NamedTuple):
    bulk: frozenset[Vertex]
    boundary_adjacent: frozenset[Vertex]     # incident to a half-edge
    boundary_isolated: frozenset[Vertex]     # boundary-adjacent with no defect neighbor


class DecodingGraph:
    """Immutable after construction; shared read-only by decoder workers."""

    def __init__(
        self,
        layout: CodeLayout | None,
        basis: CheckBasis,
        rounds: int,
        edges: list[Edge],
        half_edges: list[Edge],
        template: dict[tuple[int, int], tuple[tuple[int, int], ...]] | None = None,
        template_obs: dict[tuple[int, int], int] | None = None,
        census: tuple[FaultLocation, ...] | None = None,
        drop_initial: bool = True,
        noisy_rounds: int | None = None,
        obs_conflicts: int = 0,
        invisible_obs_faults: int = 0,
        centers: list[tuple[int, int]] | None = None,
    ):
        self.layout = layout
        self.basis = basis
        self.rounds = rounds
        if centers is None:
            centers = [p.center for p in layout.checks(basis)]
        self.n_checks = len(centers)
        self.edges = tuple(edges)
        self.half_edges = tuple(half_edges)
        self._template = template or {}
        self._template_obs = template_obs or {}
        self.census = census
        self.drop_initial = drop_initial
        self.noisy_rounds = rounds if noisy_rounds is None else noisy_rounds
        self.obs_conflicts = obs_conflicts
        self.invisible_obs_faults = invisible_obs_faults

        self._centers = centers
        self.neighbors: dict[Vertex, list[tuple[Vertex, int]]] = {}
        self.edge_id_by_key: dict[tuple, int] = {}
        for eid, e in enumerate(self.edges):
            self.neighbors.setdefault(e.u, []).append((e.v, eid))
            self.neighbors.setdefault(e.v, []).append((e.u, eid))
            self.edge_id_by_key[_edge_key(e.u, e.v)] = eid
        self.half_edge_id: dict[Vertex, int] = {}
        for i, e in enumerate(self.half_edges):
            eid = len(self.edges) + i
            self.half_edge_id[e.u] = eid
            self.edge_id_by_key[(e.u,)] = eid

    # --- basic accessors ---------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edges) + len(self.half_edges)

    def edge(self, eid: int) -> Edge:
        if eid < len(self.edges):
            return self.edges[eid]
        return self.half_edges[eid - len(self.edges)]

    def vertices(self) -> Iterable[Vertex]:
        for t in range(self.rounds):
            for q in range(self.n_checks):
                yield (q, t)

    def coord(self, v: Vertex) -> tuple[int, int, int]:
        x, y = self._centers[v[0]]
        return (x, y, v[1])

    def neighbor_set(self, v: Vertex) -> set[Vertex]:
        return {u for u, _ in self.neighbors.get(v, ())}

    # --- fault mapping -----------------------------------------------------

    def fault_vertices(self, event: FaultEvent) -> tuple[Vertex, ...]:
        """Defect pattern of a sampled fault, translated to its round and
        clipped at the window boundaries."""
        try:
            pattern = self._template[(event.location.index, event.choice)]
        except KeyError:
            raise ValueError(f"unknown fault location {event.location}") from None
        out = []
        for q, dt in pattern:
            t = event.round + dt
            if t >= self.rounds:
                continue
            if self.drop_initial and t == 0:
                continue
            out.append((q, t))
        return tuple(out)

    def fault_edge_id(self, event: FaultEvent) -> int | None:
        verts = self.fault_vertices(event)
        if not verts:
            return None
        return self.edge_id_by_key.get(_edge_key(*sorted(verts)) if len(verts) == 2 else (verts[0],))

    def syndrome_of_faults(self, events: Iterable[FaultEvent]) -> Syndrome:
        acc: set[Vertex] = set()
        for ev in events:
            acc.symmetric_difference_update(self.fault_vertices(ev))
        return Syndrome(frozenset(acc))

    def correction_syndrome(self, edge_ids: Iterable[int]) -> frozenset[Vertex]:
        acc: set[Vertex] = set()
        for eid in edge_ids:
            e = self.edge(eid)
            acc.symmetric_difference_update((e.u,) if e.v is None else (e.u, e.v))
        return frozenset(acc)

    def obs_of_faults(self, events: Iterable[FaultEvent]) -> int:
        """Logical-flip bitmask of a fault list (XOR of per-fault flips)."""
        mask = 0
        for ev in events:
            mask ^= self._template_obs[(ev.location.index, ev.choice)]
        return mask

    def obs_of_edges(self, edge_ids: Iterable[int]) -> int:
        mask = 0
        for eid in edge_ids:
            obs = self.edge(eid).obs
            if obs is None:
                raise ValueError("edge has inconsistent logical bookkeeping")
            mask ^= obs
        return mask

    # --- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        def v_entry(v):
            x, y, t = self.coord(v)
            return {"check": v[0], "x": x, "y": y, "t": t}

        return {
            "basis": self.basis.value,
            "rounds": self.rounds,
            "n_checks": self.n_checks,
            "vertices": [v_entry(v) for v in self.vertices()],
            "edges": [
                {
                    "u": list(e.u),
                    "v": list(e.v) if e.v is not None else None,
                    "probability": e.probability,
                    "weight": e.weight,
                    "kind": e.kind,
                }
                for e in (*self.edges, *self.half_edges)
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _edge_key(u: Vertex, v: Vertex | None) -> tuple:
    if v is None:
        return (u,)
    return (u, v) if u <= v else (v, u)


def _edge_kind(u: Vertex, v: Vertex) -> str:
    if u[0] == v[0]:
        return "time"
    if u[1] == v[1]:
        return "space"
    return "diagonal"


_KIND_RANK = {"space": 0, "time": 1, "diagonal": 2, "boundary": 0, "time_boundary": 1}


def _sort_canonical(edges: list[Edge], centers: list[tuple[int, int]]) -> list[Edge]:
    """Fixed scan order: (t, y, x) of the smaller endpoint, then direction
    class (space before time before diagonal), then the other endpoint."""

    def tyx(v: Vertex):
        x, y = centers[v[0]]
        return (v[1], y, x)

    def key(e: Edge):
        ends = [e.u] if e.v is None else sorted([e.u, e.v], key=tyx)
        rest = tyx(ends[1]) if len(ends) == 2 else ()
        return (*tyx(ends[0]), _KIND_RANK[e.kind], rest)

    return sorted(edges, key=key)


def _weight(p: float) -> float:
    return math.log((1.0 - p) / p) if 0.0 < p < 1.0 else math.inf


# --- sparse Pauli-frame propagation -----------------------------------------


class _StepOps:
    """Per-timestep gate lookup tables for sparse propagation."""

    __slots__ = ("prep", "cnot_of", "meas_of")

    def __init__(self):
        self.prep: set[int] = set()
        self.cnot_of: dict[int, tuple[int, int]] = {}
        self.meas_of: dict[int, tuple[CheckBasis, int]] = {}


def _compile_steps(schedule: CircuitSchedule) -> list[_StepOps]:
    out = []
    for events in schedule.steps:
        ops = _StepOps()
        for ev in events:
            if isinstance(ev, PrepAncilla):
                ops.prep.add(ev.qubit)
            elif isinstance(ev, Cnot):
                ops.cnot_of[ev.control] = (ev.control, ev.target)
                ops.cnot_of[ev.target] = (ev.control, ev.target)
            elif isinstance(ev, MeasureAncilla):
                ops.meas_of[ev.qubit] = (ev.basis, ev.plaquette)
        out.append(ops)
    return out


def _propagate_fault(
    layout: CodeLayout,
    steps: list[_StepOps],
    loc: FaultLocation,
    choice: int,
    plaq_basis_index: dict[int, tuple[CheckBasis, int]],
    mini_rounds: int = 4,
):
    """Propagate a single fault through a clean circuit.

    Returns raw syndrome flips ``{basis: {(check, round)}}`` and the final
    (x, z) data frames as qubit-id sets.
    """
    frame: dict[int, list[int]] = {}   # qubit -> [x, z]
    s_flips: dict[CheckBasis, set[tuple[int, int]]] = {CheckBasis.X: set(), CheckBasis.Z: set()}

    for t in range(mini_rounds):
        for step_idx, ops in enumerate(steps):
            if frame:
                for q in [q for q in frame if q in ops.prep]:
                    del frame[q]
                touched = {ops.cnot_of[q] for q in frame if q in ops.cnot_of}
                for c, tgt in touched:
                    fc = frame.setdefault(c, [0, 0])
                    ft = frame.setdefault(tgt, [0, 0])
                    ft[0] ^= fc[0]   # X propagates control -> target
                    fc[1] ^= ft[1]   # Z propagates target -> control
                for q in [q for q in frame if q in ops.meas_of]:
                    basis, plq = ops.meas_of[q]
                    flip = frame[q][0] if basis is CheckBasis.Z else frame[q][1]
                    if flip:
                        b, bidx = plaq_basis_index[plq]
                        s_flips[b].symmetric_difference_update({(bidx, t)})
            if t == 0 and step_idx == loc.step:
                if loc.kind is LocationKind.MEAS:
                    b, bidx = plaq_basis_index[loc.plaquette]
                    s_flips[b].symmetric_difference_update({(bidx, t)})
                else:
                    for q, x, z in fault_pauli_bits(loc, choice):
                        f = frame.setdefault(q, [0, 0])
                        f[0] ^= x
                        f[1] ^= z

    n_data = layout.n_data
    x_frame = frozenset(q for q, f in frame.items() if q < n_data and f[0])
    z_frame = frozenset(q for q, f in frame.items() if q < n_data and f[1])
    return s_flips, x_frame, z_frame


def _diff_pattern(s_flips: set[tuple[int, int]], mini_rounds: int) -> tuple[tuple[int, int], ...]:
    """Difference-syndrome flips (check, dt) of a raw flip set, with s(-1)=0."""
    by_check: dict[int, set[int]] = {}
    for q, t in s_flips:
        by_check.setdefault(q, set()).add(t)
    out = []
    for q, ts in by_check.items():
        for t in range(mini_rounds):
            if ((t in ts) ^ ((t - 1) in ts)):
                out.append((q, t))
    return tuple(sorted(out))


def simulate_window(
    layout: CodeLayout,
    schedule: CircuitSchedule,
    rounds: int,
    faults: list[FaultEvent],
):
    """Direct circuit replay with the given faults.

    Returns per-basis raw syndrome bit arrays of shape ``(rounds, n_checks)``
    and the final (x, z) data frames.  Used to cross-validate the fault map.
    """
    plaq_basis_index = {
        p.index: (p.basis, p.basis_index) for p in layout.plaquettes
    }
    steps = _compile_steps(schedule)
    n = {b: len(layout.checks(b)) for b in CheckBasis}
    s = {b: np.zeros((rounds, n[b]), dtype=np.uint8) for b in CheckBasis}
    by_pos: dict[tuple[int, int], list[FaultEvent]] = {}
    for ev in faults:
        by_pos.setdefault((ev.round, ev.location.step), []).append(ev)

    frame: dict[int, list[int]] = {}
    for t in range(rounds):
        for step_idx, ops in enumerate(steps):
            if frame:
                for q in [q for q in frame if q in ops.prep]:
                    del frame[q]
                touched = {ops.cnot_of[q] for q in frame if q in ops.cnot_of}
                for c, tgt in touched:
                    fc = frame.setdefault(c, [0, 0])
                    ft = frame.setdefault(tgt, [0, 0])
                    ft[0] ^= fc[0]
                    fc[1] ^= ft[1]
                for q in [q for q in frame if q in ops.meas_of]:
                    basis, plq = ops.meas_of[q]
                    flip = frame[q][0] if basis is CheckBasis.Z else frame[q][1]
                    if flip:
                        b, bidx = plaq_basis_index[plq]
                        s[b][t, bidx] ^= 1
            for ev in by_pos.get((t, step_idx), ()):
                loc = ev.location
                if loc.kind is LocationKind.MEAS:
                    b, bidx = plaq_basis_index[loc.plaquette]
                    s[b][t, bidx] ^= 1
                else:
                    for q, x, z in fault_pauli_bits(loc, ev.choice):
                        f = frame.setdefault(q, [0, 0])
                        f[0] ^= x
                        f[1] ^= z

    n_data = layout.n_data
    x_frame = frozenset(q for q, f in frame.items() if q < n_data and f[0])
    z_frame = frozenset(q for q, f in frame.items() if q < n_data and f[1])
    return s, x_frame, z_frame


def difference_syndrome(raw: np.ndarray, initial_round_zero: bool = True) -> Syndrome:
    """Defects of per-round raw syndrome bits: ``sbar(t) = s(t) xor s(t-1)``.

    With ``initial_round_zero`` (the default), the first round is forced to
    zero, i.e. round-0 information is discarded; otherwise ``sbar(0) = s(0)``.
    """
    raw = np.asarray(raw, dtype=np.uint8)
    if raw.ndim != 2 or raw.shape[0] < 1:
        raise ValueError("raw must be a (rounds, checks) bit array with >= 1 round")
    sbar = raw.copy()
    sbar[1:] ^= raw[:-1]
    if initial_round_zero:
        sbar[0] = 0
    ts, qs = np.nonzero(sbar)
    return Syndrome(frozenset((int(q), int(t)) for t, q in zip(ts, qs)))


def faults_to_syndrome(graph: DecodingGraph, faults: Iterable[FaultEvent]) -> Syndrome:
    """Defect set of a fault list via the graph's fault map (incidence XOR)."""
    return graph.syndrome_of_faults(faults)


def classify_defects(graph: DecodingGraph, syndrome: Syndrome) -> DefectClasses:
    """Split defects into bulk, boundary-adjacent and boundary-isolated sets."""
    defects = syndrome.defects
    boundary_adjacent = frozenset(v for v in defects if v in graph.half_edge_id)
    boundary_isolated = frozenset(
        v for v in boundary_adjacent if not (graph.neighbor_set(v) & defects)
    )
    return DefectClasses(
        bulk=defects - boundary_adjacent,
        boundary_adjacent=boundary_adjacent,
        boundary_isolated=boundary_isolated,
    )


def is_logical_failure(
    layout: CodeLayout,
    residual: Iterable[int],
    error_basis: CheckBasis = CheckBasis.Z,
) -> bool:
    """Whether a syndrome-free residual error acts as a logical operator.

    ``residual`` is the set of data qubits carrying an error of the given
    Pauli type.  Raises if the residual still triggers any check.
    """
    res = set(residual)
    detecting = CheckBasis.X if error_basis is CheckBasis.Z else CheckBasis.Z
    for plq in layout.checks(detecting):
        if len(res & set(plq.support)) % 2 != 0:
            raise ValueError("residual error has a non-trivial syndrome")
    return any(len(res & rep) % 2 == 1 for rep in layout.logical_supports(error_basis))


# --- graph builders ---------------------------------------------------------


class _EdgeAcc:
    __slots__ = ("pi", "obs", "frame", "has_spatial_half", "conflict")

    def __init__(self):
        self.pi = 1.0          # prod (1 - 2 p_i) over contributing faults
        self.obs = None
        self.frame = frozenset()
        self.has_spatial_half = False
        self.conflict = False

    def add(self, p: float, obs: int, frame: frozenset[int]):
        self.pi *= 1.0 - 2.0 * p
        if self.obs is None:
            self.obs = obs
            self.frame = frame
        elif self.obs != obs:
            self.conflict = True

    @property
    def probability(self) -> float:
        return (1.0 - self.pi) / 2.0


def build_decoding_graph(
    layout: CodeLayout,
    schedule: CircuitSchedule,
    rounds: int,
    noise: NoiseParams,
    basis: CheckBasis = CheckBasis.X,
    *,
    drop_initial: bool = True,
    noisy_rounds: int | None = None,
) -> DecodingGraph:
    """Build the space-time decoding graph for one check basis.

    ``rounds`` is the number of detector rounds; faults are placed in rounds
    ``[0, noisy_rounds)`` (default: all of them).  With ``drop_initial`` the
    first round's difference syndrome is forced to zero, so round-0 detectors
    never fire; logical-error experiments instead build a closed window with
    ``drop_initial=False`` and one trailing noiseless round.
    """
    if noise.mode is not NoiseMode.CIRCUIT_LEVEL:
        raise ValueError("circuit-level noise required to build a space-time graph")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    noisy = rounds if noisy_rounds is None else noisy_rounds
    if not 0 <= noisy <= rounds:
        raise ValueError("noisy_rounds must lie in [0, rounds]")

    census = round_census(schedule)
    steps = _compile_steps(schedule)
    plaq_basis_index = {p.index: (p.basis, p.basis_index) for p in layout.plaquettes}
    logicals = layout.logical_supports(
        CheckBasis.Z if basis is CheckBasis.X else CheckBasis.X
    )
    mini = 4

    # Per-round fault templates in this basis, pre-merged by detection pattern.
    template: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    template_obs: dict[tuple[int, int], int] = {}
    merged: dict[tuple[tuple[int, int], ...], _EdgeAcc] = {}
    for loc in census:
        p_loc = loc.fault_probability(noise.p)
        for choice in range(loc.n_choices):
            s_flips, x_frame, z_frame = _propagate_fault(
                layout, steps, loc, choice, plaq_basis_index, mini
            )
            pattern = _diff_pattern(s_flips[basis], mini)
            if len(pattern) > 2:
                raise ScheduleError(
                    f"fault {loc.kind.value}@step{loc.step} qubits {loc.qubits} "
                    f"triggers {len(pattern)} detectors of basis {basis.value}"
                )
            if any(dt > 2 for _, dt in pattern):
                raise ScheduleError("fault pattern did not settle within two rounds")
            template[(loc.index, choice)] = pattern
            frame = z_frame if basis is CheckBasis.X else x_frame
            obs = _obs_mask(frame, logicals)
            template_obs[(loc.index, choice)] = obs
            acc = merged.setdefault(pattern, _EdgeAcc())
            acc.add(p_loc / loc.n_choices, obs, frame)

    # Place the templates in every noisy round, clipping at window boundaries.
    acc_by_key: dict[tuple, _EdgeAcc] = {}
    invisible_obs = 0
    for t in range(noisy):
        for pattern, tpl_acc in merged.items():
            if not pattern:
                if tpl_acc.obs:
                    invisible_obs += 1
                continue
            verts = []
            for q, dt in pattern:
                tt = t + dt
                if tt >= rounds or (drop_initial and tt == 0):
                    continue
                verts.append((q, tt))
            if not verts:
                if tpl_acc.obs:
                    invisible_obs += 1
                continue
            key = _edge_key(*sorted(verts)) if len(verts) == 2 else (verts[0],)
            acc = acc_by_key.setdefault(key, _EdgeAcc())
            acc.add(tpl_acc.probability, tpl_acc.obs or 0, tpl_acc.frame)
            if tpl_acc.conflict:
                acc.conflict = True
            if len(verts) == 1 and len(pattern) == 1:
                acc.has_spatial_half = True

    edges, half_edges, conflicts = [], [], 0
    for key, acc in acc_by_key.items():
        p_e = acc.probability
        if acc.conflict:
            # Merged faults disagree on the logical flip (e.g. a boundary
            # half-edge reachable from either side).  The edge keeps the
            # parity of its representative frame; a disagreeing fault then
            # correctly shows up as a logical failure of the window.
            conflicts += 1
        obs = acc.obs
        if len(key) == 2:
            u, v = key
            edges.append(Edge(u, v, p_e, _weight(p_e), _edge_kind(u, v), obs, acc.frame))
        else:
            kind = "boundary" if acc.has_spatial_half else "time_boundary"
            half_edges.append(Edge(key[0], None, p_e, _weight(p_e), kind, obs, acc.frame))

    centers = [p.center for p in layout.checks(basis)]
    graph = DecodingGraph(
        layout,
        basis,
        rounds,
        _sort_canonical(edges, centers),
        _sort_canonical(half_edges, centers),
        template=template,
        template_obs=template_obs,
        census=census,
        drop_initial=drop_initial,
        noisy_rounds=noisy,
        obs_conflicts=conflicts,
        invisible_obs_faults=invisible_obs,
    )
    return graph


def _obs_mask(frame: frozenset[int], logicals) -> int:
    mask = 0
    for i, rep in enumerate(logicals):
        if len(frame & rep) % 2 == 1:
            mask |= 1 << i
    return mask


def make_graph(
    edge_pairs: Iterable[tuple[Vertex, Vertex]],
    half_vertices: Iterable[Vertex] = (),
    *,
    n_checks: int | None = None,
    rounds: int = 1,
    p: float = 0.01,
    centers: list[tuple[int, int]] | None = None,
) -> DecodingGraph:
    """Assemble a decoding graph from explicit edges, for small hand-built
    instances.  Edges keep the given order as the canonical scan order."""
    edge_pairs = list(edge_pairs)
    half_vertices = list(half_vertices)
    all_vs = {v for uv in edge_pairs for v in uv} | set(half_vertices)
    if n_checks is None:
        n_checks = max((v[0] for v in all_vs), default=-1) + 1
    if centers is None:
        centers = [(q, 0) for q in range(n_checks)]
    w = _weight(p)
    edges = [
        Edge(min(u, v), max(u, v), p, w, _edge_kind(u, v), 0, frozenset())
        for u, v in edge_pairs
    ]
    halves = [Edge(v, None, p, w, "boundary", 0, frozenset()) for v in half_vertices]
    return DecodingGraph(
        None, CheckBasis.X, rounds, edges, halves, drop_initial=False, centers=centers
    )


def build_perfect_graph(
    layout: CodeLayout,
    noise: NoiseParams,
    basis: CheckBasis = CheckBasis.X,
) -> DecodingGraph:
    """Single-slice graph for the perfect-measurement mode: each data qubit is
    an edge between the checks of ``basis`` that see it."""
    if noise.mode is not NoiseMode.PERFECT_MEASUREMENT:
        raise ValueError("perfect-measurement noise required")
    checks = layout.checks(basis)
    membership: dict[int, list[int]] = {}
    for plq in checks:
        for q in plq.support:
            membership.setdefault(q, []).append(plq.basis_index)
    logicals = layout.logical_supports(
        CheckBasis.Z if basis is CheckBasis.X else CheckBasis.X
    )
    p = noise.p
    edges, half_edges = [], []
    for q in range(layout.n_data):
        plqs = membership.get(q, [])
        frame = frozenset({q})
        obs = _obs_mask(frame, logicals)
        if len(plqs) == 2:
            u, v = sorted(((plqs[0], 0), (plqs[1], 0)))
            edges.append(Edge(u, v, p, _weight(p), "space", obs, frame))
        elif len(plqs) == 1:
            half_edges.append(Edge((plqs[0], 0), None, p, _weight(p), "boundary", obs, frame))
        else:
            raise AssertionError(f"data qubit {q} invisible to basis {basis.value}")
    centers = [plq.center for plq in checks]
    return DecodingGraph(
        layout,
        basis,
        1,
        _sort_canonical(edges, centers),
        _sort_canonical(half_edges, centers),
        drop_initial=False,
    )
