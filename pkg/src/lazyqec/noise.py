"""Circuit-level Pauli fault sampling and the perfect-measurement noise mode.

Every potential fault in a scheduled circuit is an entry of a *location
census*: one entry per ancilla preparation, per waiting qubit-timestep, per
CNOT and per ancilla measurement.  A preparation or wait faults with
probability ``p`` (Pauli uniform over X, Y, Z), a CNOT with probability ``p``
(uniform over the 15 non-identity two-qubit Paulis) and a measurement outcome
flips with probability ``2p/3``.

Randomness uses the counter-based Philox generator keyed on
``(seed, stream)``; derived per-trial streams are therefore independent by
construction and reproducible across runs and worker counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .code_model import (
    CheckBasis,
    CircuitSchedule,
    CodeLayout,
    Cnot,
    MeasureAncilla,
    PrepAncilla,
    Wait,
)


class NoiseMode(enum.Enum):
    CIRCUIT_LEVEL = "circuit"
    PERFECT_MEASUREMENT = "perfect"


@dataclass(frozen=True)
class NoiseParams:
    p: float
    mode: NoiseMode = NoiseMode.CIRCUIT_LEVEL

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"error rate must satisfy 0 <= p <= 1, got {self.p}")


class LocationKind(enum.Enum):
    PREP = "prep"
    WAIT = "wait"
    CNOT = "cnot"
    MEAS = "meas"


# Single-qubit Pauli choices and the 15 non-identity two-qubit Paulis, indexed
# by the sampler's choice integer.
SINGLE_PAULIS = ("X", "Y", "Z")
TWO_QUBIT_PAULIS = tuple(
    a + b for a in "IXYZ" for b in "IXYZ" if not (a == "I" and b == "I")
)


@dataclass(frozen=True)
class FaultLocation:
    """One potential fault site in one round of the circuit."""

    index: int                 # index within the per-round census
    kind: LocationKind
    step: int                  # timestep the fault follows
    qubits: tuple[int, ...]    # one qubit, or (control, target) for a CNOT
    plaquette: int | None = None   # for measurement flips

    @property
    def n_choices(self) -> int:
        if self.kind is LocationKind.CNOT:
            return len(TWO_QUBIT_PAULIS)
        if self.kind is LocationKind.MEAS:
            return 1
        return len(SINGLE_PAULIS)

    def fault_probability(self, p: float) -> float:
        return 2.0 * p / 3.0 if self.kind is LocationKind.MEAS else p

    def pauli_label(self, choice: int) -> str:
        if self.kind is LocationKind.MEAS:
            return "MeasFlip"
        if self.kind is LocationKind.CNOT:
            return TWO_QUBIT_PAULIS[choice]
        return SINGLE_PAULIS[choice]


@dataclass(frozen=True)
class FaultEvent:
    """A sampled Pauli fault: where it happened and which Pauli it is."""

    round: int
    location: FaultLocation
    choice: int

    @property
    def pauli(self) -> str:
        return self.location.pauli_label(self.choice)


def round_census(schedule: CircuitSchedule) -> tuple[FaultLocation, ...]:
    """Enumerate every fault location of a single extraction round."""
    out: list[FaultLocation] = []
    for step, events in enumerate(schedule.steps):
        for ev in events:
            if isinstance(ev, PrepAncilla):
                out.append(FaultLocation(len(out), LocationKind.PREP, step, (ev.qubit,)))
            elif isinstance(ev, Wait):
                out.append(FaultLocation(len(out), LocationKind.WAIT, step, (ev.qubit,)))
            elif isinstance(ev, Cnot):
                out.append(
                    FaultLocation(len(out), LocationKind.CNOT, step, (ev.control, ev.target))
                )
            elif isinstance(ev, MeasureAncilla):
                out.append(
                    FaultLocation(
                        len(out), LocationKind.MEAS, step, (ev.qubit,), plaquette=ev.plaquette
                    )
                )
    return tuple(out)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed on (seed, stream); the documented RNG of this package."""
    return np.random.Generator(
        np.random.Philox(key=np.array([seed % 2**64, stream % 2**64], dtype=np.uint64))
    )


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Disjoint per-trial stream derived from a master seed."""
    return make_rng(master_seed, trial + 1)


def sample_faults(
    schedule: CircuitSchedule,
    rounds: int,
    noise: NoiseParams,
    seed: int,
    rng: np.random.Generator | None = None,
) -> list[FaultEvent]:
    """Sample circuit-level faults for ``rounds`` extraction rounds.

    Deterministic given ``(seed, schedule, rounds)``; pass ``rng`` to reuse an
    existing stream instead.
    """
    if noise.mode is not NoiseMode.CIRCUIT_LEVEL:
        raise ValueError("sample_faults requires circuit-level noise")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    census = round_census(schedule)
    if rng is None:
        rng = make_rng(seed)
    if noise.p == 0.0:
        return []
    probs = np.array([loc.fault_probability(noise.p) for loc in census])
    out: list[FaultEvent] = []
    for t in range(rounds):
        hits = np.nonzero(rng.random(len(census)) < probs)[0]
        for i in hits:
            loc = census[i]
            choice = int(rng.integers(loc.n_choices)) if loc.n_choices > 1 else 0
            out.append(FaultEvent(t, loc, choice))
    return out


def sample_data_errors(
    layout: CodeLayout,
    noise: NoiseParams,
    seed: int,
    rng: np.random.Generator | None = None,
) -> set[tuple[int, str]]:
    """Perfect-measurement mode: independent Z error on each data qubit."""
    if noise.mode is not NoiseMode.PERFECT_MEASUREMENT:
        raise ValueError("sample_data_errors requires perfect-measurement noise")
    if rng is None:
        rng = make_rng(seed)
    hits = np.nonzero(rng.random(layout.n_data) < noise.p)[0]
    return {(int(q), "Z") for q in hits}


@lru_cache(maxsize=None)
def _pauli_bits(label: str) -> tuple[int, int]:
    """(x, z) symplectic bits of a single-qubit Pauli label."""
    return {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}[label]


def fault_pauli_bits(loc: FaultLocation, choice: int) -> tuple[tuple[int, int, int], ...]:
    """Expand a fault choice into per-qubit (qubit, x_bit, z_bit) entries.

    Measurement flips carry no Pauli frame and return an empty tuple.
    """
    if loc.kind is LocationKind.MEAS:
        return ()
    if loc.kind is LocationKind.CNOT:
        label = TWO_QUBIT_PAULIS[choice]
        out = []
        for q, ch in zip(loc.qubits, label):
            x, z = _pauli_bits(ch)
            if x or z:
                out.append((q, x, z))
        return tuple(out)
    x, z = _pauli_bits(SINGLE_PAULIS[choice])
    return ((loc.qubits[0], x, z),)
