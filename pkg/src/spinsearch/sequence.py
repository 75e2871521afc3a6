"""Pulse sequences: event types, a line-based wire format, the compiler that
turns an oracle label into RF pulses and delays, and the sequence executor.

Wire format, one event per line ('#' starts a comment):

    PULSE <target> <angle_deg> <phase_deg> [SOFT <t_p>]
    DELAY <seconds>
    GRAD

with target one of 1, 2, both.  Round-trips bit-exactly through repr floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import apply_unitary
from .grover import ALL_LABELS, OracleLabel
from .spins import (
    ErrorModel,
    IDEAL,
    SpinSystem,
    TARGET_BOTH,
    free_evolution,
    gradient_crush,
    ideal_pulse,
    soft_pulse,
)

PULSE = "pulse"
DELAY = "delay"
GRADIENT = "grad"

# Pulse phase convention: +x=0, +y=90, -x=180, -y=270 degrees.
PHASE_DEG = {"+x": 0.0, "+y": 90.0, "-x": 180.0, "-y": 270.0}


@dataclass(frozen=True)
class PulseEvent:
    """One sequence event: an RF pulse, a free-evolution delay, or a
    gradient crusher.

    Pulses carry a target (1, 2 or 'both'), flip angle and phase in degrees,
    and an optional soft duration; ``soft_tp`` forces the finite-duration
    propagator for this event regardless of the run's error model.
    """

    kind: str
    target: int | str | None = None
    angle_deg: float = 0.0
    phase_deg: float = 0.0
    duration: float = 0.0
    soft_tp: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (PULSE, DELAY, GRADIENT):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == PULSE and self.target not in (1, 2, TARGET_BOTH):
            raise ValueError(f"unknown pulse target {self.target!r}")
        if self.kind == DELAY and self.duration < 0:
            raise ValueError("delay duration must be >= 0")
        if self.soft_tp is not None and self.soft_tp <= 0:
            raise ValueError("SOFT duration must be positive")


def pulse(target, angle_deg, phase_deg, soft_tp=None) -> PulseEvent:
    return PulseEvent(PULSE, target=target, angle_deg=float(angle_deg),
                      phase_deg=float(phase_deg), soft_tp=soft_tp)


def delay(duration) -> PulseEvent:
    return PulseEvent(DELAY, duration=float(duration))


def gradient() -> PulseEvent:
    return PulseEvent(GRADIENT)


@dataclass(frozen=True)
class PulseSequence:
    """Ordered events plus free-text notes (serialized as comments)."""

    events: tuple[PulseEvent, ...]
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)


def format_sequence(seq: PulseSequence | list[PulseEvent]) -> str:
    """Serialize to the line-based text format."""
    events = getattr(seq, "events", seq)
    lines = [f"# {note}" for note in getattr(seq, "notes", ())]
    for ev in events:
        if ev.kind == PULSE:
            line = f"PULSE {ev.target} {ev.angle_deg!r} {ev.phase_deg!r}"
            if ev.soft_tp is not None:
                line += f" SOFT {ev.soft_tp!r}"
            lines.append(line)
        elif ev.kind == DELAY:
            lines.append(f"DELAY {ev.duration!r}")
        else:
            lines.append("GRAD")
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> PulseSequence:
    """Parse the line-based text format; inverse of format_sequence."""
    events: list[PulseEvent] = []
    notes: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)
        if len(line) == 2 and not line[0].strip():
            notes.append(line[1].strip())
        body = line[0].strip()
        if not body:
            continue
        parts = body.split()
        word = parts[0].upper()
        if word == "PULSE":
            if len(parts) not in (4, 6):
                raise ValueError(f"malformed PULSE line: {raw!r}")
            target: int | str = parts[1]
            if target in ("1", "2"):
                target = int(target)
            elif target != TARGET_BOTH:
                raise ValueError(f"unknown pulse target in line: {raw!r}")
            soft_tp = None
            if len(parts) == 6:
                if parts[4].upper() != "SOFT":
                    raise ValueError(f"malformed PULSE line: {raw!r}")
                soft_tp = float(parts[5])
            events.append(pulse(target, float(parts[2]), float(parts[3]), soft_tp))
        elif word == "DELAY":
            if len(parts) != 2:
                raise ValueError(f"malformed DELAY line: {raw!r}")
            events.append(delay(float(parts[1])))
        elif word == "GRAD":
            if len(parts) != 1:
                raise ValueError(f"malformed GRAD line: {raw!r}")
            events.append(gradient())
        else:
            raise ValueError(f"unknown event {parts[0]!r}")
    return PulseSequence(tuple(events), tuple(notes))


# The four phase rows (theta, phi, psi) keyed by function label.  The five
# label-dependent pulse phases of a compiled oracle are drawn from these.
@dataclass(frozen=True)
class PhaseTableEntry:
    label: OracleLabel
    theta: str
    phi: str
    psi: str


ORACLE_PHASE_TABLE = {
    "f00": PhaseTableEntry(OracleLabel(0, 0), "+y", "+x", "-y"),
    "f01": PhaseTableEntry(OracleLabel(0, 1), "+y", "-x", "+y"),
    "f10": PhaseTableEntry(OracleLabel(1, 0), "-y", "-x", "-y"),
    "f11": PhaseTableEntry(OracleLabel(1, 1), "-y", "+x", "+y"),
}

# Under this package's rotation and phase conventions the phase rows produce
# the oracle of the bit-swapped label (the f01 and f10 rows trade places),
# verified by unitary equivalence in the test suite.  The compiler keys the
# table accordingly and notes the permutation on the emitted sequence.
ROW_FOR_LABEL = {label.name: label.swapped().name for label in ALL_LABELS}


def compile_oracle(label: OracleLabel, sys: SpinSystem) -> PulseSequence:
    """Compile the sign-flip oracle for ``label`` into pulses and 1/(4J)
    delays.

    Layout: a composite z-rotation sandwich on each spin (middle pulse phase
    theta on spin 1, psi on spin 2, opposite handedness), then the coupling
    block tau - 180(both) - tau - 180(both), whose first pair and the spin-1
    member of the second pair carry phase phi.  Ideal-pulse unitary equals
    the diagonal oracle up to global phase for any offsets (shifts refocus in
    the echo); exactly five pulse phases vary with the label.
    """
    row_name = ROW_FOR_LABEL[label.name]
    row = ORACLE_PHASE_TABLE[row_name]
    theta = PHASE_DEG[row.theta]
    phi = PHASE_DEG[row.phi]
    psi = PHASE_DEG[row.psi]
    tau = sys.tau
    events = (
        # composite z on spin 1: Rz(+90) for theta=+y, Rz(-90) for theta=-y
        pulse(1, 90.0, PHASE_DEG["-x"]),
        pulse(2, 90.0, PHASE_DEG["+x"]),
        pulse(1, 90.0, theta),
        pulse(2, 90.0, psi),
        pulse(1, 90.0, PHASE_DEG["+x"]),
        pulse(2, 90.0, PHASE_DEG["-x"]),
        # J coupling for 1/(2J) with shifts refocused
        delay(tau),
        pulse(1, 180.0, phi),
        pulse(2, 180.0, phi),
        delay(tau),
        pulse(1, 180.0, phi),
        pulse(2, 180.0, PHASE_DEG["+x"]),
    )
    notes = (
        f"oracle {label.name}: sign flip on |{label.a}{label.b}>",
        f"phase row {row_name}: theta={row.theta} phi={row.phi} psi={row.psi}"
        " (rows map to labels with the qubit bits swapped)",
    )
    return PulseSequence(events, notes)


def hadamard_pair(inverse: bool = False) -> PulseEvent:
    """90(+y) pulse on both spins (the pseudo-Hadamard pair), or 90(-y) for
    the inverse."""
    return pulse(TARGET_BOTH, 90.0, PHASE_DEG["-y" if inverse else "+y"])


def grover_program(label: OracleLabel, sys: SpinSystem) -> PulseSequence:
    """Full pulse program of the two-qubit search: inverse-h pair, compiled
    oracle, h pair, compiled |00> reflection, inverse-h pair."""
    u_fab = compile_oracle(label, sys)
    u_00 = compile_oracle(OracleLabel(0, 0), sys)
    events = (
        (hadamard_pair(inverse=True),)
        + u_fab.events
        + (hadamard_pair(),)
        + u_00.events
        + (hadamard_pair(inverse=True),)
    )
    notes = (f"two-qubit search program for {label.name}",) + u_fab.notes[1:]
    return PulseSequence(events, notes)


def pulse_operator(sys: SpinSystem, ev: PulseEvent, err: ErrorModel = IDEAL) -> np.ndarray:
    """Unitary of a pulse event under the given error model.

    An event-level SOFT duration always wins; otherwise the error model
    decides whether single-spin pulses get the finite-duration propagator.
    Pulses addressed to both spins stay ideal (hard pulses).
    """
    if ev.kind != PULSE:
        raise ValueError(f"expected a pulse event, got {ev.kind!r}")
    if ev.soft_tp is not None:
        return soft_pulse(sys, ev.target, ev.angle_deg, ev.phase_deg, ev.soft_tp)
    if err.mode == "soft-pulse" and ev.target in (1, 2):
        return soft_pulse(sys, ev.target, ev.angle_deg, ev.phase_deg, err.t_p)
    return ideal_pulse(ev.target, ev.angle_deg, ev.phase_deg)


def event_operator(sys: SpinSystem, ev: PulseEvent, err: ErrorModel = IDEAL) -> np.ndarray:
    """Unitary propagator of a pulse or delay event (gradients are not
    unitary; run_sequence handles them)."""
    if ev.kind == DELAY:
        return free_evolution(sys, ev.duration)
    return pulse_operator(sys, ev, err)


def sequence_unitary(sys: SpinSystem, seq, err: ErrorModel = IDEAL) -> np.ndarray:
    """Product of the event propagators (earliest applied first).

    Raises on gradient events, which have no unitary representation.
    """
    u = np.eye(4, dtype=complex)
    for ev in getattr(seq, "events", seq):
        if ev.kind == GRADIENT:
            raise ValueError("gradient events have no unitary; use run_sequence")
        u = event_operator(sys, ev, err) @ u
    return u


def run_sequence(
    sys: SpinSystem, seq, rho0: np.ndarray, err: ErrorModel = IDEAL
) -> np.ndarray:
    """Left-fold the sequence over a density matrix: unitary events conjugate
    it, gradient events crush nonzero coherence orders."""
    rho = np.asarray(rho0, dtype=complex)
    for ev in getattr(seq, "events", seq):
        if ev.kind == GRADIENT:
            rho = gradient_crush(rho)
        else:
            rho = apply_unitary(event_operator(sys, ev, err), rho)
    return rho
