"""Two-spin dynamics: weak-coupling Hamiltonian, RF pulse propagators,
gradient crushers and effective pure states.

All frequencies are rotating-frame offsets in Hz; propagators are
U = exp(-i 2*pi*t H) with H in Hz.  Pulse phases map +x=0, +y=90, -x=180,
-y=270 degrees, and a pulse of flip angle beta about the phase-phi axis is
exp(-i beta (cos(phi) Ix + sin(phi) Iy)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .core import (
    IDENTITY_2,
    IX,
    IY,
    IZ,
    coherence_order_matrix,
    density_from_state,
    kron,
)

IZ1 = kron(IZ, IDENTITY_2)
IZ2 = kron(IDENTITY_2, IZ)
IZZ = kron(IZ, IZ)
FZ = IZ1 + IZ2

TARGET_SPIN1 = 1
TARGET_SPIN2 = 2
TARGET_BOTH = "both"


@dataclass(frozen=True)
class SpinSystem:
    """Two weakly coupled spins: offsets nu1, nu2 (Hz), scalar coupling
    J (Hz), transverse relaxation time T2 (s).

    T2 only shapes the detected line widths; coherent evolution ignores it.
    """

    nu1: float = 80.0
    nu2: float = -80.0
    j: float = 7.0
    t2: float = 1.0

    def __post_init__(self) -> None:
        if self.j <= 0:
            raise ValueError("J must be positive")
        if self.t2 <= 0:
            raise ValueError("T2 must be positive")
        if abs(self.nu1 - self.nu2) <= 10 * self.j:
            raise ValueError("weak coupling requires |nu1 - nu2| > 10 J")

    @property
    def tau(self) -> float:
        """The 1/(4J) delay used by the compiled two-qubit gates."""
        return 1.0 / (4.0 * self.j)


@dataclass(frozen=True)
class ErrorModel:
    """Pulse imperfection model.

    mode 'none' treats every pulse as an instantaneous rotation.  mode
    'soft-pulse' gives single-spin pulses a finite duration t_p with RF
    amplitude flip/(360 * t_p) Hz, so the spectator spin evolves (and the
    coupling acts) during the pulse; pulses addressed to both spins model
    short hard pulses and stay ideal.
    """

    mode: str = "none"
    t_p: float = 0.0

    def __post_init__(self) -> None:
        if self.mode not in ("none", "soft-pulse"):
            raise ValueError(f"unknown error mode {self.mode!r}")
        if self.mode == "soft-pulse" and self.t_p <= 0:
            raise ValueError("soft-pulse mode requires t_p > 0")


IDEAL = ErrorModel()


def hamiltonian(sys: SpinSystem, nu1: float | None = None, nu2: float | None = None) -> np.ndarray:
    """Weak-coupling Hamiltonian nu1*Iz1 + nu2*Iz2 + J*Iz1Iz2 in Hz (diagonal)."""
    a = sys.nu1 if nu1 is None else nu1
    b = sys.nu2 if nu2 is None else nu2
    return a * IZ1 + b * IZ2 + sys.j * IZZ


def free_evolution(sys: SpinSystem, t: float) -> np.ndarray:
    """Propagator exp(-i 2*pi*t H) of free precession for duration t >= 0."""
    if t < 0:
        raise ValueError("evolution time must be >= 0")
    h = hamiltonian(sys)
    return np.diag(np.exp(-2j * math.pi * t * np.diag(h)))


def _rotation_axis(phase_deg: float) -> np.ndarray:
    phi = math.radians(phase_deg)
    return math.cos(phi) * IX + math.sin(phi) * IY


def ideal_pulse(target: int | str, flip_deg: float, phase_deg: float) -> np.ndarray:
    """Instantaneous rotation on one spin (identity on the other) or on both."""
    beta = math.radians(flip_deg)
    axis = _rotation_axis(phase_deg)
    u2 = expm(-1j * beta * axis)
    if target == TARGET_SPIN1:
        return kron(u2, IDENTITY_2)
    if target == TARGET_SPIN2:
        return kron(IDENTITY_2, u2)
    if target == TARGET_BOTH:
        return kron(u2, u2)
    raise ValueError(f"unknown pulse target {target!r}")


def soft_pulse(
    sys: SpinSystem, target: int, flip_deg: float, phase_deg: float, t_p: float
) -> np.ndarray:
    """Finite-duration selective pulse on one spin.

    The propagator is computed in the frame of the pulse carrier (placed on
    the target spin's offset), where the Hamiltonian is time-independent:
    shifted offsets + coupling + the RF term on the target spin with
    amplitude flip/(360*t_p) Hz.  The result is rotated back into the shared
    rotating frame, so during t_p the spectator precesses at its own offset
    and the coupling keeps running -- the finite-duration errors of a real
    selective pulse.
    """
    if t_p <= 0:
        raise ValueError("soft pulse duration must be positive")
    if target == TARGET_SPIN1:
        carrier = sys.nu1
        rf_axis = kron(_rotation_axis(phase_deg), IDENTITY_2)
    elif target == TARGET_SPIN2:
        carrier = sys.nu2
        rf_axis = kron(IDENTITY_2, _rotation_axis(phase_deg))
    else:
        raise ValueError("soft pulses address a single spin")
    omega1 = flip_deg / (360.0 * t_p)
    h_carrier = hamiltonian(sys, nu1=sys.nu1 - carrier, nu2=sys.nu2 - carrier) + omega1 * rf_axis
    u_carrier = expm(-2j * math.pi * t_p * h_carrier)
    frame = np.diag(np.exp(-2j * math.pi * carrier * t_p * np.diag(FZ)))
    return frame @ u_carrier


def gradient_crush(rho: np.ndarray) -> np.ndarray:
    """Zero every density-matrix element with nonzero coherence order.

    Populations and zero-quantum coherences survive; the result stays
    Hermitian with unit trace.  Idempotent.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0].bit_length() - 1
    orders = coherence_order_matrix(n)
    return np.where(orders == 0, rho, 0.0)


def pseudo_pure_00(epsilon: float) -> np.ndarray:
    """Effective pure state (1 - eps) I/4 + eps |00><00| for 0 < eps <= 1."""
    if not 0 < epsilon <= 1:
        raise ValueError("purity parameter must satisfy 0 < epsilon <= 1")
    rho00 = np.zeros((4, 4), dtype=complex)
    rho00[0, 0] = 1.0
    return (1 - epsilon) * np.eye(4, dtype=complex) / 4 + epsilon * rho00


def temporal_average_00(populations) -> np.ndarray:
    """Temporal averaging toward |00>: average the diagonal state over the two
    cyclic permutations of the non-|00> populations.

    diag(p0, p1, p2, p3) averages to diag(p0, pbar, pbar, pbar) with
    pbar = (p1+p2+p3)/3, whose traceless part is proportional to the
    traceless part of |00><00|.
    """
    p = np.asarray(populations, dtype=float)
    if p.shape != (4,):
        raise ValueError("expected four diagonal populations")
    if abs(float(np.sum(p)) - 1.0) > 1e-12:
        raise ValueError("populations must sum to 1")
    cycles = [
        [p[0], p[1], p[2], p[3]],
        [p[0], p[2], p[3], p[1]],
        [p[0], p[3], p[1], p[2]],
    ]
    avg = np.mean(np.asarray(cycles), axis=0)
    return np.diag(avg).astype(complex)


def state_00() -> np.ndarray:
    """|00><00| as a density matrix."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    return density_from_state(psi)
