"""Gate-level two-qubit search circuit and the generalized N/k amplitude
amplification, plus the classical sampling comparator.

Conventions (fixed package-wide): Ry(beta) = exp(-i*beta*sigma_y/2), so the
pseudo-Hadamard h = Ry(90 deg) = (1/sqrt(2)) [[1, -1], [1, 1]] and h maps
|0> to (|0>+|1>)/sqrt(2).  Basis ordering puts the first qubit in the most
significant bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    apply_single_qubit,
    apply_unitary,
    basis_state,
    kron,
)

_SQRT2 = math.sqrt(2.0)

ORACLE_LABELS = ("f00", "f01", "f10", "f11")


@dataclass(frozen=True)
class OracleLabel:
    """One of the four two-bit search functions, labelled by its satisfying
    bit pattern (a = first qubit, b = second qubit)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got ({self.a}, {self.b})")

    @classmethod
    def from_name(cls, name: str) -> "OracleLabel":
        """Parse 'f01'-style names."""
        if len(name) != 3 or name[0] != "f" or name[1] not in "01" or name[2] not in "01":
            raise ValueError(f"invalid oracle label {name!r}; expected one of {ORACLE_LABELS}")
        return cls(int(name[1]), int(name[2]))

    @property
    def name(self) -> str:
        return f"f{self.a}{self.b}"

    @property
    def index(self) -> int:
        """Marked basis index 2a + b."""
        return 2 * self.a + self.b

    def swapped(self) -> "OracleLabel":
        return OracleLabel(self.b, self.a)


ALL_LABELS = tuple(OracleLabel.from_name(n) for n in ORACLE_LABELS)


@dataclass(frozen=True)
class SearchProblem:
    """Search over N = 2**n_qubits items with a set of marked indices."""

    n_qubits: int
    marked: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= 20:
            raise ValueError("n_qubits must be between 1 and 20 (desk scale)")
        object.__setattr__(self, "marked", frozenset(self.marked))
        if not self.marked:
            raise ValueError("at least one marked element is required (k >= 1)")
        if min(self.marked) < 0 or max(self.marked) >= self.size:
            raise ValueError("marked indices out of range")

    @property
    def size(self) -> int:
        return 2**self.n_qubits

    @property
    def k(self) -> int:
        return len(self.marked)


def ry(beta_deg: float) -> np.ndarray:
    """Ry(beta) = exp(-i*beta*sigma_y/2)."""
    half = math.radians(beta_deg) / 2
    c, s = math.cos(half), math.sin(half)
    return np.array([[c, -s], [s, c]], dtype=complex)


def pseudo_hadamard() -> np.ndarray:
    """h = Ry(90 deg): maps each eigenstate to a signed uniform superposition."""
    return np.array([[1, -1], [1, 1]], dtype=complex) / _SQRT2


def pseudo_hadamard_inverse() -> np.ndarray:
    """h^-1 = Ry(-90 deg): exactly the transpose of h (a real rotation)."""
    return np.array([[1, 1], [-1, 1]], dtype=complex) / _SQRT2


def oracle_matrix(label: OracleLabel) -> np.ndarray:
    """Diagonal oracle flipping the sign of |ab>; the diffusion gate U_00 is
    oracle_matrix(OracleLabel(0, 0))."""
    diag = np.ones(4, dtype=complex)
    diag[label.index] = -1.0
    return np.diag(diag)


def grover2_circuit(label: OracleLabel) -> np.ndarray:
    """Run the two-qubit search circuit from |00> for the given function.

    Circuit order (leftmost applied first):
    (h^-1 x h^-1) . U_fab . (h x h) . U_00 . (h^-1 x h^-1).
    The output equals |ab> up to a convention-fixed global phase.
    """
    h = pseudo_hadamard()
    hinv = pseudo_hadamard_inverse()
    hinv2 = kron(hinv, hinv)
    h2 = kron(h, h)
    u_fab = oracle_matrix(label)
    u_00 = oracle_matrix(OracleLabel(0, 0))

    psi = basis_state(2, 0)
    for gate in (hinv2, u_fab, h2, u_00, hinv2):
        psi = apply_unitary(gate, psi)
    return psi


def read_bits(psi: np.ndarray) -> tuple[int, int]:
    """Identify the two-qubit output by its dominant basis state."""
    index = int(np.argmax(np.abs(psi) ** 2))
    return index >> 1, index & 1


def _signed_uniform(n_qubits: int) -> np.ndarray:
    """(h^-1)^(x n) |0...0>: uniform magnitudes with Ry(-90) sign pattern."""
    psi = basis_state(n_qubits, 0)
    hinv = pseudo_hadamard_inverse()
    for q in range(1, n_qubits + 1):
        psi = apply_single_qubit(hinv, psi, q)
    return psi


def _diffusion_step(psi: np.ndarray, n_qubits: int) -> np.ndarray:
    """Inversion about the start state, built as h^(x n) then a |0...0> sign
    flip then (h^-1)^(x n), mirroring the two-qubit circuit structure."""
    h = pseudo_hadamard()
    hinv = pseudo_hadamard_inverse()
    for q in range(1, n_qubits + 1):
        psi = apply_single_qubit(h, psi, q)
    psi = psi.copy()
    psi[0] = -psi[0]
    for q in range(1, n_qubits + 1):
        psi = apply_single_qubit(hinv, psi, q)
    return psi


def grover_start(problem: SearchProblem) -> np.ndarray:
    """The uniform start state of the search iteration."""
    return _signed_uniform(problem.n_qubits)


def grover_iterate(problem: SearchProblem, psi: np.ndarray) -> np.ndarray:
    """One search iterate: marked-set sign flip, then inversion about the
    start state."""
    marked = np.fromiter(problem.marked, dtype=np.intp)
    psi = psi.copy()
    psi[marked] = -psi[marked]
    return _diffusion_step(psi, problem.n_qubits)


def grover_general(problem: SearchProblem, iterations: int) -> np.ndarray:
    """State after ``iterations`` applications of the search iterate to the
    uniform start state.  Matrix-free; fine up to 20 qubits."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    psi = grover_start(problem)
    for _ in range(iterations):
        psi = grover_iterate(problem, psi)
    return psi


def success_probability(problem: SearchProblem, psi: np.ndarray) -> float:
    """Total probability of measuring a marked index."""
    marked = np.fromiter(problem.marked, dtype=np.intp)
    return float(np.sum(np.abs(psi[marked]) ** 2))


def predicted_success_probability(n: int, k: int, iterations: int) -> float:
    """sin^2((2m+1) * asin(sqrt(k/N))): the exact rotation-picture value."""
    theta = math.asin(math.sqrt(k / n))
    return math.sin((2 * iterations + 1) * theta) ** 2


def optimal_iterations(problem: SearchProblem) -> int:
    """round(pi/(4*theta) - 1/2) with theta = asin(sqrt(k/N)), clamped to >= 0.

    Rounds half away from zero (floor(x + 1/2), which collapses to
    floor(pi/(4*theta))); equals exactly 1 for k = N/4.  The 1e-12 nudge
    absorbs ulp jitter from asin at exact-integer boundaries such as k = N/2,
    where neighbouring counts give identical success probability anyway.
    """
    theta = math.asin(math.sqrt(problem.k / problem.size))
    return max(0, int(math.floor(math.pi / (4 * theta) + 1e-12)))


def classical_expected_evaluations(n: int, k: int) -> float:
    """Exact expected number of evaluations, (N+1)/(k+1), for uniform
    sampling without replacement until a marked element is found."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= N")
    return (n + 1) / (k + 1)


def classical_approx_evaluations(n: int, k: int) -> float:
    """The coarse N/(2k) estimate, exposed for comparison tables."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= N")
    return n / (2 * k)


def monte_carlo_evaluations(
    n: int, k: int, trials: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Simulate sampling without replacement; returns (mean, std error).

    Each trial draws items uniformly from the remaining pool until a marked
    one comes up; with no marked item drawn yet, draw i is marked with
    probability k / (N - i + 1).  This simulates the process directly rather
    than using the closed form, so it is an independent check of it.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= N")
    counts = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    for draw in range(1, n - k + 2):
        p_marked = k / (n - draw + 1)
        hits = rng.random(active.shape[0]) < p_marked
        counts[active[hits]] = draw
        active = active[~hits]
        if active.size == 0:
            break
    counts[active] = n - k + 1  # exhausted the unmarked pool
    mean = float(np.mean(counts))
    stderr = float(np.std(counts, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return mean, stderr
