"""Dense complex linear algebra and quantum-state primitives.

States live in the Zeeman product basis |00>, |01>, |10>, |11>, ... with the
first spin (qubit 1) as the most significant bit.  State vectors and density
matrices are plain complex numpy arrays; the helpers here validate the
invariants (unit norm, Hermiticity, unit trace) instead of wrapping arrays in
classes.  Everything is pure: no function mutates its input.
"""

from __future__ import annotations

import numpy as np

# Tolerances used throughout the package.
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12

# Pauli matrices and the single-spin angular momentum operators (hbar = 1).
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
IX = SIGMA_X / 2
IY = SIGMA_Y / 2
IZ = SIGMA_Z / 2


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices; dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    """True iff max|U†U - I| <= tol."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    delta = u.conj().T @ u - np.eye(u.shape[0])
    return float(np.max(np.abs(delta))) <= tol


def basis_state(n_qubits: int, index: int) -> np.ndarray:
    """Computational basis ket |index> on n_qubits (first spin = MSB)."""
    if not 0 <= index < 2**n_qubits:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def ket_label(index: int, n_qubits: int) -> str:
    """Bit-pattern label of a basis index, e.g. ``ket_label(2, 2) == '10'``."""
    return format(index, f"0{n_qubits}b")


def density_from_state(psi: np.ndarray) -> np.ndarray:
    """Rank-one density matrix |psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def check_state_vector(psi: np.ndarray, tol: float = NORM_TOL) -> None:
    """Raise ValueError unless psi is a unit-norm state vector of 2^n entries."""
    psi = np.asarray(psi)
    n = psi.shape[0]
    if psi.ndim != 1 or n & (n - 1):
        raise ValueError(f"state vector length {psi.shape} is not a power of two")
    norm_err = abs(float(np.sum(np.abs(psi) ** 2)) - 1.0)
    if norm_err > tol:
        raise ValueError(f"state vector norm deviates from 1 by {norm_err:.3e}")


def check_density_matrix(rho: np.ndarray, tol: float = NORM_TOL) -> None:
    """Raise ValueError unless rho is Hermitian, unit trace, and PSD to 1e-10."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if float(np.max(np.abs(rho - rho.conj().T))) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(complex(np.trace(rho)).real - 1.0) > tol:
        raise ValueError("density matrix trace deviates from 1")
    if float(np.min(np.linalg.eigvalsh(rho))) < -1e-10:
        raise ValueError("density matrix has a significantly negative eigenvalue")


def apply_unitary(u: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Apply U to a state vector (U s) or density matrix (U s U†).

    Validates unitarity of ``u`` at 1e-10 and the dimension match; preserves
    norm/trace by construction.
    """
    u = np.asarray(u, dtype=complex)
    state = np.asarray(state, dtype=complex)
    if not is_unitary(u):
        raise ValueError("operator is not unitary at tolerance 1e-10")
    if state.shape[0] != u.shape[0]:
        raise ValueError(f"dimension mismatch: {u.shape} vs {state.shape}")
    if state.ndim == 1:
        return u @ state
    if state.ndim == 2:
        return u @ state @ u.conj().T
    raise ValueError("state must be a vector or a square matrix")


def apply_single_qubit(u2: np.ndarray, psi: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 unitary to one qubit of a state vector.

    ``qubit`` counts from 1 (= most significant bit).  Matrix-free, so it
    stays cheap for the 20-qubit statevector cases.
    """
    psi = np.asarray(psi, dtype=complex)
    n = psi.shape[0].bit_length() - 1
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    left = 2 ** (qubit - 1)
    right = 2 ** (n - qubit)
    t = psi.reshape(left, 2, right)
    out = np.einsum("ab,ibj->iaj", np.asarray(u2, dtype=complex), t)
    return out.reshape(-1)


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff a == c*b for some unit-modulus c, within max-norm tol.

    The candidate c is read off the largest-magnitude entry of b.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    flat_b = b.ravel()
    k = int(np.argmax(np.abs(flat_b)))
    if abs(flat_b[k]) == 0.0:
        raise ValueError("reference array is identically zero")
    ratio = a.ravel()[k] / flat_b[k]
    if abs(ratio) < tol:
        return False
    c = ratio / abs(ratio)
    return float(np.max(np.abs(a - c * b))) <= tol


def global_phase_factor(a: np.ndarray, b: np.ndarray) -> complex:
    """Unit-modulus c minimising a - c*b, read off b's largest entry."""
    b = np.asarray(b, dtype=complex).ravel()
    k = int(np.argmax(np.abs(b)))
    ratio = np.asarray(a, dtype=complex).ravel()[k] / b[k]
    if abs(ratio) == 0.0:
        raise ValueError("arrays are not phase-related (zero overlap entry)")
    return ratio / abs(ratio)


def coherence_order(i: int, j: int, n_qubits: int) -> int:
    """Coherence order of the density-matrix element rho_ij.

    Defined as popcount(j) - popcount(i): the difference in the number of
    spins in |1> between the bra and ket side.  Field-gradient pulses dephase
    every element with nonzero order.
    """
    dim = 2**n_qubits
    if not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"indices ({i}, {j}) out of range for {n_qubits} qubits")
    return bin(j).count("1") - bin(i).count("1")


def coherence_order_matrix(n_qubits: int) -> np.ndarray:
    """Matrix of coherence orders for all (i, j) pairs."""
    pops = np.array([bin(i).count("1") for i in range(2**n_qubits)])
    return pops[None, :] - pops[:, None]


def fidelity(psi: np.ndarray, rho: np.ndarray) -> float:
    """<psi|rho|psi> for a pure target state; real in [0, 1]."""
    psi = np.asarray(psi, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (psi.shape[0], psi.shape[0]):
        raise ValueError(f"dimension mismatch: {psi.shape} vs {rho.shape}")
    value = complex(psi.conj() @ rho @ psi)
    if abs(value.imag) > 1e-12:
        raise ValueError(f"fidelity has non-negligible imaginary part {value.imag:.3e}")
    return float(value.real)
