"""Quantum state representations and conversions.

Bit-ordering convention used across the whole package: qubit 0 is the MOST
significant bit of a state-vector index, and character position ``i`` of a
bitstring corresponds to qubit ``i`` (qubit 0 leftmost). Helper functions
`index_to_bitstring` / `bitstring_to_index` / `bit_position` are the single
source of truth for that mapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

NORM_ATOL = 1e-10


def bit_position(num_qubits: int, qubit: int) -> int:
    """Bit position of `qubit` inside a state-vector index (qubit 0 = MSB)."""
    return num_qubits - 1 - qubit


def index_to_bitstring(index: int, num_qubits: int) -> str:
    return format(index, f"0{num_qubits}b")


def bitstring_to_index(bits: str) -> int:
    return int(bits, 2) if bits else 0


def _as_complex_vector(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise DomainError(f"state vector must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class StateVector:
    """Pure n-qubit state: 2^n complex amplitudes, unit L2 norm.

    Instances are immutable; the amplitude buffer is marked read-only so the
    object can be shared freely between threads.
    """

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_complex_vector(self.amplitudes)
        if self.num_qubits < 1:
            raise DomainError("num_qubits must be >= 1")
        if amps.shape[0] != 1 << self.num_qubits:
            raise DomainError(
                f"expected {1 << self.num_qubits} amplitudes for {self.num_qubits} qubits, "
                f"got {amps.shape[0]}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_ATOL:
            raise DomainError(f"state vector norm {norm} deviates from 1 by more than {NORM_ATOL}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed or pure n-qubit state as a 2^n x 2^n Hermitian, trace-1 operator."""

    num_qubits: int
    entries: np.ndarray

    HERMITIAN_ATOL = 1e-10
    TRACE_ATOL = 1e-10
    PSD_ATOL = 1e-8

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=np.complex128)
        dim = 1 << self.num_qubits
        if self.num_qubits < 1:
            raise DomainError("num_qubits must be >= 1")
        if mat.shape != (dim, dim):
            raise DomainError(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > self.HERMITIAN_ATOL:
            raise DomainError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(mat).real - 1.0) > self.TRACE_ATOL or abs(np.trace(mat).imag) > self.TRACE_ATOL:
            raise DomainError("density matrix trace deviates from 1")
        if np.min(np.linalg.eigvalsh(mat)) < -self.PSD_ATOL:
            raise DomainError("density matrix has an eigenvalue below the PSD tolerance")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)


@dataclass
class ClassicalRegister:
    """Ordered map of labelled classical bits; value None means not yet measured."""

    bits: dict[str, int | None] = field(default_factory=dict)

    def declare(self, label: str) -> None:
        if label in self.bits:
            raise DomainError(f"classical bit label {label!r} already declared")
        self.bits[label] = None

    def write(self, label: str, value: int) -> None:
        if value not in (0, 1):
            raise DomainError(f"classical bit value must be 0 or 1, got {value}")
        self.bits[label] = value

    def read(self, label: str) -> int | None:
        if label not in self.bits:
            raise DomainError(f"unknown classical bit label {label!r}")
        return self.bits[label]

    def labels(self) -> list[str]:
        return list(self.bits.keys())

    def bitstring(self) -> str:
        """Measured bits in declaration order; unset bits are excluded."""
        return "".join(str(v) for v in self.bits.values() if v is not None)


def basis_state(num_qubits: int, index: int = 0) -> StateVector:
    """Computational basis state |index> on `num_qubits` qubits."""
    if num_qubits < 1:
        raise DomainError("num_qubits must be >= 1")
    if not 0 <= index < (1 << num_qubits):
        raise DomainError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def create_state(qubit: int, alpha: float) -> StateVector:
    """Single-qubit state alpha|0> + sqrt(1-alpha^2)|1> with real non-negative beta.

    `qubit` names the wire the state is meant for (kept for call-site
    readability; circuits take initial states in wire order).
    """
    if qubit < 0:
        raise DomainError("qubit index must be non-negative")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    beta = np.sqrt(1.0 - alpha * alpha)
    return StateVector(1, np.array([alpha, beta], dtype=np.complex128))


def bloch_state(theta: float, phi: float) -> StateVector:
    """Full Bloch-sphere initializer: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    amps = np.array(
        [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
        dtype=np.complex128,
    )
    return StateVector(1, amps)


def tensor_combine(states: list[StateVector] | tuple[StateVector, ...]) -> StateVector:
    """Kronecker product in wire order; qubit 0 of the first state is the MSB."""
    if not states:
        raise DomainError("tensor_combine needs at least one state")
    amps = states[0].amplitudes
    total = states[0].num_qubits
    for sv in states[1:]:
        amps = np.kron(amps, sv.amplitudes)
        total += sv.num_qubits
    return StateVector(total, amps)


def sv_to_probability(sv: StateVector) -> dict[str, float]:
    """Map bitstring -> |amplitude|^2; entries with exactly zero probability are omitted."""
    probs = sv.probabilities()
    out: dict[str, float] = {}
    for idx, p in enumerate(probs):
        if p > 0.0:
            out[index_to_bitstring(idx, sv.num_qubits)] = float(p)
    return out


def sv_to_density(sv: StateVector) -> DensityMatrix:
    """Rank-1 projector |psi><psi| of a pure state."""
    rho = np.outer(sv.amplitudes, sv.amplitudes.conj())
    return DensityMatrix(sv.num_qubits, rho)


def reduced_density(sv: StateVector, keep: list[int] | tuple[int, ...]) -> DensityMatrix:
    """Partial trace of |psi><psi| keeping only the listed qubits (in the given order)."""
    n = sv.num_qubits
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise DomainError("kept qubits must be distinct")
    if any(not 0 <= q < n for q in keep):
        raise DomainError("kept qubit index out of range")
    traced = [q for q in range(n) if q not in keep]
    tensor = sv.amplitudes.reshape([2] * n)
    # Move kept axes first, flatten kept/traced blocks, contract the traced block.
    tensor = np.moveaxis(tensor, keep, range(len(keep)))
    tensor = tensor.reshape(1 << len(keep), 1 << len(traced))
    rho = tensor @ tensor.conj().T
    return DensityMatrix(len(keep), rho)


def single_qubit_state(sv: StateVector, qubit: int) -> StateVector:
    """State of one qubit of a product state.

    Defined only when the qubit is unentangled with the rest of the register;
    raises DomainError otherwise. The returned state fixes the global phase by
    making its largest-magnitude amplitude real and non-negative.
    """
    rho = reduced_density(sv, [qubit])
    if abs(rho.purity() - 1.0) > 1e-9:
        raise DomainError(
            f"qubit {qubit} is entangled with the rest of the register; "
            "per-qubit state is only defined for product states"
        )
    vals, vecs = np.linalg.eigh(rho.entries)
    vec = vecs[:, int(np.argmax(vals))]
    pivot = vec[int(np.argmax(np.abs(vec)))]
    vec = vec * (pivot.conjugate() / abs(pivot))
    vec = vec / np.linalg.norm(vec)
    return StateVector(1, vec)
