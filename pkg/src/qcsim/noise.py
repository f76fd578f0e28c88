"""Kraus noise channels: bit flip, phase flip, depolarizing.

Each channel stores single-qubit Kraus operators applied independently to each
target wire. The depolarizing parameter `p` is the probability of full
depolarization, rho -> (1-p) rho + p I/2 (each Pauli error has weight p/4).

Two application paths exist:

* `apply_channel_density` - exact evolution of a density matrix,
* `sample_kraus` - one stochastic trajectory branch on a pure state; over many
  shots the trajectory ensemble converges to the exact channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .qstate import DensityMatrix, StateVector, bit_position

TRACE_PRESERVING_ATOL = 1e-12

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class NoiseChannel:
    """A named single-qubit Kraus channel attached to one or more target wires."""

    name: str
    p: float
    targets: tuple[int, ...]
    kraus_ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"noise probability must lie in [0, 1], got {self.p}")
        targets = tuple(int(t) for t in self.targets)
        if len(set(targets)) != len(targets):
            raise DomainError(f"channel {self.name!r} has duplicate target wires")
        if any(t < 0 for t in targets):
            raise DomainError(f"channel {self.name!r} has a negative wire index")
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus_ops)
        total = sum(k.conj().T @ k for k in ops)
        if np.max(np.abs(total - _I2)) > TRACE_PRESERVING_ATOL:
            raise DomainError(f"channel {self.name!r} is not trace preserving")
        ops = tuple(_readonly(k) for k in ops)
        object.__setattr__(self, "kraus_ops", ops)
        object.__setattr__(self, "targets", targets)


def _readonly(mat: np.ndarray) -> np.ndarray:
    mat = mat.copy()
    mat.flags.writeable = False
    return mat


def _targets_tuple(target) -> tuple[int, ...]:
    if isinstance(target, (int, np.integer)):
        return (int(target),)
    return tuple(int(t) for t in target)


def bit_flip(p: float, target) -> NoiseChannel:
    """Kraus set {sqrt(1-p) I, sqrt(p) X}; `target` may be a wire or a wire list."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise probability must lie in [0, 1], got {p}")
    ops = (np.sqrt(1.0 - p) * _I2, np.sqrt(p) * _X)
    return NoiseChannel("bitflip", p, _targets_tuple(target), ops)


def phase_flip(p: float, target) -> NoiseChannel:
    """Kraus set {sqrt(1-p) I, sqrt(p) Z}."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise probability must lie in [0, 1], got {p}")
    ops = (np.sqrt(1.0 - p) * _I2, np.sqrt(p) * _Z)
    return NoiseChannel("phaseflip", p, _targets_tuple(target), ops)


def depolarizing(p: float, target) -> NoiseChannel:
    """Kraus set {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise probability must lie in [0, 1], got {p}")
    ops = (
        np.sqrt(1.0 - 0.75 * p) * _I2,
        np.sqrt(p / 4.0) * _X,
        np.sqrt(p / 4.0) * _Y,
        np.sqrt(p / 4.0) * _Z,
    )
    return NoiseChannel("depolarizing", p, _targets_tuple(target), ops)


CHANNEL_BUILDERS = {
    "bitflip": bit_flip,
    "phaseflip": phase_flip,
    "depolarizing": depolarizing,
}


def _embed_on_wire(op: np.ndarray, target: int, num_qubits: int) -> np.ndarray:
    """Kronecker embedding of a 2x2 operator on one wire of an n-qubit register."""
    full = np.array([[1.0 + 0j]])
    for q in range(num_qubits):
        full = np.kron(full, op if q == target else _I2)
    return full


def apply_channel_density(rho: DensityMatrix, ch: NoiseChannel) -> DensityMatrix:
    """Exact channel application: rho' = sum_i K_i rho K_i+, per target wire in order."""
    n = rho.num_qubits
    if any(t >= n for t in ch.targets):
        raise DomainError(f"channel {ch.name!r} targets a wire outside the {n}-qubit register")
    mat = np.asarray(rho.entries)
    for t in ch.targets:
        acc = np.zeros_like(mat)
        for k in ch.kraus_ops:
            full = _embed_on_wire(k, t, n)
            acc += full @ mat @ full.conj().T
        mat = acc
    return DensityMatrix(n, mat)


def _apply_2x2(amps: np.ndarray, op: np.ndarray, bitpos: int) -> np.ndarray:
    """Apply a (not necessarily unitary) 2x2 operator on one wire of a raw amplitude array."""
    tk = 1 << bitpos
    g = np.arange(amps.shape[0] >> 1)
    i0 = ((g >> bitpos) << (bitpos + 1)) | (g & (tk - 1))
    i1 = i0 + tk
    out = np.empty_like(amps)
    a0, a1 = amps[i0], amps[i1]
    out[i0] = op[0, 0] * a0 + op[0, 1] * a1
    out[i1] = op[1, 0] * a0 + op[1, 1] * a1
    return out


def sample_kraus(sv: StateVector, ch: NoiseChannel, rng: np.random.Generator) -> StateVector:
    """One trajectory branch: per target, pick Kraus index i with prob ||K_i psi||^2.

    Consumes exactly one uniform draw per target wire, so shot streams stay
    aligned regardless of which branch is taken.
    """
    n = sv.num_qubits
    if any(t >= n for t in ch.targets):
        raise DomainError(f"channel {ch.name!r} targets a wire outside the {n}-qubit register")
    amps = np.array(sv.amplitudes)
    for t in ch.targets:
        bitpos = bit_position(n, t)
        branches = [_apply_2x2(amps, k, bitpos) for k in ch.kraus_ops]
        weights = np.array([float(np.vdot(b, b).real) for b in branches])
        u = rng.random() * weights.sum()
        choice = int(np.searchsorted(np.cumsum(weights), u, side="right"))
        choice = min(choice, len(branches) - 1)
        amps = branches[choice] / np.sqrt(weights[choice])
    return StateVector(n, amps)
