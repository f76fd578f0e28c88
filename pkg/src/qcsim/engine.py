"""Single-shot execution: apply elements in order, measure, collapse.

The hot path encodes consecutive gates into flat arrays once and runs them
through the compiled stride kernels (`_kernels`); noise sampling, measurement
and classical control happen between gate segments. One run owns its amplitude
array exclusively; the public state types are immutable snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .circuit import Circuit, ClassicalControlOp, GateOp, MeasureOp, NoiseOp
from .errors import DomainError, SimulationError
from .gates import GateDef
from .noise import sample_kraus
from .qstate import (
    ClassicalRegister,
    StateVector,
    bit_position,
    bitstring_to_index,
    index_to_bitstring,
)

MAX_QUBITS = 26

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class RunOutcome:
    """Result of one engine run: final state plus any classical readout."""

    statevector: StateVector
    classical: ClassicalRegister
    measured_bitstring: str | None
    measured_index: int | None


def as_rng(rng) -> np.random.Generator:
    if rng is None:
        return np.random.default_rng()
    if isinstance(rng, (int, np.integer)):
        return np.random.default_rng(int(rng))
    return rng


# ---------------------------------------------------------------------------
# gate-segment encoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GateProgram:
    """A run of gates encoded as flat arrays for the compiled kernel loop."""

    arities: np.ndarray
    mat_flat: np.ndarray
    mat_off: np.ndarray
    tgt_bits: np.ndarray
    tgt_off: np.ndarray


def compile_gates(gates: list[GateDef], num_qubits: int) -> GateProgram:
    arities = np.array([g.arity for g in gates], dtype=np.int64)
    mat_off = np.zeros(len(gates), dtype=np.int64)
    tgt_off = np.zeros(len(gates), dtype=np.int64)
    mo = to = 0
    mats: list[np.ndarray] = []
    bits: list[int] = []
    for i, g in enumerate(gates):
        mat_off[i] = mo
        tgt_off[i] = to
        mats.append(g.matrix.ravel())
        bits.extend(bit_position(num_qubits, t) for t in g.targets)
        mo += g.matrix.size
        to += g.arity
    mat_flat = np.concatenate(mats) if mats else np.zeros(0, dtype=np.complex128)
    tgt_bits = np.array(bits, dtype=np.int64)
    return GateProgram(arities, mat_flat, mat_off, tgt_bits, tgt_off)


def apply_program(amps: np.ndarray, program: GateProgram) -> None:
    """Run an encoded gate sequence in place on a raw amplitude array."""
    if program.arities.shape[0]:
        _kernels._run_program(
            amps,
            program.arities,
            program.mat_flat,
            program.mat_off,
            program.tgt_bits,
            program.tgt_off,
        )


def _apply_gate_raw(amps: np.ndarray, g: GateDef, num_qubits: int) -> None:
    mf = g.matrix.ravel()
    bits = [bit_position(num_qubits, t) for t in g.targets]
    if g.arity == 1:
        _kernels._apply_1q(amps, mf, 0, bits[0])
    elif g.arity == 2:
        _kernels._apply_2q(amps, mf, 0, bits[0], bits[1])
    elif g.arity == 3:
        _kernels._apply_3q(amps, mf, 0, bits[0], bits[1], bits[2])
    else:
        _kernels._apply_kq(amps, mf, 0, np.array(bits, dtype=np.int64))


def apply_gate(sv: StateVector, g: GateDef) -> StateVector:
    """Apply one gate; equals the explicit Kronecker-product application."""
    if any(t >= sv.num_qubits for t in g.targets):
        raise DomainError(
            f"gate {g.name!r} targets wire(s) {g.targets} outside a {sv.num_qubits}-qubit state"
        )
    amps = np.array(sv.amplitudes)
    _apply_gate_raw(amps, g, sv.num_qubits)
    return StateVector(sv.num_qubits, amps)


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------

def _sample_basis_index(amps: np.ndarray, rng: np.random.Generator) -> int:
    probs = np.abs(amps) ** 2
    cum = np.cumsum(probs)
    u = rng.random() * cum[-1]
    idx = int(np.searchsorted(cum, u, side="right"))
    return min(idx, amps.shape[0] - 1)


def _project_measurement(amps: np.ndarray, num_qubits: int, qubits, outcome_bits) -> None:
    """Zero amplitudes inconsistent with the observed bits, then renormalize in place."""
    idx = np.arange(amps.shape[0])
    keep = np.ones(amps.shape[0], dtype=bool)
    for q, bit in zip(qubits, outcome_bits):
        keep &= ((idx >> bit_position(num_qubits, q)) & 1) == bit
    amps[~keep] = 0.0
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise SimulationError("measurement projected onto a zero-probability outcome")
    amps /= norm


def measure_all(sv: StateVector, rng=None) -> tuple[str, int, StateVector]:
    """Sample the full register; returns (bitstring, index, collapsed basis state)."""
    rng = as_rng(rng)
    idx = _sample_basis_index(np.asarray(sv.amplitudes), rng)
    bits = index_to_bitstring(idx, sv.num_qubits)
    collapsed = np.zeros(sv.dim, dtype=np.complex128)
    collapsed[idx] = 1.0
    return bits, idx, StateVector(sv.num_qubits, collapsed)


# ---------------------------------------------------------------------------
# full run
# ---------------------------------------------------------------------------

def compile_circuit(circuit: Circuit):
    """Split the element list into kernel-ready gate segments and interleaved events."""
    if circuit.num_qubits > MAX_QUBITS:
        raise SimulationError(f"state-vector engine is capped at {MAX_QUBITS} qubits")
    segments: list[tuple] = []
    pending: list[GateDef] = []
    for e in circuit.elements:
        if isinstance(e, GateOp):
            pending.append(e.gate)
            continue
        if pending:
            segments.append(("gates", compile_gates(pending, circuit.num_qubits)))
            pending = []
        if isinstance(e, NoiseOp):
            segments.append(("noise", e.channel))
        elif isinstance(e, MeasureOp):
            segments.append(("measure", e))
        elif isinstance(e, ClassicalControlOp):
            segments.append(("ccontrol", e))
    if pending:
        segments.append(("gates", compile_gates(pending, circuit.num_qubits)))
    return segments


def run_compiled(circuit: Circuit, segments, rng: np.random.Generator) -> RunOutcome:
    n = circuit.num_qubits
    amps = np.array(circuit.initial_state.amplitudes)
    creg = ClassicalRegister()
    for label in circuit.declared_clbits:
        creg.declare(label)
    measured = False
    for kind, payload in segments:
        if kind == "gates":
            apply_program(amps, payload)
        elif kind == "noise":
            sv = sample_kraus(StateVector(n, amps), payload, rng)
            amps = np.array(sv.amplitudes)
        elif kind == "measure":
            measured = True
            if not payload.qubits:
                continue
            idx = _sample_basis_index(amps, rng)
            outcome = [(idx >> bit_position(n, q)) & 1 for q in payload.qubits]
            _project_measurement(amps, n, payload.qubits, outcome)
            for label, bit in zip(payload.clbits, outcome):
                if label not in creg.bits:
                    creg.declare(label)
                creg.write(label, bit)
        elif kind == "ccontrol":
            value = creg.read(payload.clbit)
            if value is None:
                raise SimulationError(
                    f"classical bit {payload.clbit!r} is unset at its control point"
                )
            if value == payload.value:
                _apply_gate_raw(amps, payload.gate, n)
    bits = creg.bitstring() if measured else None
    index = bitstring_to_index(bits) if bits else None
    return RunOutcome(StateVector(n, amps), creg, bits, index)


def run(circuit: Circuit, rng=None) -> RunOutcome:
    """Execute every element in program order on a private state-vector copy."""
    return run_compiled(circuit, compile_circuit(circuit), as_rng(rng))


# ---------------------------------------------------------------------------
# expectation values
# ---------------------------------------------------------------------------

def expectation(sv: StateVector, observable) -> float:
    """<psi| H |psi> for H given as a sequence of (weight, pauli_string) terms."""
    n = sv.num_qubits
    base = np.asarray(sv.amplitudes)
    total = 0.0 + 0.0j
    for weight, pauli in observable:
        w = float(weight)
        if not np.isfinite(w):
            raise DomainError("observable weights must be finite reals")
        if len(pauli) != n:
            raise DomainError(
                f"Pauli string {pauli!r} has length {len(pauli)}, state has {n} qubits"
            )
        amps = np.array(base)
        for q, ch in enumerate(pauli):
            if ch == "I":
                continue
            if ch not in _PAULI:
                raise DomainError(f"malformed Pauli string {pauli!r}: bad character {ch!r}")
            mf = _PAULI[ch].ravel()
            _kernels._apply_1q(amps, mf, 0, bit_position(n, q))
        total += w * np.vdot(base, amps)
    if abs(total.imag) > 1e-10:
        raise SimulationError(f"expectation has imaginary residue {total.imag:.3e}")
    return float(total.real)
