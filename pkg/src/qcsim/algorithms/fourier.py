"""Fourier-family protocols: QFT, inverse QFT, quantum phase estimation."""

from __future__ import annotations

import math

import numpy as np

from ..circuit import Circuit, measure_qubits
from ..engine import run
from ..errors import DomainError
from ..gates import GateDef, control_gate, controlled_unitary, single_qubit_gate, two_qubit_gate
from ..qstate import StateVector, basis_state, bit_position


def qft(n: int) -> Circuit:
    """H + controlled-phase ladder + swap reversal; equals the DFT matrix on n wires."""
    if n < 1:
        raise DomainError("qft needs at least one qubit")
    c = Circuit(n)
    for q in range(n):
        c.append(single_qubit_gate("H", (), q))
        for j in range(q + 1, n):
            c.append(control_gate("CP", (math.pi / (1 << (j - q)),), (j,), q))
    for q in range(n // 2):
        c.append(two_qubit_gate("SWAP", (), q, n - 1 - q))
    return c


def iqft(n: int) -> Circuit:
    """Element-wise adjoint of qft(n) in reverse order."""
    c = Circuit(n)
    c.elements = qft(n).adjoint_elements()
    return c


def qpe(u: GateDef, eigenstate: StateVector, t: int) -> Circuit:
    """Phase estimation with t counting qubits (wires 0..t-1) over `u`'s register.

    Counting qubit j controls U^(2^(t-1-j)), so the readout bitstring is the
    binary fraction of the eigenphase with its most significant bit on wire 0.
    """
    if t < 1:
        raise DomainError("qpe needs at least one counting qubit")
    m = eigenstate.num_qubits
    if any(q >= m for q in u.targets):
        raise DomainError(
            f"gate {u.name!r} targets wire(s) {u.targets} outside the {m}-qubit eigenstate register"
        )
    c = Circuit(t + m, initial_states=[basis_state(t, 0), eigenstate])
    for j in range(t):
        c.append(single_qubit_gate("H", (), j))
    for j in range(t):
        power = 1 << (t - 1 - j)
        mat = np.linalg.matrix_power(u.matrix, power)
        shifted = GateDef(f"{u.name}^{power}", u.params, mat, tuple(t + q for q in u.targets))
        c.append(controlled_unitary(shifted, (j,), name=f"C{u.name}^{power}"))
    for e in iqft(t).elements:
        c.append(e)
    return c


def run_qpe(u: GateDef, eigenstate: StateVector, t: int, rng=None) -> dict:
    """Measure the counting register once and report its distribution."""
    c = qpe(u, eigenstate, t)
    sv = run(c, rng=0).statevector

    probs = sv.probabilities()
    idx = np.arange(probs.shape[0])
    marginal = np.zeros(1 << t)
    key = np.zeros(probs.shape[0], dtype=np.int64)
    n = sv.num_qubits
    for j in range(t):
        key |= ((idx >> bit_position(n, j)) & 1) << (t - 1 - j)
    np.add.at(marginal, key, probs)

    c.append(measure_qubits(range(t)))
    outcome = run(c, rng)
    bits = "".join(str(outcome.classical.bits[f"m{q}"]) for q in range(t))
    return {
        "algorithm": "qpe",
        "counting_qubits": t,
        "outcome": bits,
        "phase_estimate": int(bits, 2) / (1 << t),
        "probabilities": {
            format(i, f"0{t}b"): float(p) for i, p in enumerate(marginal) if p > 1e-12
        },
    }
