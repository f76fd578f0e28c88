"""Oracle-based algorithms: Deutsch-Jozsa, Bernstein-Vazirani, Grover search.

Builders return purely unitary circuits (no measurement elements) so they can
be inspected, converted to gates, or fed to either run path; the `run_*`/
decision helpers add measurement where an outcome is wanted.
"""

from __future__ import annotations

import math

import numpy as np

from ..circuit import Circuit
from ..engine import run
from ..errors import DomainError
from ..gates import arbitrary_gate, control_gate, single_qubit_gate
from ..qstate import bit_position


def deutsch_jozsa(n: int, is_constant: bool) -> Circuit:
    """n input qubits plus one ancilla on wire n.

    The constant oracle flips the ancilla globally (f = 1); the balanced oracle
    computes f(x) = x . s with the fixed mask s = 10...0. Measuring the input
    register afterwards yields all zeros iff the oracle is constant.
    """
    if n < 1:
        raise DomainError("deutsch_jozsa needs at least one input qubit")
    c = Circuit(n + 1)
    c.append(single_qubit_gate("X", (), n))
    for q in range(n + 1):
        c.append(single_qubit_gate("H", (), q))
    if is_constant:
        c.append(single_qubit_gate("X", (), n))
    else:
        c.append(control_gate("CX", (), (0,), n))
    for q in range(n):
        c.append(single_qubit_gate("H", (), q))
    return c


def dj_decide(n: int, is_constant: bool, rng=None) -> dict:
    """Run DJ and classify the oracle from the input-register readout."""
    from ..circuit import measure_qubits

    c = deutsch_jozsa(n, is_constant)
    c.append(measure_qubits(range(n)))
    outcome = run(c, rng)
    bits = "".join(str(outcome.classical.bits[f"m{q}"]) for q in range(n))
    return {
        "algorithm": "dj",
        "num_qubits": n,
        "oracle": "constant" if is_constant else "balanced",
        "outcome": bits,
        "decision": "constant" if bits == "0" * n else "balanced",
    }


def bernstein_vazirani(secret: str) -> Circuit:
    """Recover a secret bitstring with one oracle query.

    Input wires 0..n-1, ancilla on wire n prepared in |-> via H then Z;
    the oracle is a CX fan-in from every wire whose secret bit is 1.
    """
    if not secret or any(ch not in "01" for ch in secret):
        raise DomainError(f"secret must be a non-empty bitstring, got {secret!r}")
    n = len(secret)
    c = Circuit(n + 1)
    for q in range(n + 1):
        c.append(single_qubit_gate("H", (), q))
    c.append(single_qubit_gate("Z", (), n))
    for q, ch in enumerate(secret):
        if ch == "1":
            c.append(control_gate("CX", (), (q,), n))
    for q in range(n):
        c.append(single_qubit_gate("H", (), q))
    return c


def bv_recover(secret: str) -> tuple[str, float]:
    """(recovered bitstring, its exact probability) from the final statevector."""
    c = bernstein_vazirani(secret)
    sv = run(c, rng=0).statevector
    n = len(secret)
    probs = sv.probabilities()
    idx = np.arange(probs.shape[0])
    marginal = np.zeros(1 << n)
    key = np.zeros(probs.shape[0], dtype=np.int64)
    for q in range(n):
        key |= ((idx >> bit_position(n + 1, q)) & 1) << (n - 1 - q)
    np.add.at(marginal, key, probs)
    best = int(np.argmax(marginal))
    return format(best, f"0{n}b"), float(marginal[best])


def _phase_flip_matrix(n: int, index: int) -> np.ndarray:
    diag = np.ones(1 << n, dtype=np.complex128)
    diag[index] = -1.0
    return np.diag(diag)


def grover(n: int, marked_index: int, iterations: int) -> Circuit:
    """Uniform superposition, then `iterations` rounds of oracle + diffusion."""
    if not 0 <= marked_index < (1 << n):
        raise DomainError(f"marked index {marked_index} out of range for {n} qubits")
    if iterations < 0:
        raise DomainError("iterations must be >= 0")
    wires = tuple(range(n))
    c = Circuit(n)
    for q in wires:
        c.append(single_qubit_gate("H", (), q))
    oracle = arbitrary_gate(_phase_flip_matrix(n, marked_index), wires, name="Oracle")
    zero_flip = arbitrary_gate(_phase_flip_matrix(n, 0), wires, name="Flip0")
    for _ in range(iterations):
        c.append(oracle)
        for q in wires:
            c.append(single_qubit_gate("H", (), q))
        c.append(zero_flip)
        for q in wires:
            c.append(single_qubit_gate("H", (), q))
    return c


def grover_success_probability(n: int, iterations: int) -> float:
    """Analytic success probability sin^2((2k+1) asin(2^(-n/2)))."""
    theta = math.asin(2 ** (-n / 2))
    return math.sin((2 * iterations + 1) * theta) ** 2


def run_grover(n: int, marked_index: int, iterations: int) -> dict:
    sv = run(grover(n, marked_index, iterations), rng=0).statevector
    prob = float(np.abs(sv.amplitudes[marked_index]) ** 2)
    return {
        "algorithm": "grover",
        "num_qubits": n,
        "marked": marked_index,
        "iterations": iterations,
        "success_prob": prob,
        "analytic_prob": grover_success_probability(n, iterations),
    }
