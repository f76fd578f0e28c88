"""Single-qubit teleportation with classically controlled corrections."""

from __future__ import annotations

import numpy as np

from ..circuit import Circuit, if_cbit, measure_qubits
from ..engine import run
from ..gates import control_gate, single_qubit_gate
from ..qstate import basis_state, create_state, single_qubit_state


def teleportation(alpha: float) -> Circuit:
    """Teleport alpha|0> + sqrt(1-alpha^2)|1> from wire 0 to wire 2.

    Wires 1 and 2 share a Bell pair; Alice measures (0, 1) into bits (a, b)
    and Bob applies Z if a=1 then X if b=1.
    """
    c = Circuit(3, initial_states=[create_state(0, alpha), basis_state(1), basis_state(1)])
    c.append(single_qubit_gate("H", (), 1))
    c.append(control_gate("CX", (), (1,), 2))
    c.append(control_gate("CX", (), (0,), 1))
    c.append(single_qubit_gate("H", (), 0))
    c.append(measure_qubits([0, 1], ["a", "b"]))
    c.append(if_cbit("a", 1, single_qubit_gate("Z", (), 2)))
    c.append(if_cbit("b", 1, single_qubit_gate("X", (), 2)))
    return c


def run_teleportation(alpha: float, rng=None) -> dict:
    """One teleportation run; reports the branch taken and Bob's state fidelity."""
    outcome = run(teleportation(alpha), rng)
    bob = single_qubit_state(outcome.statevector, 2)
    target = create_state(2, alpha)
    fidelity = float(abs(np.vdot(target.amplitudes, bob.amplitudes)) ** 2)
    return {
        "algorithm": "teleport",
        "alpha": float(alpha),
        "branch": {
            "a": outcome.classical.bits["a"],
            "b": outcome.classical.bits["b"],
        },
        "bob_amplitudes": [complex(x) for x in bob.amplitudes],
        "fidelity": fidelity,
    }
