"""Circuit, qubit and simulator wrappers mirroring the core one-to-one.

Every call delegates to qcsim; nothing is cached binding-side except the last
run's outcome, which is itself a core object. Errors propagate unchanged.
"""

from __future__ import annotations

import math

from qcsim import backend as _backend
from qcsim import engine as _engine
from qcsim import qstate as _qstate
from qcsim.circuit import Circuit as _CoreCircuit
from qcsim.viz import render_text as _render_text


class Qubit:
    """A named single qubit holding its own state (default |0>)."""

    def __init__(self, name: str = "q", state=None):
        self.name = name
        self.state = state if state is not None else _qstate.basis_state(1)

    def __repr__(self):
        return f"Qubit({self.name!r})"


class MultiQubit:
    """A register of named qubits; exposes the combined state vector."""

    def __init__(self, num_of_qubits: int):
        self.qubits = [Qubit(f"q{i}") for i in range(num_of_qubits)]

    @property
    def num_of_qubits(self) -> int:
        return len(self.qubits)

    @property
    def statevector(self):
        return _qstate.tensor_combine([q.state for q in self.qubits])


def create_state(qubit: int, alpha: float) -> Qubit:
    """Qubit prepared in alpha|0> + sqrt(1-alpha^2)|1> for the given wire."""
    return Qubit(f"q{qubit}", _qstate.create_state(qubit, alpha))


class Circuit:
    """Pipe-composable circuit: ``qc | H(0) | CX(0, 1)``.

    All metadata (width, size, depth, gatesinfo, ...) reads through to the
    core circuit; `statevector` is the initial state until `run` replaces it
    with the evolved one.
    """

    def __init__(self, num_of_qubits: int, num_of_clbits: int = 0, list_of_qubits=None):
        states = None
        if list_of_qubits is not None:
            states = [q.state if isinstance(q, Qubit) else q for q in list_of_qubits]
        self._core = _CoreCircuit(num_of_qubits, num_clbits=num_of_clbits,
                                  initial_states=states)
        self._outcome = None

    # -- composition -------------------------------------------------------

    def add_gate(self, element) -> "Circuit":
        self._core.append(element)
        return self

    def __or__(self, element) -> "Circuit":
        return self.add_gate(element)

    # -- metadata ------------------------------------------------------------

    @property
    def core(self) -> _CoreCircuit:
        return self._core

    @property
    def num_of_qubits(self) -> int:
        return self._core.num_qubits

    @property
    def num_of_clbits(self) -> int:
        return self._core.num_clbits

    @property
    def width(self) -> int:
        return self._core.width

    @property
    def size(self) -> int:
        return self._core.size

    @property
    def depth(self) -> int:
        return self._core.depth

    @property
    def gatesinfo(self) -> dict:
        return self._core.gatesinfo()

    @property
    def initial_state(self):
        return self._core.initial_state

    @property
    def statevector(self):
        return self._outcome.statevector if self._outcome else self._core.initial_state

    @property
    def density_matrix(self):
        return _qstate.sv_to_density(self.statevector)

    @property
    def classical_bits(self) -> dict:
        return dict(self._outcome.classical.bits) if self._outcome else {}

    def to_gate(self, name: str = "circuit"):
        return self._core.to_gate(name)

    def qubit_state(self, qubit: int):
        """State of one qubit; defined only when it is unentangled."""
        return _qstate.single_qubit_state(self.statevector, qubit)

    # -- execution -------------------------------------------------------------

    def run(self, seed=None):
        """Execute all elements; returns (and stores) the final state vector."""
        self._outcome = _engine.run(self._core, rng=seed)
        return self.statevector

    def measure_all(self, seed=None) -> str:
        """Sample the full register once, collapse, and return the bitstring."""
        bits, _index, collapsed = _engine.measure_all(self.statevector, rng=seed)
        outcome = self._outcome
        self._outcome = _engine.RunOutcome(
            collapsed,
            outcome.classical if outcome else _qstate.ClassicalRegister(),
            bits,
            _qstate.bitstring_to_index(bits),
        )
        return bits

    def measure(self, seed=None):
        """(bitstring, basis index, probability map) of one full measurement."""
        probabilities = _qstate.sv_to_probability(self.statevector)
        bits = self.measure_all(seed=seed)
        return bits, _qstate.bitstring_to_index(bits), probabilities

    def __repr__(self):
        return repr(self._core)


class CircuitVisualizer:
    """Text diagram of a circuit; colors follow the gate categories."""

    def __init__(self, circuit: Circuit):
        self._circuit = circuit

    def visualize(self, color: bool = False) -> str:
        text = _render_text(self._circuit.core, color=color).text()
        print(text)
        return text


class Result:
    """Shot results: per-shot records plus counts and probabilities."""

    def __init__(self, core_result):
        self._core = core_result

    @property
    def counts(self) -> dict:
        return self._core.counts

    @property
    def probability(self) -> dict:
        return self._core.probability

    @property
    def per_shot(self) -> list:
        return self._core.per_shot

    @property
    def final_density(self):
        return self._core.final_density

    def count(self):
        return self._core.counts, self._core.probability


class Simulator:
    """Shot-based runner; results are a pure function of (circuit, shots, seed)."""

    def __init__(self, mode: str = "trajectory", workers: int = 1):
        self.mode = mode
        self.workers = workers

    def simulate(self, qc: Circuit, shots: int = 1024, batches: int = 1, seed: int = 0) -> Result:
        """Run `shots` executions split into `batches` parallelizable chunks."""
        chunk = max(1, math.ceil(shots / max(1, batches)))
        core = _backend.run_shots(
            qc.core, shots=shots, chunk_size=min(chunk, shots), seed=seed,
            mode=self.mode, workers=self.workers,
        )
        return Result(core)


def plot_histogram(mapping, path=None) -> list[str]:
    """Render counts or probabilities as text bars; optionally write to a file."""
    total = float(sum(mapping.values())) or 1.0
    lines = []
    for key in sorted(mapping):
        share = mapping[key] / total
        bar = "#" * round(share * 40)
        label = key if key else "(empty)"
        lines.append(f"{label:>12} {mapping[key]:>10} |{bar}")
    text = "\n".join(lines)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return lines
