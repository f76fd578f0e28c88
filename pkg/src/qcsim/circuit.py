"""Circuit construction and introspection.

A circuit is an ordered list of elements (gates, noise channels, measurements,
classically controlled gates) over a fixed number of qubit wires plus labelled
classical bits. Completed circuits are treated as immutable programs: `append`
extends the single owned element list and never rewrites earlier entries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import CircuitError
from .gates import GateDef
from .noise import NoiseChannel
from .qstate import StateVector, basis_state, tensor_combine

MAX_TO_GATE_QUBITS = 12


@dataclass(frozen=True)
class GateOp:
    gate: GateDef


@dataclass(frozen=True)
class NoiseOp:
    channel: NoiseChannel


@dataclass(frozen=True)
class MeasureOp:
    qubits: tuple[int, ...]
    clbits: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError("measurement qubits must be distinct")
        if len(self.clbits) != len(self.qubits):
            raise CircuitError("measurement needs one classical label per qubit")
        if len(set(self.clbits)) != len(self.clbits):
            raise CircuitError("measurement classical labels must be distinct")


@dataclass(frozen=True)
class ClassicalControlOp:
    clbit: str
    value: int
    gate: GateDef

    def __post_init__(self):
        if self.value not in (0, 1):
            raise CircuitError(f"classical control value must be 0 or 1, got {self.value}")


Element = GateOp | NoiseOp | MeasureOp | ClassicalControlOp


def measure_qubits(qubits, clbit_labels=None) -> MeasureOp:
    """Measurement element; labels default to "m{qubit_index}" when omitted."""
    qubits = tuple(int(q) for q in qubits)
    if clbit_labels is None:
        clbit_labels = tuple(f"m{q}" for q in qubits)
    return MeasureOp(qubits, tuple(clbit_labels))


def measure_all_element(num_qubits: int) -> MeasureOp:
    """Measurement of every wire in index order."""
    return measure_qubits(range(num_qubits))


def if_cbit(label: str, value: int, gate: GateDef) -> ClassicalControlOp:
    """Gate applied at run time iff the named classical bit equals `value`."""
    return ClassicalControlOp(str(label), int(value), gate)


class Circuit:
    """Ordered element list over `num_qubits` wires and labelled classical bits.

    `initial_states`, when given, is a list of StateVector pieces combined in
    wire order (their qubit counts must sum to `num_qubits`). `num_clbits`
    declares anonymous classical bits "c0".."c{m-1}"; `clbit_labels` declares
    named ones. Measurements may write into declared bits or introduce new
    labels of their own.
    """

    def __init__(self, num_qubits: int, num_clbits: int = 0, initial_states=None,
                 clbit_labels=None):
        if num_qubits < 1:
            raise CircuitError("a circuit needs at least one qubit")
        if num_clbits < 0:
            raise CircuitError("num_clbits must be non-negative")
        self.num_qubits = int(num_qubits)
        if clbit_labels is not None:
            clbit_labels = [str(x) for x in clbit_labels]
            if num_clbits and num_clbits != len(clbit_labels):
                raise CircuitError("num_clbits disagrees with the declared label list")
            self._declared_clbits = clbit_labels
        else:
            self._declared_clbits = [f"c{i}" for i in range(num_clbits)]
        if len(set(self._declared_clbits)) != len(self._declared_clbits):
            raise CircuitError("declared classical labels must be unique")

        if initial_states is None:
            self.initial_state = basis_state(num_qubits, 0)
        else:
            pieces = list(initial_states)
            total = sum(s.num_qubits for s in pieces)
            if total != num_qubits:
                raise CircuitError(
                    f"initial states cover {total} qubit(s) but the circuit has {num_qubits}"
                )
            self.initial_state = tensor_combine(pieces)
        self.elements: list[Element] = []

    # -- construction -------------------------------------------------------

    def _check_wires(self, wires, what: str) -> None:
        for w in wires:
            if not 0 <= w < self.num_qubits:
                raise CircuitError(
                    f"{what} wire {w} out of range for a {self.num_qubits}-qubit circuit"
                )

    def _known_clbits(self) -> list[str]:
        labels = list(self._declared_clbits)
        for e in self.elements:
            if isinstance(e, MeasureOp):
                labels.extend(l for l in e.clbits if l not in labels)
        return labels

    def append(self, element) -> "Circuit":
        """Append one element (or a GateDef, wrapped automatically) in program order."""
        if isinstance(element, GateDef):
            element = GateOp(element)
        if isinstance(element, NoiseChannel):
            element = NoiseOp(element)
        if isinstance(element, GateOp):
            self._check_wires(element.gate.targets, f"gate {element.gate.name!r}")
        elif isinstance(element, NoiseOp):
            self._check_wires(element.channel.targets, f"channel {element.channel.name!r}")
        elif isinstance(element, MeasureOp):
            self._check_wires(element.qubits, "measured")
            taken = set()
            for e in self.elements:
                if isinstance(e, MeasureOp):
                    taken.update(e.clbits)
            dup = taken.intersection(element.clbits)
            if dup:
                raise CircuitError(f"classical label(s) {sorted(dup)} already written by an earlier measurement")
        elif isinstance(element, ClassicalControlOp):
            self._check_wires(element.gate.targets, f"gate {element.gate.name!r}")
            if element.clbit not in self._known_clbits():
                raise CircuitError(
                    f"unknown clbit label {element.clbit!r}: declare it or measure into it first"
                )
        else:
            raise CircuitError(f"cannot append object of type {type(element).__name__} to a circuit")
        self.elements.append(element)
        return self

    def extend(self, elements) -> "Circuit":
        for e in elements:
            self.append(e)
        return self

    # -- metadata ------------------------------------------------------------

    @property
    def num_clbits(self) -> int:
        return len(self._known_clbits())

    @property
    def clbit_labels(self) -> list[str]:
        return self._known_clbits()

    @property
    def declared_clbits(self) -> list[str]:
        return list(self._declared_clbits)

    @property
    def width(self) -> int:
        return self.num_qubits

    @property
    def size(self) -> int:
        """Number of gate elements; noise, measurement and classical control excluded."""
        return sum(isinstance(e, GateOp) for e in self.elements)

    def gatesinfo(self) -> dict[str, int]:
        return dict(Counter(e.gate.name for e in self.elements if isinstance(e, GateOp)))

    @property
    def depth(self) -> int:
        """Greedy layering depth over gate elements only."""
        last_layer = [0] * self.num_qubits  # 1-based; 0 = wire untouched
        deepest = 0
        for e in self.elements:
            if not isinstance(e, GateOp):
                continue
            layer = 1 + max(last_layer[w] for w in e.gate.targets)
            for w in e.gate.targets:
                last_layer[w] = layer
            deepest = max(deepest, layer)
        return deepest

    def measured_clbits(self) -> list[str]:
        """Labels written by measurements, in program order."""
        labels: list[str] = []
        for e in self.elements:
            if isinstance(e, MeasureOp):
                labels.extend(e.clbits)
        return labels

    # -- composition ---------------------------------------------------------

    def to_gate(self, name: str = "circuit") -> GateDef:
        """Collapse a purely unitary circuit to a single gate on wires 0..n-1."""
        if self.num_qubits > MAX_TO_GATE_QUBITS:
            raise CircuitError(
                f"to_gate supports at most {MAX_TO_GATE_QUBITS} qubits, circuit has {self.num_qubits}"
            )
        for i, e in enumerate(self.elements):
            if not isinstance(e, GateOp):
                kind = type(e).__name__
                raise CircuitError(
                    f"to_gate requires a purely unitary circuit; element {i} is a {kind}"
                )
        dim = 1 << self.num_qubits
        mat = np.eye(dim, dtype=np.complex128)
        for e in self.elements:
            _apply_gate_to_columns(mat, e.gate.matrix, e.gate.targets, self.num_qubits)
        return GateDef(name, (), mat, tuple(range(self.num_qubits)))

    def adjoint_elements(self) -> list[GateOp]:
        """Gate elements adjointed and reversed; defined for unitary circuits only."""
        from .gates import gate_adjoint

        out = []
        for i, e in enumerate(self.elements):
            if not isinstance(e, GateOp):
                raise CircuitError(f"adjoint requires a purely unitary circuit; element {i} is not a gate")
            out.append(GateOp(gate_adjoint(e.gate)))
        out.reverse()
        return out

    def copy(self) -> "Circuit":
        dup = Circuit(self.num_qubits, clbit_labels=self._declared_clbits)
        dup.initial_state = self.initial_state
        dup.elements = list(self.elements)
        return dup

    def __repr__(self):
        return (
            f"Circuit(num_qubits={self.num_qubits}, num_clbits={self.num_clbits}, "
            f"size={self.size}, depth={self.depth})"
        )


def _apply_gate_to_columns(mat: np.ndarray, gate_mat: np.ndarray, targets, n: int) -> None:
    """Left-multiply `mat` in place by the gate embedded on `targets` of an n-wire register."""
    k = len(targets)
    bits = [n - 1 - t for t in targets]
    mask = 0
    for b in bits:
        mask |= 1 << b
    idx = np.arange(1 << n)
    bases = idx[(idx & mask) == 0]
    offsets = []
    for j in range(1 << k):
        off = 0
        for i, b in enumerate(bits):
            if (j >> (k - 1 - i)) & 1:
                off |= 1 << b
        offsets.append(off)
    rows = [bases + off for off in offsets]
    stacked = np.stack([mat[r, :] for r in rows])
    new = np.einsum("ab,bgm->agm", gate_mat, stacked)
    for j, r in enumerate(rows):
        mat[r, :] = new[j]


def initial_state_of(circuit: Circuit) -> StateVector:
    return circuit.initial_state
