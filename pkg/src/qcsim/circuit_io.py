"""Circuit file format: one JSON document per file, version-tagged.

Schema (version 1):

    {
      "version": 1,
      "qubits": 3,
      "clbits": 0,                      # declared classical bits (optional)
      "clbit_labels": ["a", "b"],       # named declarations (optional)
      "initial_amplitudes": [[re, im], ...]   # optional, defaults to |0...0>
      "ops": [
        {"name": "H",  "wires": [0]},
        {"name": "RX", "wires": [1], "params": [0.5]},
        {"name": "CX", "wires": [0, 1]},
        {"name": "bitflip", "wires": [0], "p": 0.1},
        {"name": "measure", "wires": [0, 1], "clbits": ["a", "b"]},
        {"name": "Z", "wires": [2], "condition": ["a", 1]},
        {"name": "unitary", "wires": [0], "matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}
      ]
    }

Gate names are the canonical library identifiers (case-insensitive on input);
`cnot` is accepted for CX and `ccx`/`cswap` for Toffoli/Fredkin. Parse failures
raise ParseError naming the op index and field.
"""

from __future__ import annotations

import json

import numpy as np

from . import gates
from .circuit import Circuit, ClassicalControlOp, GateOp, MeasureOp, NoiseOp, if_cbit, measure_qubits
from .errors import CircuitError, DomainError, GateError, ParseError
from .noise import CHANNEL_BUILDERS
from .qstate import StateVector

FORMAT_VERSION = 1

_CANONICAL = {}
for _name in gates.SINGLE_QUBIT_GATES + gates.TWO_QUBIT_GATES + gates.THREE_QUBIT_GATES + gates.CONTROLLED_GATES:
    _CANONICAL[_name.lower()] = _name
_ALIASES = {"cnot": "CX", "ccx": "CCX", "cswap": "Fredkin"}


def _complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_to_json(mat: np.ndarray) -> list:
    return [[_complex_to_pair(z) for z in row] for row in np.asarray(mat)]


def _matrix_from_json(rows, where: str) -> np.ndarray:
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}.matrix: expected rows of [re, im] pairs ({exc})") from None


def _build_gate(name: str, op: dict, where: str) -> gates.GateDef:
    wires = op.get("wires")
    if not isinstance(wires, list) or not all(isinstance(w, int) for w in wires):
        raise ParseError(f"{where}.wires: expected a list of wire indices")
    params = op.get("params", [])
    if not isinstance(params, list):
        raise ParseError(f"{where}.params: expected a list of numbers")

    lname = name.lower()
    canonical = _ALIASES.get(lname, _CANONICAL.get(lname))
    try:
        if lname in ("unitary", "u"):
            if "matrix" not in op:
                raise ParseError(f"{where}: op 'unitary' requires a matrix field")
            mat = _matrix_from_json(op["matrix"], where)
            return gates.arbitrary_gate(mat, wires, name=op.get("label", "U"))
        if canonical is None:
            raise ParseError(f"{where}.name: unknown operation {name!r}")
        if canonical == "CCX":
            if len(wires) != 3:
                raise ParseError(f"{where}.wires: CCX needs 3 wires, got {len(wires)}")
            return gates.ccx(*wires)
        if canonical in gates.CONTROLLED_GATES:
            if len(wires) < 2:
                raise ParseError(f"{where}.wires: {canonical} needs a control and a target")
            return gates.control_gate(canonical, params, tuple(wires[:-1]), wires[-1])
        if canonical in gates.SINGLE_QUBIT_GATES:
            if len(wires) != 1:
                raise ParseError(f"{where}.wires: {canonical} takes exactly 1 wire")
            return gates.single_qubit_gate(canonical, params, wires[0])
        if canonical in gates.TWO_QUBIT_GATES:
            if len(wires) != 2:
                raise ParseError(f"{where}.wires: {canonical} takes exactly 2 wires")
            return gates.two_qubit_gate(canonical, params, wires[0], wires[1])
        if canonical in gates.THREE_QUBIT_GATES:
            if len(wires) != 3:
                raise ParseError(f"{where}.wires: {canonical} takes exactly 3 wires")
            return gates.three_qubit_gate(canonical, *wires)
    except GateError as exc:
        raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}.name: unknown operation {name!r}")


def circuit_from_dict(doc: dict) -> Circuit:
    if not isinstance(doc, dict):
        raise ParseError("circuit file must hold a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ParseError(f"version: expected {FORMAT_VERSION}, got {version!r}")
    qubits = doc.get("qubits")
    if not isinstance(qubits, int) or qubits < 1:
        raise ParseError(f"qubits: expected a positive integer, got {qubits!r}")
    clbits = doc.get("clbits", 0)
    labels = doc.get("clbit_labels")
    try:
        circuit = Circuit(qubits, num_clbits=clbits, clbit_labels=labels)
        if "initial_amplitudes" in doc:
            amps = np.array(
                [complex(re, im) for re, im in doc["initial_amplitudes"]], dtype=np.complex128
            )
            circuit.initial_state = StateVector(qubits, amps)
    except (CircuitError, DomainError, TypeError, ValueError) as exc:
        raise ParseError(f"header: {exc}") from None

    ops = doc.get("ops", [])
    if not isinstance(ops, list):
        raise ParseError("ops: expected a list")
    for i, op in enumerate(ops):
        where = f"ops[{i}]"
        if not isinstance(op, dict) or "name" not in op:
            raise ParseError(f"{where}: expected an object with a name field")
        name = str(op["name"])
        lname = name.lower()
        try:
            if lname == "measure":
                wires = op.get("wires", [])
                element = measure_qubits(wires, op.get("clbits"))
            elif lname in CHANNEL_BUILDERS:
                if "p" not in op:
                    raise ParseError(f"{where}.p: noise op {name!r} requires a probability")
                wires = op.get("wires")
                if not isinstance(wires, list) or not wires:
                    raise ParseError(f"{where}.wires: expected a non-empty list")
                element = CHANNEL_BUILDERS[lname](float(op["p"]), wires)
            else:
                gate = _build_gate(name, op, where)
                if "condition" in op:
                    cond = op["condition"]
                    if not isinstance(cond, list) or len(cond) != 2:
                        raise ParseError(f"{where}.condition: expected [label, value]")
                    element = if_cbit(str(cond[0]), int(cond[1]), gate)
                else:
                    element = gate
            circuit.append(element)
        except ParseError:
            raise
        except (CircuitError, DomainError, GateError) as exc:
            raise ParseError(f"{where}: {exc}") from None
    return circuit


def circuit_to_dict(circuit: Circuit) -> dict:
    doc: dict = {"version": FORMAT_VERSION, "qubits": circuit.num_qubits}
    declared = circuit.declared_clbits
    if declared:
        doc["clbits"] = len(declared)
        doc["clbit_labels"] = declared
    default = np.zeros(circuit.initial_state.dim, dtype=np.complex128)
    default[0] = 1.0
    if not np.array_equal(np.asarray(circuit.initial_state.amplitudes), default):
        doc["initial_amplitudes"] = [
            _complex_to_pair(z) for z in circuit.initial_state.amplitudes
        ]
    ops = []
    for e in circuit.elements:
        if isinstance(e, GateOp):
            ops.append(_gate_to_dict(e.gate))
        elif isinstance(e, NoiseOp):
            ops.append({"name": e.channel.name, "wires": list(e.channel.targets), "p": e.channel.p})
        elif isinstance(e, MeasureOp):
            ops.append({"name": "measure", "wires": list(e.qubits), "clbits": list(e.clbits)})
        elif isinstance(e, ClassicalControlOp):
            entry = _gate_to_dict(e.gate)
            entry["condition"] = [e.clbit, e.value]
            ops.append(entry)
    doc["ops"] = ops
    return doc


def _gate_to_dict(gate: gates.GateDef) -> dict:
    entry: dict = {"name": gate.name, "wires": list(gate.targets)}
    if gate.params:
        entry["params"] = list(gate.params)
    lname = gate.name.lower()
    compact = lname in _CANONICAL or lname in _ALIASES
    if not compact:
        entry["name"] = "unitary"
        entry["label"] = gate.name
        entry["matrix"] = _matrix_to_json(gate.matrix)
        entry.pop("params", None)
    return entry


def load_circuit(path: str) -> Circuit:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return circuit_from_dict(doc)


def save_circuit(circuit: Circuit, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(circuit_to_dict(circuit), fh, indent=2)
        fh.write("\n")
