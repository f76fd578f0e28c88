"""Binding acceptance: surface calls are bit-identical to direct core calls."""

import numpy as np

from qcsim import backend as core_backend
from qcsim import engine as core_engine
from qcsim import gates as core_gates
from qcsim import bit_flip
from qcsim.circuit import Circuit as CoreCircuit
from qcsim.circuit import measure_qubits

from qckit import CCX, CX, BitFlipNoise, Circuit, H, MeasureQubit, Simulator, X


def test_metadata_equivalence():
    qc = Circuit(4)
    qc | X(0) | X(1)
    qc | CX(0, 2) | CX(1, 2)
    qc | CCX(0, 1, 3)

    core = CoreCircuit(4)
    core.append(core_gates.single_qubit_gate("X", (), 0))
    core.append(core_gates.single_qubit_gate("X", (), 1))
    core.append(core_gates.control_gate("CX", (), (0,), 2))
    core.append(core_gates.control_gate("CX", (), (1,), 2))
    core.append(core_gates.ccx(0, 1, 3))

    assert (qc.width, qc.size, qc.depth) == (core.width, core.size, core.depth) == (4, 5, 4)
    assert qc.gatesinfo == core.gatesinfo()
    print("[binding acceptance] metadata equivalence: PASS")


def test_run_equivalence():
    qc = Circuit(2)
    qc | H(0) | CX(0, 1)
    sv = qc.run(seed=0)

    core = CoreCircuit(2)
    core.append(core_gates.single_qubit_gate("H", (), 0))
    core.append(core_gates.control_gate("CX", (), (0,), 1))
    expected = core_engine.run(core, rng=0).statevector

    assert np.array_equal(sv.amplitudes, expected.amplitudes)
    assert qc.measure_all(seed=12) == core_engine.measure_all(expected, rng=12)[0]
    print("[binding acceptance] run/measure equivalence: PASS")


def test_simulate_equivalence():
    qc = Circuit(3)
    qc | H(0) | CX(0, 1) | H(2) | BitFlipNoise(0.1, 0) | MeasureQubit([0, 1])
    result = Simulator().simulate(qc, 1000, 1, seed=9)

    core = CoreCircuit(3)
    core.append(core_gates.single_qubit_gate("H", (), 0))
    core.append(core_gates.control_gate("CX", (), (0,), 1))
    core.append(core_gates.single_qubit_gate("H", (), 2))
    core.append(bit_flip(0.1, 0))
    core.append(measure_qubits([0, 1]))
    expected = core_backend.run_shots(core, shots=1000, chunk_size=1000, seed=9)

    assert result.per_shot == expected.per_shot
    assert result.counts == expected.counts
    assert result.probability == expected.probability
    print("[binding acceptance] shot-simulation equivalence: PASS")
