import numpy as np
import pytest

from qcsim import Circuit, engine, gates, noise, qstate
from qcsim.circuit import if_cbit, measure_qubits
from qcsim.errors import DomainError, SimulationError

import reference


def h(q):
    return gates.single_qubit_gate("H", (), q)


def x(q):
    return gates.single_qubit_gate("X", (), q)


def cx(c, t):
    return gates.control_gate("CX", (), (c,), t)


def test_apply_h_on_zero():
    out = engine.apply_gate(qstate.basis_state(1), h(0))
    assert np.allclose(out.amplitudes, np.array([1, 1]) / np.sqrt(2), atol=1e-12)


def test_apply_cx_makes_bell():
    sv = qstate.StateVector(2, np.array([1, 0, 1, 0]) / np.sqrt(2))
    out = engine.apply_gate(sv, cx(0, 1))
    assert np.allclose(out.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-12)


def test_apply_x_on_wire_one_bit_ordering():
    out = engine.apply_gate(qstate.basis_state(2, 0), x(1))
    assert np.array_equal(out.amplitudes, qstate.basis_state(2, 1).amplitudes)


def test_apply_gate_out_of_range():
    with pytest.raises(DomainError):
        engine.apply_gate(qstate.basis_state(2), x(2))


def test_oracle_equivalence_random_circuits(rng):
    # Module-scale replica (acceptance runs 200): run() vs explicit embedding.
    for _ in range(40):
        n = int(rng.integers(1, 6))
        c = Circuit(n)
        for _ in range(int(rng.integers(1, 31))):
            c.append(reference.random_library_gate(n, rng))
        out = engine.run(c, rng=0).statevector
        expected = reference.circuit_unitary(c) @ c.initial_state.amplitudes
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-10


def test_norm_preserved_after_each_element(rng):
    n = 4
    c = Circuit(n)
    for _ in range(25):
        c.append(reference.random_library_gate(n, rng))
    amps = np.array(c.initial_state.amplitudes)
    for e in c.elements:
        engine._apply_gate_raw(amps, e.gate, n)
        assert abs(np.linalg.norm(amps) - 1.0) < 1e-10


def test_run_bell_statevector():
    c = Circuit(2).append(h(0)).append(cx(0, 1))
    out = engine.run(c)
    assert np.allclose(out.statevector.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-12)
    assert out.measured_bitstring is None


def test_run_measurement_collapse_and_register():
    c = Circuit(1)
    c.append(x(0))
    c.append(measure_qubits([0], ["a"]))
    c.append(if_cbit("a", 1, x(0)))
    out = engine.run(c, rng=0)
    assert out.classical.bits["a"] == 1
    assert np.allclose(out.statevector.amplitudes, [1, 0], atol=1e-12)
    assert out.measured_bitstring == "1"
    assert out.measured_index == 1


def test_run_if_cbit_no_op_branch():
    c = Circuit(1)
    c.append(measure_qubits([0], ["a"]))  # always reads 0
    c.append(if_cbit("a", 1, x(0)))
    out = engine.run(c, rng=0)
    assert out.classical.bits["a"] == 0
    assert np.allclose(out.statevector.amplitudes, [1, 0], atol=1e-12)


def test_run_unset_clbit_raises():
    c = Circuit(1, clbit_labels=["b"])
    c.append(if_cbit("b", 1, x(0)))
    with pytest.raises(SimulationError, match="unset"):
        engine.run(c, rng=0)


def test_partial_measurement_keeps_width_and_marginals():
    # Measure one wire of a Bell pair: remaining wire stays correlated.
    c = Circuit(2).append(h(0)).append(cx(0, 1))
    c.append(measure_qubits([0], ["a"]))
    for seed in range(8):
        out = engine.run(c, rng=seed)
        bit = out.classical.bits["a"]
        assert out.statevector.num_qubits == 2
        expected = qstate.basis_state(2, 0b11 if bit else 0b00)
        assert np.allclose(np.abs(out.statevector.amplitudes), expected.amplitudes, atol=1e-12)


def test_remeasuring_yields_identical_bits():
    c = Circuit(3)
    for q in range(3):
        c.append(h(q))
    c.append(measure_qubits([0, 1], ["a", "b"]))
    c.append(measure_qubits([0, 1], ["c", "d"]))
    for seed in range(10):
        out = engine.run(c, rng=seed)
        assert out.classical.bits["a"] == out.classical.bits["c"]
        assert out.classical.bits["b"] == out.classical.bits["d"]


def test_run_determinism_same_seed():
    c = Circuit(3)
    for q in range(3):
        c.append(h(q))
    c.append(noise.depolarizing(0.3, 1))
    c.append(measure_qubits([0, 1, 2]))
    a = engine.run(c, rng=np.random.default_rng(99))
    b = engine.run(c, rng=np.random.default_rng(99))
    assert a.measured_bitstring == b.measured_bitstring
    assert np.array_equal(a.statevector.amplitudes, b.statevector.amplitudes)


def test_measure_all_deterministic_state():
    bits, index, collapsed = engine.measure_all(qstate.basis_state(2, 3), rng=0)
    assert (bits, index) == ("11", 3)
    assert np.array_equal(collapsed.amplitudes, qstate.basis_state(2, 3).amplitudes)


def test_measure_all_bell_frequency():
    bell = qstate.StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    rng = np.random.default_rng(4)
    hits = sum(engine.measure_all(bell, rng)[0] == "00" for _ in range(10000))
    assert abs(hits / 10000 - 0.5) < 0.015


def test_measure_all_alpha_state_bias():
    sv = qstate.create_state(0, 0.7)
    rng = np.random.default_rng(8)
    ones = sum(engine.measure_all(sv, rng)[0] == "1" for _ in range(20000))
    assert abs(ones / 20000 - 0.51) < 0.011


def test_expectation_z_on_zero():
    assert engine.expectation(qstate.basis_state(1), [(1.0, "Z")]) == pytest.approx(1.0, abs=1e-12)


def test_expectation_bell_zz():
    bell = qstate.StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert engine.expectation(bell, [(1.0, "ZZ")]) == pytest.approx(1.0, abs=1e-12)


def test_expectation_plus_z_vanishes():
    plus = qstate.StateVector(1, np.array([1, 1]) / np.sqrt(2))
    assert abs(engine.expectation(plus, [(1.0, "Z")])) < 1e-12


def test_expectation_matches_dense_observable(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        sv = qstate.StateVector(n, v / np.linalg.norm(v))
        terms = []
        for _ in range(int(rng.integers(1, 4))):
            s = "".join(rng.choice(list("IXYZ")) for _ in range(n))
            terms.append((float(rng.normal()), s))
        dense = reference.observable_matrix(terms)
        expected = float(np.real(sv.amplitudes.conj() @ dense @ sv.amplitudes))
        assert engine.expectation(sv, terms) == pytest.approx(expected, abs=1e-10)


def test_expectation_malformed_string():
    with pytest.raises(DomainError):
        engine.expectation(qstate.basis_state(2), [(1.0, "ZQ")])
    with pytest.raises(DomainError):
        engine.expectation(qstate.basis_state(2), [(1.0, "Z")])


def test_global_phase_preserved():
    c = Circuit(1).append(gates.single_qubit_gate("GlobalPhase", (0.5,), 0))
    out = engine.run(c).statevector
    assert np.allclose(out.amplitudes, [np.exp(0.5j), 0], atol=1e-12)
