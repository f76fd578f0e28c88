import numpy as np
import pytest

from qcsim import gates
from qcsim.errors import GateError

import reference


def _all_library_gates(rng):
    """Yield (name, GateDef) for every library gate with random parameters."""
    for name in gates.SINGLE_QUBIT_GATES:
        count, _ = gates.param_spec(name)
        yield name, gates.single_qubit_gate(name, rng.uniform(-np.pi, np.pi, count), 0)
    for name in gates.TWO_QUBIT_GATES:
        count, _ = gates.param_spec(name)
        params = rng.uniform(-np.pi, np.pi, count)
        if name == "SWAPalpha":
            params = rng.uniform(0.0, 2.0, count)
        yield name, gates.two_qubit_gate(name, params, 0, 1)
    for name in gates.THREE_QUBIT_GATES:
        yield name, gates.three_qubit_gate(name, 0, 1, 2)
    for name in gates.CONTROLLED_GATES:
        count, _ = gates.param_spec(name)
        yield name, gates.control_gate(name, rng.uniform(-np.pi, np.pi, count), (0,), 1)


def test_unitarity_random_parameter_sweep(rng):
    for _ in range(25):
        for name, g in _all_library_gates(rng):
            dim = g.matrix.shape[0]
            dev = np.max(np.abs(g.matrix @ g.matrix.conj().T - np.eye(dim)))
            assert dev < 1e-12, f"{name}: max |UU+-I| = {dev}"


def test_pauli_x_matrix():
    assert np.array_equal(gates.single_qubit_gate("X", (), 0).matrix, [[0, 1], [1, 0]])


def test_rx_pi():
    g = gates.single_qubit_gate("RX", (np.pi,), 0)
    assert np.allclose(g.matrix, [[0, -1j], [-1j, 0]], atol=1e-12)


def test_xsqrt_squares_to_x():
    m = gates.single_qubit_gate("Xsqrt", (), 0).matrix
    assert np.allclose(m, 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]), atol=1e-15)
    assert np.allclose(m @ m, reference.X, atol=1e-12)


def test_swap_permutes_01_to_10():
    m = gates.two_qubit_gate("SWAP", (), 0, 1).matrix
    assert np.allclose(m @ [0, 1, 0, 0], [0, 0, 1, 0], atol=1e-15)


def test_rxx_pi_on_00():
    m = gates.two_qubit_gate("RXX", (np.pi,), 0, 1).matrix
    assert np.allclose(m @ [1, 0, 0, 0], [0, 0, 0, -1j], atol=1e-12)


def test_givens_half_pi_rotates_01_to_10():
    m = gates.two_qubit_gate("Givens", (np.pi / 2,), 0, 1).matrix
    assert np.allclose(m @ [0, 1, 0, 0], [0, 0, 1, 0], atol=1e-12)
    assert np.allclose(m @ [0, 0, 1, 0], [0, -1, 0, 0], atol=1e-12)


def test_toffoli_flips_on_both_controls():
    m = gates.three_qubit_gate("Toffoli", 0, 1, 2).matrix
    v = np.zeros(8)
    v[0b110] = 1
    out = np.zeros(8)
    out[0b111] = 1
    assert np.allclose(m @ v, out, atol=1e-15)


def test_fredkin_swaps_when_control_set():
    m = gates.three_qubit_gate("Fredkin", 0, 1, 2).matrix
    v = np.zeros(8)
    v[0b101] = 1
    out = np.zeros(8)
    out[0b110] = 1
    assert np.allclose(m @ v, out, atol=1e-15)


def test_margolus_phase_structure():
    mg = gates.three_qubit_gate("Margolus", 0, 1, 2).matrix
    tof = gates.three_qubit_gate("Toffoli", 0, 1, 2).matrix
    for idx in range(8):
        v = np.zeros(8)
        v[idx] = 1
        expected = tof @ v if idx != 0b101 else -v
        assert np.allclose(mg @ v, expected, atol=1e-15), f"basis state {idx:03b}"
    assert np.allclose(mg @ mg, tof @ tof, atol=1e-12)


def test_cx_control_is_first_wire():
    m = gates.control_gate("CX", (), (0,), 1).matrix
    v = np.zeros(4)
    v[0b10] = 1
    out = np.zeros(4)
    out[0b11] = 1
    assert np.allclose(m @ v, out, atol=1e-15)


def test_cp_pi_equals_cz():
    cp = gates.control_gate("CP", (np.pi,), (0,), 1).matrix
    cz = gates.control_gate("CZ", (), (0,), 1).matrix
    assert np.max(np.abs(cp - cz)) < 1e-12


def test_cu_with_hadamard_block():
    h = gates.single_qubit_gate("H", (), 1)
    cu = gates.controlled_unitary(h, (0,))
    v = np.zeros(4)
    v[0b10] = 1
    out = cu.matrix @ v
    assert np.allclose(out, [0, 0, 1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-12)


def test_controlled_embedding_restricted_to_control_one_subspace(rng):
    u = reference.random_unitary(2, rng)
    base = gates.arbitrary_gate(u, (1,), name="V")
    cu = gates.controlled_unitary(base, (0,))
    assert np.allclose(cu.matrix[2:, 2:], u, atol=1e-15)
    assert np.allclose(cu.matrix[:2, :2], np.eye(2), atol=1e-15)
    assert np.max(np.abs(cu.matrix[:2, 2:])) == 0.0


def test_arbitrary_gate_identity_accepted():
    g = gates.arbitrary_gate(np.eye(2), (0,))
    assert np.array_equal(g.matrix, np.eye(2))


def test_arbitrary_gate_rejects_non_unitary():
    with pytest.raises(GateError, match="not unitary"):
        gates.arbitrary_gate([[1, 1], [1, 1]], (0,))


def test_arbitrary_gate_rejects_wrong_shape():
    with pytest.raises(GateError):
        gates.arbitrary_gate(np.eye(3), (0,))
    with pytest.raises(GateError):
        gates.arbitrary_gate(np.eye(4), (0,))


def test_arbitrary_qft4_matches_circuit():
    from qcsim.algorithms import qft

    g = gates.arbitrary_gate(reference.dft_matrix(2), (0, 1), name="QFT4")
    assert np.max(np.abs(g.matrix - qft(2).to_gate().matrix)) < 1e-10


def test_adjoint_of_hadamard_is_itself():
    h = gates.single_qubit_gate("H", (), 0)
    assert np.allclose(gates.gate_adjoint(h).matrix, h.matrix, atol=1e-15)


def test_adjoint_of_s():
    s_dag = gates.gate_adjoint(gates.single_qubit_gate("S", (), 0))
    assert s_dag.name == "S_dag"
    assert np.allclose(s_dag.matrix, [[1, 0], [0, -1j]], atol=1e-15)


def test_adjoint_of_rx_is_negative_angle():
    theta = 0.731
    left = gates.gate_adjoint(gates.single_qubit_gate("RX", (theta,), 0)).matrix
    right = gates.single_qubit_gate("RX", (-theta,), 0).matrix
    assert np.max(np.abs(left - right)) < 1e-12


def test_involutions():
    mats = [
        gates.single_qubit_gate("X", (), 0).matrix,
        gates.single_qubit_gate("Y", (), 0).matrix,
        gates.single_qubit_gate("Z", (), 0).matrix,
        gates.single_qubit_gate("H", (), 0).matrix,
        gates.two_qubit_gate("SWAP", (), 0, 1).matrix,
        gates.control_gate("CX", (), (0,), 1).matrix,
        gates.three_qubit_gate("Toffoli", 0, 1, 2).matrix,
        gates.three_qubit_gate("Fredkin", 0, 1, 2).matrix,
    ]
    for m in mats:
        assert np.max(np.abs(m @ m - np.eye(m.shape[0]))) < 1e-12


def test_composition_identities():
    s = gates.single_qubit_gate("S", (), 0).matrix
    t = gates.single_qubit_gate("T", (), 0).matrix
    xs = gates.single_qubit_gate("Xsqrt", (), 0).matrix
    swap = gates.two_qubit_gate("SWAP", (), 0, 1).matrix
    ssqrt = gates.two_qubit_gate("SWAPsqrt", (), 0, 1).matrix
    assert np.max(np.abs(s @ s - reference.Z)) < 1e-12
    assert np.max(np.abs(t @ t - s)) < 1e-12
    assert np.max(np.abs(xs @ xs - reference.X)) < 1e-12
    assert np.max(np.abs(ssqrt @ ssqrt - swap)) < 1e-12
    assert np.max(np.abs(gates.two_qubit_gate("SWAPalpha", (1.0,), 0, 1).matrix - swap)) < 1e-12
    assert np.max(np.abs(gates.two_qubit_gate("SWAPalpha", (0.5,), 0, 1).matrix - ssqrt)) < 1e-12


def test_rz_additivity_up_to_global_phase(rng):
    for _ in range(20):
        a, b = rng.uniform(-2 * np.pi, 2 * np.pi, 2)
        left = gates.single_qubit_gate("RZ", (a,), 0).matrix @ gates.single_qubit_gate("RZ", (b,), 0).matrix
        right = gates.single_qubit_gate("RZ", (a + b,), 0).matrix
        assert abs(abs(np.trace(left.conj().T @ right)) - 2.0) < 1e-10


def test_canonical_zero_is_identity():
    m = gates.two_qubit_gate("Canonical", (0.0, 0.0, 0.0), 0, 1).matrix
    assert np.max(np.abs(m - np.eye(4))) < 1e-12


def test_matrix_cache_shares_storage():
    a = gates.single_qubit_gate("H", (), 0)
    b = gates.single_qubit_gate("H", (), 3)
    assert a.matrix is b.matrix


def test_unknown_names_and_bad_params_rejected():
    with pytest.raises(GateError):
        gates.single_qubit_gate("Q", (), 0)
    with pytest.raises(GateError):
        gates.single_qubit_gate("RX", (), 0)  # missing angle
    with pytest.raises(GateError):
        gates.two_qubit_gate("SWAP", (), 1, 1)  # duplicate wires
    with pytest.raises(GateError):
        gates.three_qubit_gate("Toffoli", 0, 0, 2)
    with pytest.raises(GateError):
        gates.control_gate("CX", (), (1,), 1)


def test_ccx_alias_keeps_name_and_matrix():
    g = gates.ccx(0, 1, 2)
    assert g.name == "CCX"
    assert np.array_equal(g.matrix, gates.three_qubit_gate("Toffoli", 0, 1, 2).matrix)
