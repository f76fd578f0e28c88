import math

import numpy as np
import pytest

from qcsim import backend, engine, gates, qstate
from qcsim.algorithms import (
    bernstein_vazirani,
    bv_recover,
    dj_decide,
    grover,
    grover_success_probability,
    iqft,
    qft,
    qpe,
    run_qpe,
    run_teleportation,
    shor_order_finding,
    teleportation,
)
from qcsim.circuit import measure_qubits
from qcsim.errors import DomainError

import reference


# -- Deutsch-Jozsa ----------------------------------------------------------

def test_dj_constant_four_qubits():
    report = dj_decide(4, True, rng=0)
    assert report["outcome"] == "0000"
    assert report["decision"] == "constant"


def test_dj_balanced_four_qubits():
    report = dj_decide(4, False, rng=0)
    assert report["outcome"] != "0000"
    assert report["decision"] == "balanced"


def test_dj_single_qubit_balanced():
    assert dj_decide(1, False, rng=0)["outcome"] == "1"


def test_dj_zero_error_all_sizes():
    for n in range(1, 7):
        for is_constant in (True, False):
            for seed in range(3):  # measurement outcome is deterministic
                report = dj_decide(n, is_constant, rng=seed)
                assert (report["decision"] == "constant") == is_constant


# -- Bernstein-Vazirani -----------------------------------------------------

def test_bv_secret_10_counts():
    c = bernstein_vazirani("10")
    c.append(measure_qubits([0, 1]))
    result = backend.run_shots(c, shots=200, seed=1)
    assert result.counts == {"10": 200}


def test_bv_all_zero_secret():
    outcome, p = bv_recover("000")
    assert outcome == "000" and p == pytest.approx(1.0, abs=1e-12)


def test_bv_all_one_secret():
    outcome, p = bv_recover("1111")
    assert outcome == "1111" and p == pytest.approx(1.0, abs=1e-12)


def test_bv_recovers_every_secret_up_to_five(rng):
    for n in range(1, 6):
        for value in range(1 << n):
            secret = format(value, f"0{n}b")
            outcome, p = bv_recover(secret)
            assert outcome == secret
            assert p == pytest.approx(1.0, abs=1e-12)


def test_bv_rejects_bad_secret():
    with pytest.raises(DomainError):
        bernstein_vazirani("")
    with pytest.raises(DomainError):
        bernstein_vazirani("012")


# -- Grover -----------------------------------------------------------------

def test_grover_two_qubits_one_round_exact():
    sv = engine.run(grover(2, 3, 1), rng=0).statevector
    assert abs(abs(sv.amplitudes[3]) ** 2 - 1.0) < 1e-10


def test_grover_three_qubits_two_rounds():
    sv = engine.run(grover(3, 5, 2), rng=0).statevector
    prob = abs(sv.amplitudes[5]) ** 2
    # analytic oracle: sin^2(5 asin(1/sqrt 8)) = 121/128
    assert prob == pytest.approx(121 / 128, abs=1e-10)
    assert prob == pytest.approx(grover_success_probability(3, 2), abs=1e-10)


def test_grover_zero_rounds_uniform():
    sv = engine.run(grover(3, 2, 0), rng=0).statevector
    assert abs(abs(sv.amplitudes[2]) ** 2 - 1 / 8) < 1e-12


def test_grover_matches_analytic_sweep():
    for n in range(2, 6):
        for k in range(0, 5):
            marked = (1 << n) - 1
            sv = engine.run(grover(n, marked, k), rng=0).statevector
            prob = abs(sv.amplitudes[marked]) ** 2
            assert prob == pytest.approx(grover_success_probability(n, k), abs=1e-6)


# -- QFT / IQFT -------------------------------------------------------------

def test_qft_single_qubit_is_hadamard():
    g = qft(1).to_gate()
    assert np.max(np.abs(g.matrix - reference.H)) < 1e-12


def test_qft_three_qubits_is_dft8():
    g = qft(3).to_gate()
    assert np.max(np.abs(g.matrix - reference.dft_matrix(3))) < 1e-10


def test_qft_unitary_and_columns_up_to_six():
    for n in range(1, 7):
        mat = qft(n).to_gate().matrix
        assert np.max(np.abs(mat @ mat.conj().T - np.eye(1 << n))) < 1e-10
        assert np.max(np.abs(mat - reference.dft_matrix(n))) < 1e-10


def test_iqft_inverts_qft():
    for n in range(1, 5):
        product = iqft(n).to_gate().matrix @ qft(n).to_gate().matrix
        assert np.max(np.abs(product - np.eye(1 << n))) < 1e-10


# -- QPE ----------------------------------------------------------------------

def test_qpe_t_gate_dyadic_phase():
    u = gates.single_qubit_gate("T", (), 0)
    report = run_qpe(u, qstate.basis_state(1, 1), 3, rng=0)
    assert report["outcome"] == "001"
    assert report["probabilities"]["001"] == pytest.approx(1.0, abs=1e-10)


def test_qpe_z_gate_half_phase():
    u = gates.single_qubit_gate("Z", (), 0)
    report = run_qpe(u, qstate.basis_state(1, 1), 1, rng=0)
    assert report["outcome"] == "1"
    assert report["phase_estimate"] == 0.5


def test_qpe_identity_phase_zero():
    u = gates.single_qubit_gate("I", (), 0)
    report = run_qpe(u, qstate.basis_state(1, 0), 3, rng=0)
    assert report["outcome"] == "000"


def test_qpe_exact_for_all_dyadic_phases():
    for t in range(1, 6):
        for m in range(1 << t):
            u = gates.single_qubit_gate("P", (2 * math.pi * m / (1 << t),), 0)
            report = run_qpe(u, qstate.basis_state(1, 1), t, rng=0)
            expected = format(m, f"0{t}b")
            assert report["outcome"] == expected
            assert report["probabilities"][expected] == pytest.approx(1.0, abs=1e-9)


# -- Shor ---------------------------------------------------------------------

def test_shor_seven_fifteen():
    res = shor_order_finding(7, 15, seed=0, max_attempts=10)
    assert res.success
    assert res.order == 4
    assert res.factors == (3, 5)


def test_shor_two_fifteen():
    res = shor_order_finding(2, 15, seed=0, max_attempts=10)
    assert res.order == 4
    assert res.factors == (3, 5)


def test_shor_fourteen_retry_signal():
    res = shor_order_finding(14, 15, seed=0, max_attempts=10)
    assert res.order == 2  # 14 = -1 mod 15
    assert res.factors is None
    assert not res.success


def test_shor_gcd_shortcut():
    res = shor_order_finding(6, 15, seed=0)
    assert res.success and res.factors == (3, 5)
    assert res.attempts == 0


def test_shor_rejects_large_modulus():
    with pytest.raises(DomainError):
        shor_order_finding(2, 21)


def test_shor_orders_match_classical_oracle():
    # classical order: least r with a^r = 1 mod N
    for a in (2, 4, 7, 8, 11, 13):
        classical = next(r for r in range(1, 16) if pow(a, r, 15) == 1)
        res = shor_order_finding(a, 15, seed=3, max_attempts=10)
        if res.order is not None:
            assert res.order == classical


# -- Teleportation ------------------------------------------------------------

def test_teleportation_alpha_07_all_branches():
    seen = {}
    for seed in range(40):
        report = run_teleportation(0.7, rng=seed)
        seen[(report["branch"]["a"], report["branch"]["b"])] = report["fidelity"]
    assert len(seen) == 4
    assert all(f == pytest.approx(1.0, abs=1e-10) for f in seen.values())


def test_teleportation_alpha_one_gives_zero_ket():
    amps = run_teleportation(1.0, rng=0)["bob_amplitudes"]
    assert abs(abs(amps[0]) - 1.0) < 1e-10


def test_teleportation_alpha_zero_gives_one_ket():
    amps = run_teleportation(0.0, rng=0)["bob_amplitudes"]
    assert abs(abs(amps[1]) - 1.0) < 1e-10


def test_teleportation_program_matches_documented_order():
    c = teleportation(0.7)
    kinds = [type(e).__name__ for e in c.elements]
    assert kinds == ["GateOp", "GateOp", "GateOp", "GateOp", "MeasureOp",
                     "ClassicalControlOp", "ClassicalControlOp"]
    names = [e.gate.name for e in c.elements[:4]]
    assert names == ["H", "CX", "CX", "H"]
