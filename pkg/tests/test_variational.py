import numpy as np
import pytest

from qcsim import Circuit, gates
from qcsim.algorithms import (
    Ansatz,
    OptimizerConfig,
    PauliHamiltonian,
    energy_of,
    maxcut_hamiltonian,
    parameter_shift_gradient,
    qaoa,
    qaoa_circuit,
    vqe,
)
from qcsim.algorithms.variational import cut_value
from qcsim.errors import DomainError

import reference

TRIANGLE = [(0, 1), (1, 2), (0, 2)]
FOUR_CYCLE = [(0, 1), (1, 2), (2, 3), (0, 3)]


def ry_ansatz(num_qubits):
    def build(params):
        c = Circuit(num_qubits)
        for q in range(num_qubits):
            c.append(gates.single_qubit_gate("RY", (params[q],), q))
        for q in range(num_qubits - 1):
            c.append(gates.control_gate("CX", (), (q,), q + 1))
        return c

    return Ansatz(num_qubits, build)


def random_eligible_ansatz(rng):
    """Random chain of shift-eligible gates, one parameter each."""
    n = int(rng.integers(1, 4))
    count = int(rng.integers(1, 5))
    plan = []
    for _ in range(count):
        name = str(rng.choice(["RX", "RY", "RZ", "RXX", "RYY", "RZZ"]))
        if name in ("RXX", "RYY", "RZZ") and n < 2:
            name = "RX"
        if name in ("RXX", "RYY", "RZZ"):
            wires = tuple(int(w) for w in rng.permutation(n)[:2])
        else:
            wires = (int(rng.integers(0, n)),)
        plan.append((name, wires))

    def build(params):
        c = Circuit(n)
        for (name, wires), theta in zip(plan, params):
            if len(wires) == 1:
                c.append(gates.single_qubit_gate(name, (theta,), wires[0]))
            else:
                c.append(gates.two_qubit_gate(name, (theta,), *wires))
        return c

    ham_terms = []
    for _ in range(int(rng.integers(1, 4))):
        s = "".join(rng.choice(list("IXYZ")) for _ in range(n))
        ham_terms.append((float(rng.normal()), s))
    return Ansatz(count, build), PauliHamiltonian(tuple(ham_terms))


# -- parameter-shift gradients ------------------------------------------------

def test_gradient_ry_at_zero():
    ham = PauliHamiltonian(((1.0, "Z"),))
    ansatz = Ansatz(1, lambda p: Circuit(1).append(gates.single_qubit_gate("RY", (p[0],), 0)))
    assert parameter_shift_gradient(ansatz, [0.0], ham, 0) == pytest.approx(0.0, abs=1e-10)


def test_gradient_ry_at_half_pi():
    ham = PauliHamiltonian(((1.0, "Z"),))
    ansatz = Ansatz(1, lambda p: Circuit(1).append(gates.single_qubit_gate("RY", (p[0],), 0)))
    assert parameter_shift_gradient(ansatz, [np.pi / 2], ham, 0) == pytest.approx(-1.0, abs=1e-10)


def test_gradient_matches_finite_differences(rng):
    for _ in range(50):
        ansatz, ham = random_eligible_ansatz(rng)
        params = rng.uniform(-np.pi, np.pi, ansatz.num_params)
        k = int(rng.integers(0, ansatz.num_params))
        shift = parameter_shift_gradient(ansatz, params, ham, k)
        h = 1e-5
        plus, minus = np.array(params), np.array(params)
        plus[k] += h
        minus[k] -= h
        fd = (energy_of(ansatz, plus, ham) - energy_of(ansatz, minus, ham)) / (2 * h)
        assert shift == pytest.approx(fd, abs=1e-6)


def test_gradient_rejects_ineligible_gate():
    ham = PauliHamiltonian(((1.0, "Z"),))
    ansatz = Ansatz(1, lambda p: Circuit(1).append(gates.single_qubit_gate("P", (p[0],), 0)))
    with pytest.raises(DomainError, match="not shift-eligible"):
        parameter_shift_gradient(ansatz, [0.3], ham, 0)


def test_gradient_rejects_shared_parameter():
    ham = PauliHamiltonian(((1.0, "Z"),))

    def build(p):
        c = Circuit(1)
        c.append(gates.single_qubit_gate("RY", (p[0],), 0))
        c.append(gates.single_qubit_gate("RY", (p[0],), 0))
        return c

    with pytest.raises(DomainError, match="drives 2 gates"):
        parameter_shift_gradient(Ansatz(1, build), [0.3], ham, 0)


# -- VQE -----------------------------------------------------------------------

def test_vqe_zz_reaches_ground_state():
    ham = PauliHamiltonian(((1.0, "ZZ"),))
    result = vqe(ham, ry_ansatz(2), seed=7)
    assert result.energy == pytest.approx(-1.0, abs=1e-2)
    # variational bound: ground eigenvalue of diag(1,-1,-1,1) is -1
    assert min(result.trace) >= -1.0 - 1e-9


def test_vqe_single_qubit_z():
    ham = PauliHamiltonian(((1.0, "Z"),))
    ansatz = Ansatz(1, lambda p: Circuit(1).append(gates.single_qubit_gate("RY", (p[0],), 0)))
    result = vqe(ham, ansatz, seed=7)
    assert result.energy == pytest.approx(-1.0, abs=1e-2)
    assert result.params[0] % (2 * np.pi) == pytest.approx(np.pi, abs=0.05)


def test_vqe_identity_hamiltonian_flat():
    ham = PauliHamiltonian(((1.0, "II"),))
    result = vqe(ham, ry_ansatz(2), seed=0)
    assert result.energy == pytest.approx(1.0, abs=1e-12)


def test_vqe_trace_monotone_under_gd():
    for ham in (PauliHamiltonian(((1.0, "ZZ"),)), PauliHamiltonian(((1.0, "Z"), (0.5, "X")))):
        n = ham.num_qubits
        result = vqe(ham, ry_ansatz(n), seed=7)
        diffs = np.diff(result.trace)
        assert np.all(diffs <= 1e-12)


def test_vqe_energy_never_below_true_ground(rng):
    for _ in range(5):
        terms = []
        for _ in range(3):
            s = "".join(rng.choice(list("IXYZ")) for _ in range(2))
            terms.append((float(rng.normal()), s))
        ham = PauliHamiltonian(tuple(terms))
        ground = float(np.min(np.linalg.eigvalsh(reference.observable_matrix(ham.terms))))
        result = vqe(ham, ry_ansatz(2), seed=int(rng.integers(0, 100)))
        assert result.energy >= ground - 1e-9


def test_vqe_nelder_mead_fallback():
    ham = PauliHamiltonian(((1.0, "ZZ"),))
    config = OptimizerConfig(method="nelder-mead", max_iters=400)
    result = vqe(ham, ry_ansatz(2), optimizer=config, seed=7)
    assert result.energy == pytest.approx(-1.0, abs=1e-2)


# -- QAOA ------------------------------------------------------------------------

def test_maxcut_hamiltonian_matches_brute_force():
    ham = maxcut_hamiltonian(TRIANGLE)
    dense = reference.observable_matrix(ham.terms)
    for i in range(8):
        bits = format(i, "03b")
        assert dense[i, i].real == pytest.approx(cut_value(bits, TRIANGLE), abs=1e-12)


def test_qaoa_circuit_structure():
    c = qaoa_circuit(TRIANGLE, 2, [0.3, 0.5], [0.2, 0.4])
    info = c.gatesinfo()
    assert info == {"H": 3, "RZZ": 6, "RX": 6}


def test_qaoa_triangle_brute_force_optimum():
    best, winners = reference.brute_force_maxcut(TRIANGLE, 3)
    assert best == 2.0
    assert winners == {"001", "010", "100", "011", "101", "110"}


def test_qaoa_triangle_p1_reaches_cut():
    result = qaoa(TRIANGLE, 1, seed=11)
    assert result.expected_cut >= 1.8
    assert cut_value(result.best_bitstring, TRIANGLE) == 2.0


def test_qaoa_single_edge_p1_is_exact():
    result = qaoa([(0, 1)], 1, seed=11)
    assert result.expected_cut == pytest.approx(1.0, abs=1e-3)


def test_qaoa_four_cycle_p2_mode_is_optimal():
    result = qaoa(FOUR_CYCLE, 2, seed=11)
    best, winners = reference.brute_force_maxcut(FOUR_CYCLE, 4)
    assert best == 4.0
    assert result.best_bitstring in winners


def test_qaoa_weighted_edges():
    result = qaoa([(0, 1, 2.0)], 1, seed=11)
    assert result.expected_cut == pytest.approx(2.0, abs=1e-2)


def test_qaoa_rejects_empty_graph():
    with pytest.raises(DomainError):
        qaoa([], 1)
