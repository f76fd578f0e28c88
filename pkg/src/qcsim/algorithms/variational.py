"""Variational pair: VQE and QAOA, with parameter-shift gradients.

Objectives are evaluated on exact statevectors (no sampling noise), so the
classical loops are deterministic given a seed. The default optimizer is
coordinate parameter-shift gradient descent; Nelder-Mead is the fallback for
objectives whose parameters drive more than one gate (QAOA's shared angles).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from ..circuit import Circuit, GateOp
from ..engine import expectation, run
from ..errors import DomainError
from ..gates import single_qubit_gate, two_qubit_gate

SHIFT_ELIGIBLE_GATES = frozenset({"RX", "RY", "RZ", "RXX", "RYY", "RZZ"})


@dataclass(frozen=True)
class PauliHamiltonian:
    """Weighted Pauli strings, all of one length."""

    terms: tuple[tuple[float, str], ...]

    def __post_init__(self):
        terms = tuple((float(w), str(s)) for w, s in self.terms)
        if not terms:
            raise DomainError("a Hamiltonian needs at least one term")
        length = len(terms[0][1])
        for w, s in terms:
            if not np.isfinite(w):
                raise DomainError("Hamiltonian weights must be finite")
            if len(s) != length or any(ch not in "IXYZ" for ch in s):
                raise DomainError(f"bad Pauli string {s!r}")
        object.__setattr__(self, "terms", terms)

    @property
    def num_qubits(self) -> int:
        return len(self.terms[0][1])


@dataclass(frozen=True)
class Ansatz:
    """Parameterized circuit family: `builder(params) -> Circuit` of fixed width."""

    num_params: int
    builder: Callable[[np.ndarray], Circuit]

    def build(self, params) -> Circuit:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.num_params,):
            raise DomainError(f"expected {self.num_params} parameters, got shape {params.shape}")
        return self.builder(params)


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "parameter-shift-gd"  # or "nelder-mead"
    max_iters: int = 200
    step_size: float = 0.1
    simplex_scale: float = 0.5
    tol: float = 1e-6

    def __post_init__(self):
        if self.method not in ("parameter-shift-gd", "nelder-mead"):
            raise DomainError(f"unknown optimizer method {self.method!r}")
        if self.max_iters < 1 or self.step_size <= 0 or self.tol <= 0:
            raise DomainError("optimizer iterations, step size and tolerance must be positive")


def energy_of(ansatz: Ansatz, params, hamiltonian: PauliHamiltonian) -> float:
    sv = run(ansatz.build(params), rng=0).statevector
    return expectation(sv, hamiltonian.terms)


def _changed_gate_indices(ansatz: Ansatz, params: np.ndarray, k: int) -> list[int]:
    base = ansatz.build(params).elements
    bumped_params = np.array(params)
    bumped_params[k] += 0.1234375  # arbitrary probe offset
    bumped = ansatz.build(bumped_params).elements
    if len(base) != len(bumped):
        raise DomainError(f"parameter {k} changes the circuit structure, not just gate angles")
    changed = []
    for i, (e0, e1) in enumerate(zip(base, bumped)):
        if not (isinstance(e0, GateOp) and isinstance(e1, GateOp)):
            continue
        if not np.array_equal(e0.gate.matrix, e1.gate.matrix):
            changed.append(i)
    return changed


def parameter_shift_gradient(ansatz: Ansatz, params, hamiltonian: PauliHamiltonian,
                             k: int) -> float:
    """Exact gradient [E(theta_k + pi/2) - E(theta_k - pi/2)] / 2.

    Valid only when parameter k drives exactly one gate of the form
    exp(-i theta G / 2) with G^2 = I (RX/RY/RZ/RXX/RYY/RZZ); validated by
    rebuilding the circuit with the parameter perturbed.
    """
    params = np.asarray(params, dtype=float)
    if not 0 <= k < ansatz.num_params:
        raise DomainError(f"parameter index {k} out of range")
    changed = _changed_gate_indices(ansatz, params, k)
    if len(changed) != 1:
        raise DomainError(
            f"parameter {k} drives {len(changed)} gates; the shift rule needs exactly one"
        )
    elements = ansatz.build(params).elements
    name = elements[changed[0]].gate.name
    if name not in SHIFT_ELIGIBLE_GATES:
        raise DomainError(f"gate {name!r} at parameter {k} is not shift-eligible")
    plus = np.array(params)
    minus = np.array(params)
    plus[k] += np.pi / 2
    minus[k] -= np.pi / 2
    return (energy_of(ansatz, plus, hamiltonian) - energy_of(ansatz, minus, hamiltonian)) / 2.0


def _full_gradient(ansatz: Ansatz, params, hamiltonian: PauliHamiltonian) -> np.ndarray:
    return np.array(
        [parameter_shift_gradient(ansatz, params, hamiltonian, k) for k in range(ansatz.num_params)]
    )


@dataclass
class VqeResult:
    energy: float
    params: np.ndarray
    trace: list[float] = field(default_factory=list)
    converged: bool = True


def _minimize(objective, x0: np.ndarray, config: OptimizerConfig,
              gradient=None) -> tuple[np.ndarray, list[float], bool]:
    trace: list[float] = []
    if config.method == "parameter-shift-gd":
        params = np.array(x0, dtype=float)
        value = objective(params)
        trace.append(value)
        converged = False
        for _ in range(config.max_iters):
            params = params - config.step_size * gradient(params)
            new_value = objective(params)
            trace.append(new_value)
            if abs(new_value - value) < config.tol:
                converged = True
                break
            value = new_value
        return params, trace, converged

    def traced(x):
        v = objective(x)
        trace.append(v)
        return v

    simplex = np.vstack([x0, x0 + config.simplex_scale * np.eye(x0.shape[0])])
    res = minimize(
        traced,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": config.max_iters,
            "fatol": config.tol,
            "xatol": 1e-6,
            "initial_simplex": simplex,
        },
    )
    return np.asarray(res.x, dtype=float), trace, bool(res.success)


def vqe(hamiltonian: PauliHamiltonian, ansatz: Ansatz, optimizer: OptimizerConfig | None = None,
        initial_params=None, seed: int = 0) -> VqeResult:
    """Minimize <H> over the ansatz parameters; returns best energy, argmin and trace."""
    config = optimizer or OptimizerConfig()
    if initial_params is None:
        rng = np.random.default_rng(seed)
        initial_params = rng.uniform(0.0, 2.0 * np.pi, ansatz.num_params)
    x0 = np.asarray(initial_params, dtype=float)

    objective = lambda p: energy_of(ansatz, p, hamiltonian)
    gradient = lambda p: _full_gradient(ansatz, p, hamiltonian)
    params, trace, converged = _minimize(objective, x0, config, gradient)
    best = int(np.argmin(trace))
    return VqeResult(energy=float(trace[best]), params=params, trace=trace, converged=converged)


# ---------------------------------------------------------------------------
# QAOA for MaxCut
# ---------------------------------------------------------------------------

def _normalize_edges(graph) -> list[tuple[int, int, float]]:
    edges = []
    for edge in graph:
        if len(edge) == 2:
            u, v = edge
            w = 1.0
        else:
            u, v, w = edge
        if u == v:
            raise DomainError(f"self-loop ({u},{v}) is not a cut edge")
        edges.append((int(u), int(v), float(w)))
    if not edges:
        raise DomainError("the graph needs at least one edge")
    return edges


def maxcut_hamiltonian(graph, num_nodes: int | None = None) -> PauliHamiltonian:
    """Cut-value observable: sum_(u,v) w/2 (1 - Z_u Z_v), the constant carried on an I term."""
    edges = _normalize_edges(graph)
    n = num_nodes or 1 + max(max(u, v) for u, v, _ in edges)
    terms = [(sum(w for _, _, w in edges) / 2.0, "I" * n)]
    for u, v, w in edges:
        s = ["I"] * n
        s[u] = "Z"
        s[v] = "Z"
        terms.append((-w / 2.0, "".join(s)))
    return PauliHamiltonian(tuple(terms))


def qaoa_circuit(graph, p: int, gammas, betas, num_nodes: int | None = None) -> Circuit:
    """p alternating layers: RZZ(-gamma w) per edge, then RX(2 beta) per qubit."""
    edges = _normalize_edges(graph)
    n = num_nodes or 1 + max(max(u, v) for u, v, _ in edges)
    if len(gammas) != p or len(betas) != p:
        raise DomainError("need one gamma and one beta per layer")
    c = Circuit(n)
    for q in range(n):
        c.append(single_qubit_gate("H", (), q))
    for layer in range(p):
        for u, v, w in edges:
            c.append(two_qubit_gate("RZZ", (-float(gammas[layer]) * w,), u, v))
        for q in range(n):
            c.append(single_qubit_gate("RX", (2.0 * float(betas[layer]),), q))
    return c


@dataclass
class QaoaResult:
    expected_cut: float
    params: np.ndarray
    best_bitstring: str
    best_cut: float
    trace: list[float] = field(default_factory=list)
    converged: bool = True


def cut_value(bits: str, graph) -> float:
    edges = _normalize_edges(graph)
    return sum(w for u, v, w in edges if bits[u] != bits[v])


def qaoa(graph, p: int, optimizer: OptimizerConfig | None = None, seed: int = 0,
         restarts: int = 5, shots: int = 4096, num_nodes: int | None = None) -> QaoaResult:
    """Maximize the expected MaxCut value over (gamma, beta); report the sampled mode.

    Layer angles are shared across edges/qubits, so the shift rule does not
    apply; optimization runs Nelder-Mead from `restarts` seeded starts.
    """
    from ..backend import run_shots
    from ..circuit import measure_all_element

    edges = _normalize_edges(graph)
    n = num_nodes or 1 + max(max(u, v) for u, v, _ in edges)
    ham = maxcut_hamiltonian(edges, n)
    config = optimizer or OptimizerConfig(method="nelder-mead", max_iters=400)

    def expected_cut(params) -> float:
        c = qaoa_circuit(edges, p, params[:p], params[p:], n)
        sv = run(c, rng=0).statevector
        return expectation(sv, ham.terms)

    rng = np.random.default_rng(seed)
    best_params = None
    best_value = -np.inf
    best_trace: list[float] = []
    converged = True
    for _ in range(max(1, restarts)):
        x0 = np.concatenate([rng.uniform(0, np.pi, p), rng.uniform(0, np.pi / 2, p)])
        params, trace, ok = _minimize(lambda x: -expected_cut(x), x0, config)
        value = expected_cut(params)
        if value > best_value:
            best_value, best_params, best_trace, converged = value, params, trace, ok

    final = qaoa_circuit(edges, p, best_params[:p], best_params[p:], n)
    final.append(measure_all_element(n))
    result = run_shots(final, shots=shots, seed=seed)
    mode = max(result.counts, key=result.counts.get)
    return QaoaResult(
        expected_cut=float(best_value),
        params=best_params,
        best_bitstring=mode,
        best_cut=cut_value(mode, edges),
        trace=[-v for v in best_trace],
        converged=converged,
    )
