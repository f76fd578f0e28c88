"""Algorithm library: oracle deciders, Fourier protocols, order finding, variational solvers."""

from .oracle_based import (
    bernstein_vazirani,
    bv_recover,
    deutsch_jozsa,
    dj_decide,
    grover,
    grover_success_probability,
    run_grover,
)
from .fourier import iqft, qft, qpe, run_qpe
from .shor import ShorResult, shor_order_finding
from .teleport import run_teleportation, teleportation
from .variational import (
    Ansatz,
    OptimizerConfig,
    PauliHamiltonian,
    QaoaResult,
    VqeResult,
    energy_of,
    maxcut_hamiltonian,
    parameter_shift_gradient,
    qaoa,
    qaoa_circuit,
    vqe,
)

__all__ = [
    "Ansatz",
    "OptimizerConfig",
    "PauliHamiltonian",
    "QaoaResult",
    "ShorResult",
    "VqeResult",
    "bernstein_vazirani",
    "bv_recover",
    "deutsch_jozsa",
    "dj_decide",
    "energy_of",
    "grover",
    "grover_success_probability",
    "iqft",
    "maxcut_hamiltonian",
    "parameter_shift_gradient",
    "qaoa",
    "qaoa_circuit",
    "qft",
    "qpe",
    "run_grover",
    "run_qpe",
    "run_teleportation",
    "shor_order_finding",
    "teleportation",
    "vqe",
]
