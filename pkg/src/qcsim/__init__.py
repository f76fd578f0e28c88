"""qcsim: a gate-based quantum circuit simulator.

State-vector and density-matrix engines, Kraus noise channels, a standard
algorithm library, deterministic shot-based execution, text circuit rendering,
and a CLI with a JSON circuit file format.
"""

from .backend import ShotResult, SimJob, export_histogram, run_shots, simulate
from .circuit import (
    Circuit,
    ClassicalControlOp,
    GateOp,
    MeasureOp,
    NoiseOp,
    if_cbit,
    measure_all_element,
    measure_qubits,
)
from .engine import RunOutcome, apply_gate, expectation, measure_all, run
from .errors import (
    CircuitError,
    DomainError,
    GateError,
    ParseError,
    QcsimError,
    SimulationError,
)
from .gates import (
    GateDef,
    arbitrary_gate,
    ccx,
    control_gate,
    controlled_unitary,
    gate_adjoint,
    param_spec,
    single_qubit_gate,
    three_qubit_gate,
    two_qubit_gate,
)
from .noise import NoiseChannel, apply_channel_density, bit_flip, depolarizing, phase_flip, sample_kraus
from .qstate import (
    ClassicalRegister,
    DensityMatrix,
    StateVector,
    basis_state,
    bloch_state,
    create_state,
    index_to_bitstring,
    bitstring_to_index,
    reduced_density,
    single_qubit_state,
    sv_to_density,
    sv_to_probability,
    tensor_combine,
)
from .viz import RenderedCircuit, render_text

__version__ = "0.1.0"
