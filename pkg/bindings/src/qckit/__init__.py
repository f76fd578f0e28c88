"""qckit: pipe-style surface over the qcsim simulator.

    from qckit import Circuit, H, CX, Simulator, MeasureQubit

    qc = Circuit(2)
    qc | H(0) | CX(0, 1) | MeasureQubit([0, 1])
    result = Simulator().simulate(qc, 1000, 1, seed=7)
    counts, probability = result.count()
"""

from qcsim.qstate import sv_to_probability

from .circuit import (
    Circuit,
    CircuitVisualizer,
    MultiQubit,
    Qubit,
    Result,
    Simulator,
    create_state,
    plot_histogram,
)
from .gatelib import (
    CCX,
    CNOT,
    CP,
    CS,
    CSWAP,
    CSX,
    CU,
    CX,
    CZ,
    GlobalPhase,
    H,
    I,
    ISWAP,
    If_cbit,
    Magic,
    MeasureQubit,
    P,
    RX,
    RXX,
    RXY,
    RY,
    RYY,
    RZ,
    RZZ,
    Rot,
    S,
    SWAP,
    SWAPalpha,
    SWAPsqrt,
    T,
    U,
    X,
    Xsqrt,
    Y,
    Z,
    ArbitraryGate,
    Barenco,
    Berkeley,
    BitFlipNoise,
    Canonical,
    DepolarizingNoise,
    Fredkin,
    Givens,
    Margolus,
    PhaseFlipNoise,
    Toffoli,
)

__version__ = "0.1.0"
