"""Gate, noise and measurement constructors under their short call-style names.

Parametric gates take their parameters first, then wires: ``RX(theta, 0)``,
``CP(phi, control, target)``. Wires default to 0..arity-1 when omitted, so
``RXX(pi)`` builds on wires (0, 1). Everything returned is a plain core
object; no simulation logic lives here.
"""

from __future__ import annotations

from qcsim import gates as _g
from qcsim.circuit import if_cbit as _if_cbit
from qcsim.circuit import measure_qubits as _measure_qubits
from qcsim.noise import bit_flip, depolarizing, phase_flip


def _single(name):
    count, _ = _g.param_spec(name)

    def ctor(*args):
        params = args[:count]
        wires = args[count:] or (0,)
        return _g.single_qubit_gate(name, params, *wires)

    ctor.__name__ = name
    ctor.__qualname__ = name
    ctor.__doc__ = f"{name} gate; call as {name}({'theta, ' * min(count, 1)}qubit)."
    return ctor


def _two(name):
    count, _ = _g.param_spec(name)

    def ctor(*args):
        params = args[:count]
        wires = args[count:] or (0, 1)
        return _g.two_qubit_gate(name, params, *wires)

    ctor.__name__ = name
    ctor.__qualname__ = name
    ctor.__doc__ = f"{name} gate; call as {name}({'params..., ' if count else ''}q1, q2)."
    return ctor


def _three(name):
    def ctor(*wires):
        wires = wires or (0, 1, 2)
        return _g.three_qubit_gate(name, *wires)

    ctor.__name__ = name
    ctor.__qualname__ = name
    ctor.__doc__ = f"{name} gate; call as {name}(q1, q2, q3)."
    return ctor


def _controlled(name):
    count, _ = _g.param_spec(name)

    def ctor(*args):
        params = args[:count]
        wires = args[count:] or (0, 1)
        return _g.control_gate(name, params, wires[:-1], wires[-1])

    ctor.__name__ = name
    ctor.__qualname__ = name
    ctor.__doc__ = f"{name} gate; call as {name}({'phi, ' if count else ''}control, target)."
    return ctor


I = _single("I")
X = _single("X")
Y = _single("Y")
Z = _single("Z")
S = _single("S")
H = _single("H")
P = _single("P")
T = _single("T")
Xsqrt = _single("Xsqrt")
GlobalPhase = _single("GlobalPhase")
Rot = _single("Rot")
U = Rot
RX = _single("RX")
RY = _single("RY")
RZ = _single("RZ")

SWAP = _two("SWAP")
ISWAP = _two("ISWAP")
SWAPsqrt = _two("SWAPsqrt")
SWAPalpha = _two("SWAPalpha")
Magic = _two("Magic")
RXX = _two("RXX")
RYY = _two("RYY")
RZZ = _two("RZZ")
RXY = _two("RXY")
Barenco = _two("Barenco")
Berkeley = _two("Berkeley")
Canonical = _two("Canonical")
Givens = _two("Givens")

Toffoli = _three("Toffoli")
Margolus = _three("Margolus")
Fredkin = _three("Fredkin")
CSWAP = Fredkin

CX = _controlled("CX")
CNOT = CX
CZ = _controlled("CZ")
CP = _controlled("CP")
CS = _controlled("CS")
CSX = _controlled("CSX")


def CCX(c1=0, c2=1, target=2):
    """Doubly-controlled X; counts as "CCX" in gatesinfo."""
    return _g.ccx(c1, c2, target)


def CU(u, *controls):
    """Arbitrary controlled gate: `u` (a gate object) fires when every control reads 1."""
    return _g.controlled_unitary(u, controls or (0,))


def ArbitraryGate(matrix, wires, name="U"):
    """User-defined unitary on the given wires; rejected if not unitary."""
    return _g.arbitrary_gate(matrix, wires, name=name)


def BitFlipNoise(p, wire):
    """Bit-flip channel with error probability p on a wire (or wire list)."""
    return bit_flip(p, wire)


def PhaseFlipNoise(p, wire):
    """Phase-flip channel with error probability p on a wire (or wire list)."""
    return phase_flip(p, wire)


def DepolarizingNoise(p, wire):
    """Depolarizing channel: rho -> (1-p) rho + p I/2 on a wire (or wire list)."""
    return depolarizing(p, wire)


def MeasureQubit(qubits, clbits=None):
    """Measurement element; classical labels default to m{qubit}."""
    return _measure_qubits(qubits, clbits)


def If_cbit(condition, gate):
    """Classically controlled gate: If_cbit(['a', 1], Z(2))."""
    label, value = condition
    return _if_cbit(label, value, gate)
