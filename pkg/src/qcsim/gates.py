"""The gate library: matrices, parameters, controlled construction, arbitrary unitaries.

Conventions (documented once, pinned by tests; see README "Gate conventions"):

* RX/RY/RZ(theta)   = exp(-i theta P / 2) for P in {X, Y, Z}
* P(phi)            = diag(1, e^{i phi});  T = P(pi/4);  S = P(pi/2)
* Rot(theta,phi,lam): generic SU(2)+phase gate
  [[cos(t/2), -e^{i lam} sin(t/2)], [e^{i phi} sin(t/2), e^{i(phi+lam)} cos(t/2)]]
* GlobalPhase(gamma) = e^{i gamma} I
* RXX/RYY/RZZ(phi)  = exp(-i phi P(x)P / 2);  RXY(phi) = exp(-i phi (XX+YY) / 4)
* SWAPalpha(a)      = SWAP^a on the principal branch ((-1)^a = e^{i pi a})
* Berkeley          = exp(i (pi/8) (2 XX + YY))
* Canonical(a,b,c)  = exp(-i (pi/2) (a XX + b YY + c ZZ))
* Givens(theta)     : rotation in the {|01>, |10>} block
* Barenco(al,ph,th) : controlled-U with
  U = [[e^{i al} cos th, -i e^{i(al-ph)} sin th], [-i e^{i(al+ph)} sin th, e^{i al} cos th]]
* Margolus          : Toffoli up to a -1 phase on |101>
* Controlled gates embed diag(I, U) with control wires as the leading (most
  significant) local bits.

Angles are radians everywhere. Matrices are built eagerly and cached by
(name, params); the cache allows concurrent reads with exclusive inserts.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import GateError

UNITARY_ATOL = 1e-10

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_XX = np.kron(_X, _X)
_YY = np.kron(_Y, _Y)
_ZZ = np.kron(_Z, _Z)


@dataclass(frozen=True)
class GateDef:
    """A named unitary bound to target wires.

    `targets` are circuit wire indices in gate order: for controlled gates the
    controls come first, then the target; the first wire is the most
    significant bit of the local matrix index.
    """

    name: str
    params: tuple[float, ...]
    matrix: np.ndarray
    targets: tuple[int, ...]
    category: str = "custom"

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        if len(set(targets)) != len(targets):
            raise GateError(f"gate {self.name!r} has duplicate target wires {targets}")
        if any(t < 0 for t in targets):
            raise GateError(f"gate {self.name!r} has a negative wire index")
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = 1 << len(targets)
        if mat.shape != (dim, dim):
            raise GateError(
                f"gate {self.name!r}: matrix shape {mat.shape} does not match "
                f"{len(targets)} target wires (expected {dim}x{dim})"
            )
        dev = float(np.max(np.abs(mat @ mat.conj().T - np.eye(dim))))
        if dev > UNITARY_ATOL:
            raise GateError(f"gate {self.name!r} is not unitary: max |UU+ - I| entry = {dev:.3e}")
        if mat.flags.writeable:
            mat = mat.copy()
            mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def arity(self) -> int:
        return len(self.targets)


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------

def _rot(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )


def _pauli_rotation(pauli: np.ndarray, theta: float) -> np.ndarray:
    # exp(-i theta P / 2) for P with P^2 = I
    dim = pauli.shape[0]
    return math.cos(theta / 2) * np.eye(dim) - 1j * math.sin(theta / 2) * pauli


_SINGLE_BUILDERS = {
    "I": lambda: _I2,
    "X": lambda: _X,
    "Y": lambda: _Y,
    "Z": lambda: _Z,
    "H": lambda: np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2),
    "S": lambda: np.diag([1, 1j]).astype(np.complex128),
    "T": lambda: np.diag([1, np.exp(1j * math.pi / 4)]),
    "P": lambda phi: np.diag([1, np.exp(1j * phi)]),
    "Xsqrt": lambda: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128),
    "GlobalPhase": lambda gamma: np.exp(1j * gamma) * _I2,
    "Rot": _rot,
    "RX": lambda theta: _pauli_rotation(_X, theta),
    "RY": lambda theta: _pauli_rotation(_Y, theta),
    "RZ": lambda theta: _pauli_rotation(_Z, theta),
}


def _swap_alpha(alpha: float) -> np.ndarray:
    e = np.exp(1j * math.pi * alpha)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, (1 + e) / 2, (1 - e) / 2, 0],
            [0, (1 - e) / 2, (1 + e) / 2, 0],
            [0, 0, 0, 1],
        ],
        dtype=np.complex128,
    )


def _rxy(phi: float) -> np.ndarray:
    # exp(-i phi (XX + YY) / 4): identity on {|00>,|11>}, X-rotation on the middle block
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    m = np.eye(4, dtype=np.complex128)
    m[1, 1] = m[2, 2] = c
    m[1, 2] = m[2, 1] = -1j * s
    return m


def _berkeley() -> np.ndarray:
    # exp(i (pi/8) (2 XX + YY)); XX and YY commute
    a = math.cos(math.pi / 4) * np.eye(4) + 1j * math.sin(math.pi / 4) * _XX
    b = math.cos(math.pi / 8) * np.eye(4) + 1j * math.sin(math.pi / 8) * _YY
    return a @ b


def _canonical(a: float, b: float, c: float) -> np.ndarray:
    m = np.eye(4, dtype=np.complex128)
    for coeff, pp in ((a, _XX), (b, _YY), (c, _ZZ)):
        m = m @ _pauli_rotation(pp, math.pi * coeff)
    return m


def _givens(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [[1, 0, 0, 0], [0, c, -s, 0], [0, s, c, 0], [0, 0, 0, 1]],
        dtype=np.complex128,
    )


def _barenco_u(alpha: float, phi: float, theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [np.exp(1j * alpha) * c, -1j * np.exp(1j * (alpha - phi)) * s],
            [-1j * np.exp(1j * (alpha + phi)) * s, np.exp(1j * alpha) * c],
        ],
        dtype=np.complex128,
    )


def _embed_controlled(u: np.ndarray, num_controls: int) -> np.ndarray:
    """Block-diagonal embedding: identity except the all-controls-set block, which is `u`."""
    k = int(math.log2(u.shape[0]))
    dim = 1 << (num_controls + k)
    m = np.eye(dim, dtype=np.complex128)
    base = ((1 << num_controls) - 1) << k
    block = [base + j for j in range(1 << k)]
    m[np.ix_(block, block)] = u
    return m


_TWO_BUILDERS = {
    "SWAP": lambda: np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
    ),
    "ISWAP": lambda: np.array(
        [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
    ),
    "SWAPsqrt": lambda: _swap_alpha(0.5),
    "SWAPalpha": _swap_alpha,
    "Magic": lambda: np.array(
        [[1, 1j, 0, 0], [0, 0, 1j, 1], [0, 0, 1j, -1], [1, -1j, 0, 0]],
        dtype=np.complex128,
    )
    / math.sqrt(2),
    "RXX": lambda phi: _pauli_rotation(_XX, phi),
    "RYY": lambda phi: _pauli_rotation(_YY, phi),
    "RZZ": lambda phi: _pauli_rotation(_ZZ, phi),
    "RXY": _rxy,
    "Barenco": lambda alpha, phi, theta: _embed_controlled(_barenco_u(alpha, phi, theta), 1),
    "Berkeley": _berkeley,
    "Canonical": _canonical,
    "Givens": _givens,
}


def _toffoli() -> np.ndarray:
    m = np.eye(8, dtype=np.complex128)
    m[[6, 7]] = m[[7, 6]]
    return m


def _margolus() -> np.ndarray:
    m = _toffoli()
    m[5, 5] = -1.0
    return m


def _fredkin() -> np.ndarray:
    m = np.eye(8, dtype=np.complex128)
    m[[5, 6]] = m[[6, 5]]
    return m


_THREE_BUILDERS = {"Toffoli": _toffoli, "Margolus": _margolus, "Fredkin": _fredkin}

# Controlled gates: name -> builder for the single-qubit U they control.
_CONTROLLED_BUILDERS = {
    "CX": _SINGLE_BUILDERS["X"],
    "CZ": _SINGLE_BUILDERS["Z"],
    "CP": _SINGLE_BUILDERS["P"],
    "CS": _SINGLE_BUILDERS["S"],
    "CSX": _SINGLE_BUILDERS["Xsqrt"],
}

PARAM_SPECS: dict[str, tuple[int, tuple[str, ...]]] = {
    "I": (0, ()), "X": (0, ()), "Y": (0, ()), "Z": (0, ()), "H": (0, ()),
    "S": (0, ()), "T": (0, ()), "Xsqrt": (0, ()),
    "P": (1, ("phi",)),
    "GlobalPhase": (1, ("gamma",)),
    "Rot": (3, ("theta", "phi", "lam")),
    "RX": (1, ("theta",)), "RY": (1, ("theta",)), "RZ": (1, ("theta",)),
    "SWAP": (0, ()), "ISWAP": (0, ()), "SWAPsqrt": (0, ()), "Magic": (0, ()),
    "Berkeley": (0, ()),
    "SWAPalpha": (1, ("alpha",)),
    "RXX": (1, ("phi",)), "RYY": (1, ("phi",)), "RZZ": (1, ("phi",)), "RXY": (1, ("phi",)),
    "Barenco": (3, ("alpha", "phi", "theta")),
    "Canonical": (3, ("a", "b", "c")),
    "Givens": (1, ("theta",)),
    "Toffoli": (0, ()), "Margolus": (0, ()), "Fredkin": (0, ()),
    "CX": (0, ()), "CZ": (0, ()), "CS": (0, ()), "CSX": (0, ()),
    "CP": (1, ("phi",)),
}

SINGLE_QUBIT_GATES = tuple(_SINGLE_BUILDERS)
TWO_QUBIT_GATES = tuple(_TWO_BUILDERS)
THREE_QUBIT_GATES = tuple(_THREE_BUILDERS)
CONTROLLED_GATES = tuple(_CONTROLLED_BUILDERS)

_matrix_cache: dict[tuple, np.ndarray] = {}
_cache_lock = threading.Lock()


def _cached_matrix(key: tuple, builder, params: tuple[float, ...]) -> np.ndarray:
    mat = _matrix_cache.get(key)
    if mat is None:
        mat = np.asarray(builder(*params), dtype=np.complex128)
        mat.flags.writeable = False
        with _cache_lock:
            _matrix_cache.setdefault(key, mat)
    return mat


def _check_params(name: str, params) -> tuple[float, ...]:
    expected, _ = PARAM_SPECS[name]
    params = tuple(float(p) for p in params)
    if len(params) != expected:
        raise GateError(f"gate {name!r} takes {expected} parameter(s), got {len(params)}")
    return params


def param_spec(name: str) -> tuple[int, tuple[str, ...]]:
    """(parameter count, parameter names) for a library gate name."""
    if name not in PARAM_SPECS:
        raise GateError(f"unknown gate name {name!r}")
    return PARAM_SPECS[name]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def single_qubit_gate(name: str, params=(), target: int = 0) -> GateDef:
    if name not in _SINGLE_BUILDERS:
        raise GateError(f"unknown single-qubit gate {name!r}")
    params = _check_params(name, params)
    mat = _cached_matrix((name, params), _SINGLE_BUILDERS[name], params)
    return GateDef(name, params, mat, (target,), category="single")


def two_qubit_gate(name: str, params=(), t1: int = 0, t2: int = 1) -> GateDef:
    if name not in _TWO_BUILDERS:
        raise GateError(f"unknown two-qubit gate {name!r}")
    if t1 == t2:
        raise GateError(f"gate {name!r} needs two distinct wires, got ({t1}, {t2})")
    params = _check_params(name, params)
    mat = _cached_matrix((name, params), _TWO_BUILDERS[name], params)
    return GateDef(name, params, mat, (t1, t2), category="two")


def three_qubit_gate(name: str, t1: int, t2: int, t3: int) -> GateDef:
    if name not in _THREE_BUILDERS:
        raise GateError(f"unknown three-qubit gate {name!r}")
    mat = _cached_matrix((name, ()), _THREE_BUILDERS[name], ())
    return GateDef(name, (), mat, (t1, t2, t3), category="three")


def control_gate(name: str, params=(), controls=(0,), target: int = 1) -> GateDef:
    """Named controlled gate (CX, CZ, CP, CS, CSX), any number of control wires."""
    if name not in _CONTROLLED_BUILDERS:
        raise GateError(f"unknown controlled gate {name!r}")
    if isinstance(controls, int):
        controls = (controls,)
    controls = tuple(int(c) for c in controls)
    if not controls:
        raise GateError(f"gate {name!r} needs at least one control wire")
    params = _check_params(name, params)
    key = (name, params, len(controls))
    mat = _cached_matrix(
        key, lambda *p: _embed_controlled(_CONTROLLED_BUILDERS[name](*p), len(controls)), params
    )
    return GateDef(name, params, mat, (*controls, target), category="control")


def controlled_unitary(u: GateDef, controls, name: str = "CU") -> GateDef:
    """Arbitrary controlled-U: `u` applies iff every control wire reads 1."""
    if isinstance(controls, int):
        controls = (controls,)
    controls = tuple(int(c) for c in controls)
    if not controls:
        raise GateError("controlled_unitary needs at least one control wire")
    mat = _embed_controlled(u.matrix, len(controls))
    return GateDef(name, u.params, mat, (*controls, *u.targets), category="control")


def arbitrary_gate(matrix, targets, name: str = "U") -> GateDef:
    """User-defined unitary on |targets| wires; rejected if not unitary within 1e-10."""
    mat = np.asarray(matrix, dtype=np.complex128)
    targets = tuple(int(t) for t in targets)
    k = len(targets)
    if mat.ndim != 2 or mat.shape != (1 << k, 1 << k):
        raise GateError(
            f"arbitrary gate on {k} wire(s) needs a {1 << k}x{1 << k} matrix, got shape {mat.shape}"
        )
    return GateDef(name, (), mat, targets, category="custom")


def gate_adjoint(g: GateDef) -> GateDef:
    """Conjugate transpose of a gate, on the same wires."""
    name = g.name[:-4] if g.name.endswith("_dag") else g.name + "_dag"
    return GateDef(name, g.params, g.matrix.conj().T, g.targets, category=g.category)


def ccx(c1: int, c2: int, target: int) -> GateDef:
    """Toffoli under its doubly-controlled-X spelling (counts as "CCX" in gatesinfo)."""
    base = three_qubit_gate("Toffoli", c1, c2, target)
    return GateDef("CCX", (), base.matrix, base.targets, category="three")
