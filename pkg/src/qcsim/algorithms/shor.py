"""Shor order finding at desk scale (N <= 15).

The modular-multiplication unitary U|y> = |a y mod N> is a dense permutation
matrix on ceil(log2 N) work qubits; phase estimation uses twice that many
counting qubits and continued fractions recover the order. Correctness over
scalability: the permutation-matrix route avoids reversible arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..circuit import Circuit, measure_qubits
from ..engine import run
from ..errors import DomainError
from ..gates import GateDef, controlled_unitary, single_qubit_gate
from .fourier import iqft

MAX_MODULUS = 15


@dataclass(frozen=True)
class ShorResult:
    a: int
    modulus: int
    order: int | None
    factors: tuple[int, int] | None
    attempts: int
    success: bool
    note: str = ""


def _mod_mult_permutation(mult: int, modulus: int, m: int) -> np.ndarray:
    """Permutation matrix |y> -> |mult * y mod modulus>, identity on y >= modulus."""
    dim = 1 << m
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for y in range(dim):
        target = (mult * y) % modulus if y < modulus else y
        mat[target, y] = 1.0
    return mat


def order_finding_circuit(a: int, modulus: int) -> Circuit:
    """QPE circuit: 2m counting qubits, m work qubits prepared in |0..01>."""
    m = max(1, math.ceil(math.log2(modulus)))
    t = 2 * m
    c = Circuit(t + m)
    c.append(single_qubit_gate("X", (), t + m - 1))  # work register to |1>
    for j in range(t):
        c.append(single_qubit_gate("H", (), j))
    for j in range(t):
        power = 1 << (t - 1 - j)
        mult = pow(a, power, modulus)
        mat = _mod_mult_permutation(mult, modulus, m)
        gate = GateDef(f"xMult{mult}", (), mat, tuple(range(t, t + m)))
        c.append(controlled_unitary(gate, (j,), name=f"C-xMult{mult}"))
    for e in iqft(t).elements:
        c.append(e)
    c.append(measure_qubits(range(t)))
    return c


def _factors_from_order(a: int, r: int, modulus: int) -> tuple[int, int] | None:
    if r % 2 != 0:
        return None
    half = pow(a, r // 2, modulus)
    if half == modulus - 1:
        return None
    g1 = math.gcd(half - 1, modulus)
    g2 = math.gcd(half + 1, modulus)
    facs = sorted({g for g in (g1, g2) if 1 < g < modulus})
    if not facs:
        return None
    f = facs[0]
    return (f, modulus // f)


def shor_order_finding(a: int, modulus: int, seed: int = 0, max_attempts: int = 10) -> ShorResult:
    """Recover the order of `a` mod `modulus` and, when possible, factor the modulus.

    Each attempt runs the phase-estimation circuit once with its own seeded
    stream; degenerate draws (phase 0, bad convergents, odd order, or
    a^(r/2) = -1) trigger a retry.
    """
    if modulus > MAX_MODULUS:
        raise DomainError(f"desk-scale order finding is capped at N <= {MAX_MODULUS}")
    if modulus < 3:
        raise DomainError("modulus must be at least 3")
    if not 1 < a < modulus:
        raise DomainError(f"base a must satisfy 1 < a < N, got a={a}")

    g = math.gcd(a, modulus)
    if g != 1:
        return ShorResult(a, modulus, None, (g, modulus // g), 0, True,
                          note="gcd(a, N) > 1: factor found classically")

    circuit = order_finding_circuit(a, modulus)
    t = 2 * max(1, math.ceil(math.log2(modulus)))
    last_order = None
    for attempt in range(1, max_attempts + 1):
        outcome = run(circuit, rng=np.random.default_rng([seed, attempt]))
        c_meas = int("".join(str(outcome.classical.bits[f"m{q}"]) for q in range(t)), 2)
        if c_meas == 0:
            continue
        r = Fraction(c_meas, 1 << t).limit_denominator(modulus).denominator
        if r < 1 or pow(a, r, modulus) != 1:
            continue
        last_order = r
        factors = _factors_from_order(a, r, modulus)
        if factors is not None:
            return ShorResult(a, modulus, r, factors, attempt, True)
    note = "order found but it yields no factors" if last_order else "no usable phase drawn"
    return ShorResult(a, modulus, last_order, None, max_attempts, False, note=note)
