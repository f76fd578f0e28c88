"""Runtime-scaling benchmark: per-gate engine time across qubit counts.

Each measurement times ONLY the engine's gate application (a pre-encoded
fixed-size gate sequence run on a fresh state), excluding circuit construction
and encoding. A warmup pass per configuration is discarded so JIT compilation
never lands in a sample; the reported wall time is the median over reps.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

import numpy as np

from . import engine
from .errors import DomainError
from .gates import GateDef, control_gate, single_qubit_gate

DEFAULT_OPS_PER_CIRCUIT = 200
DEFAULT_RX_ANGLE = 0.5


@dataclass(frozen=True)
class BenchRecord:
    gate: str
    num_qubits: int
    repetitions: int
    wall_seconds: float
    per_op_seconds: float


def _bench_gates(name: str, num_qubits: int, ops: int) -> list[GateDef]:
    """A fixed-size sequence of one gate kind cycled across the wires."""
    key = name.lower()
    out = []
    for i in range(ops):
        if key == "rx":
            out.append(single_qubit_gate("RX", (DEFAULT_RX_ANGLE,), i % num_qubits))
        elif key == "h":
            out.append(single_qubit_gate("H", (), i % num_qubits))
        elif key in ("cnot", "cx"):
            if num_qubits < 2:
                raise DomainError("cnot needs at least 2 qubits")
            c = i % num_qubits
            t = (i + 1) % num_qubits
            out.append(control_gate("CX", (), (c,), t))
        else:
            raise DomainError(f"unknown benchmark gate {name!r} (expected rx, h or cnot)")
    return out


def _fresh_state(num_qubits: int) -> np.ndarray:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def bench_gate(name: str, num_qubits: int, reps: int = 7,
               ops: int = DEFAULT_OPS_PER_CIRCUIT) -> BenchRecord:
    if reps < 1:
        raise DomainError("reps must be >= 1")
    program = engine.compile_gates(_bench_gates(name, num_qubits, ops), num_qubits)
    engine.apply_program(_fresh_state(num_qubits), program)  # warmup, excluded
    samples = []
    for _ in range(reps):
        amps = _fresh_state(num_qubits)
        t0 = time.perf_counter()
        engine.apply_program(amps, program)
        samples.append(time.perf_counter() - t0)
    wall = float(np.median(samples))
    return BenchRecord(name.lower(), num_qubits, reps, wall, wall / ops)


def run_benchmark(gate_names, min_qubits: int = 1, max_qubits: int = 12, reps: int = 7,
                  ops: int = DEFAULT_OPS_PER_CIRCUIT) -> list[BenchRecord]:
    """Sweep each gate over the qubit range.

    Reps are interleaved round-robin across sizes so a transient load spike
    lands on every size a little rather than doubling one size's median.
    """
    if max_qubits > engine.MAX_QUBITS:
        raise DomainError(f"max_qubits exceeds the engine cap of {engine.MAX_QUBITS}")
    if reps < 1:
        raise DomainError("reps must be >= 1")
    records = []
    for name in gate_names:
        start = max(min_qubits, 2) if name.lower() in ("cnot", "cx") else min_qubits
        sizes = list(range(start, max_qubits + 1))
        programs = {
            n: engine.compile_gates(_bench_gates(name, n, ops), n) for n in sizes
        }
        for n in sizes:
            engine.apply_program(_fresh_state(n), programs[n])  # warmup, excluded
        samples: dict[int, list[float]] = {n: [] for n in sizes}
        for _ in range(reps):
            for n in sizes:
                amps = _fresh_state(n)
                t0 = time.perf_counter()
                engine.apply_program(amps, programs[n])
                samples[n].append(time.perf_counter() - t0)
        for n in sizes:
            wall = float(np.median(samples[n]))
            records.append(BenchRecord(name.lower(), n, reps, wall, wall / ops))
    return records


def write_csv(records, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gate", "num_qubits", "repetitions", "wall_seconds", "per_op_seconds"])
        for r in records:
            writer.writerow([r.gate, r.num_qubits, r.repetitions,
                             repr(r.wall_seconds), repr(r.per_op_seconds)])
