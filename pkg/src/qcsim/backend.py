"""Shot-based simulation with deterministic chunked execution.

Randomness contract: shot i draws from its own counter-based stream seeded by
(master seed, i), so aggregated results are a pure function of
(circuit, shots, seed) - independent of chunk size, worker count or
scheduling order.

Two modes:

* trajectory - one engine run per shot; noise channels sampled per shot.
* density    - exact density-matrix evolution (<= 10 qubits); measurements
  must be terminal and classical control is not supported; per-shot records
  are sampled from the exact outcome distribution.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .circuit import Circuit, ClassicalControlOp, GateOp, MeasureOp, NoiseOp, measure_all_element
from .errors import SimulationError
from .noise import apply_channel_density
from .qstate import DensityMatrix, bit_position, sv_to_density

DENSITY_MODE_MAX_QUBITS = 10

_SEED_MASK = (1 << 64) - 1


def shot_rng(seed: int, shot_index: int) -> np.random.Generator:
    """Independent per-shot stream keyed by (master seed, shot index)."""
    return np.random.default_rng([int(seed) & _SEED_MASK, int(shot_index)])


@dataclass(frozen=True)
class SimJob:
    circuit: Circuit
    shots: int
    chunk_size: int | None = None
    seed: int = 0
    mode: str = "trajectory"
    workers: int = 1

    def __post_init__(self):
        if self.shots < 1:
            raise SimulationError("shots must be >= 1")
        if self.mode not in ("trajectory", "density"):
            raise SimulationError(f"unknown mode {self.mode!r}")
        chunk = self.chunk_size if self.chunk_size is not None else self.shots
        if not 1 <= chunk <= self.shots:
            raise SimulationError(f"chunk_size must lie in [1, shots], got {chunk}")
        object.__setattr__(self, "chunk_size", chunk)
        if self.mode == "density" and self.circuit.num_qubits > DENSITY_MODE_MAX_QUBITS:
            raise SimulationError(
                f"density mode is capped at {DENSITY_MODE_MAX_QUBITS} qubits "
                f"(circuit has {self.circuit.num_qubits})"
            )


@dataclass
class ShotResult:
    """Per-shot classical records plus aggregated counts and probabilities."""

    shots: int
    seed: int
    clbit_labels: list[str]
    per_shot: list[str]
    counts: dict[str, int] = field(default_factory=dict)
    probability: dict[str, float] = field(default_factory=dict)
    final_density: DensityMatrix | None = None

    def count(self) -> tuple[dict[str, int], dict[str, float]]:
        return self.counts, self.probability


def _aggregate(per_shot: list[str]) -> tuple[dict[str, int], dict[str, float]]:
    counts: dict[str, int] = {}
    for bits in per_shot:
        counts[bits] = counts.get(bits, 0) + 1
    total = len(per_shot)
    probability = {k: v / total for k, v in counts.items()}
    return counts, probability


def _with_default_measurement(circuit: Circuit) -> Circuit:
    if any(isinstance(e, MeasureOp) for e in circuit.elements):
        return circuit
    prepared = circuit.copy()
    prepared.append(measure_all_element(circuit.num_qubits))
    return prepared


def _run_trajectory(job: SimJob) -> ShotResult:
    circuit = _with_default_measurement(job.circuit)
    labels = circuit.measured_clbits()
    segments = engine.compile_circuit(circuit)

    def one_shot(i: int) -> str:
        outcome = engine.run_compiled(circuit, segments, shot_rng(job.seed, i))
        return "".join(str(outcome.classical.bits[l]) for l in labels)

    per_shot: list[str] = [""] * job.shots
    chunks = [
        range(start, min(start + job.chunk_size, job.shots))
        for start in range(0, job.shots, job.chunk_size)
    ]

    def run_chunk(idxs) -> list[tuple[int, str]]:
        return [(i, one_shot(i)) for i in idxs]

    if job.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=job.workers) as pool:
            for pairs in pool.map(run_chunk, chunks):
                for i, bits in pairs:
                    per_shot[i] = bits
    else:
        for idxs in chunks:
            for i, bits in run_chunk(idxs):
                per_shot[i] = bits

    counts, probability = _aggregate(per_shot)
    return ShotResult(job.shots, job.seed, labels, per_shot, counts, probability)


def _apply_gate_density(mat: np.ndarray, gate, n: int) -> np.ndarray:
    from .circuit import _apply_gate_to_columns

    _apply_gate_to_columns(mat, gate.matrix, gate.targets, n)  # U rho
    mat = mat.conj().T.copy()
    _apply_gate_to_columns(mat, gate.matrix, gate.targets, n)  # U (U rho)+
    return mat.conj().T.copy()


def _run_density(job: SimJob) -> ShotResult:
    n = job.circuit.num_qubits
    circuit = _with_default_measurement(job.circuit)
    measures: list[MeasureOp] = []
    rho = np.array(sv_to_density(circuit.initial_state).entries)
    for i, e in enumerate(circuit.elements):
        if isinstance(e, ClassicalControlOp):
            raise SimulationError("density mode does not support classical control; use trajectory mode")
        if isinstance(e, MeasureOp):
            measures.append(e)
            continue
        if measures:
            raise SimulationError(
                f"density mode requires terminal measurements; element {i} follows a measurement"
            )
        if isinstance(e, GateOp):
            rho = _apply_gate_density(rho, e.gate, n)
        elif isinstance(e, NoiseOp):
            rho = np.array(apply_channel_density(DensityMatrix(n, rho), e.channel).entries)

    final_density = DensityMatrix(n, rho)
    labels: list[str] = []
    qubits: list[int] = []
    for m in measures:
        labels.extend(m.clbits)
        qubits.extend(m.qubits)

    # Marginal outcome distribution over the measured qubits, from the diagonal.
    diag = np.real(np.diag(rho)).clip(min=0.0)
    num_outcomes = 1 << len(qubits)
    marginal = np.zeros(num_outcomes)
    if qubits:
        idx = np.arange(diag.shape[0])
        key = np.zeros(diag.shape[0], dtype=np.int64)
        for pos, q in enumerate(qubits):
            key |= (((idx >> bit_position(n, q)) & 1) << (len(qubits) - 1 - pos)).astype(np.int64)
        np.add.at(marginal, key, diag)
    else:
        marginal[0] = 1.0
    marginal /= marginal.sum()
    cum = np.cumsum(marginal)

    per_shot: list[str] = []
    for i in range(job.shots):
        u = shot_rng(job.seed, i).random() * cum[-1]
        outcome = min(int(np.searchsorted(cum, u, side="right")), num_outcomes - 1)
        per_shot.append(format(outcome, f"0{len(qubits)}b") if qubits else "")

    counts, probability = _aggregate(per_shot)
    return ShotResult(job.shots, job.seed, labels, per_shot, counts, probability, final_density)


def simulate(job: SimJob) -> ShotResult:
    """Execute a job; results depend only on (circuit, shots, seed, mode)."""
    if job.mode == "density":
        return _run_density(job)
    return _run_trajectory(job)


def run_shots(circuit: Circuit, shots: int, chunk_size: int | None = None, seed: int = 0,
              mode: str = "trajectory", workers: int = 1) -> ShotResult:
    return simulate(SimJob(circuit, shots, chunk_size, seed, mode, workers))


# ---------------------------------------------------------------------------
# histogram export
# ---------------------------------------------------------------------------

BAR_WIDTH = 40


def histogram_lines(result: ShotResult) -> list[str]:
    lines = []
    for key in sorted(result.counts):
        p = result.probability[key]
        bar = "#" * round(p * BAR_WIDTH)
        label = key if key else "(empty)"
        lines.append(f"{label:>12} {result.counts[key]:>8} {p:8.4f} |{bar}")
    return lines


def export_histogram(result: ShotResult, fmt: str, path: str) -> None:
    """Write counts/probabilities as text bars, CSV rows, or a JSON document."""
    if fmt == "text":
        with open(path, "w") as fh:
            fh.write("\n".join(histogram_lines(result)) + "\n")
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bitstring", "count", "probability"])
            for key in sorted(result.counts):
                writer.writerow([key, result.counts[key], repr(result.probability[key])])
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump(
                {
                    "shots": result.shots,
                    "seed": result.seed,
                    "counts": result.counts,
                    "probability": result.probability,
                },
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")
    else:
        raise SimulationError(f"unknown histogram format {fmt!r} (expected text, csv or json)")
