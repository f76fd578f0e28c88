"""Command-line surface: run circuit files, invoke algorithms, benchmark, render.

Exit codes: 0 success, 2 bad input (parse/usage errors), 3 simulation failure.
The default seed comes from QCSIM_SEED when a --seed flag is omitted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import backend, bench, circuit_io, engine
from .algorithms import (
    OptimizerConfig,
    Ansatz,
    PauliHamiltonian,
    bv_recover,
    dj_decide,
    qaoa,
    run_grover,
    run_qpe,
    run_teleportation,
    shor_order_finding,
    vqe,
)
from .circuit import Circuit
from .errors import ParseError, QcsimError
from .gates import control_gate, single_qubit_gate, param_spec
from .qstate import basis_state
from .viz import render_text

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_SIM_FAILURE = 3


def _default_seed() -> int:
    return int(os.environ.get("QCSIM_SEED", "0"))


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _sanitize(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def _emit(report: dict) -> None:
    print(json.dumps(_sanitize(report), indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    circuit = circuit_io.load_circuit(args.file)
    chunk = args.chunk_size
    if args.num_chunks:
        chunk = max(1, math.ceil(args.shots / args.num_chunks))
    result = backend.run_shots(
        circuit,
        shots=args.shots,
        chunk_size=chunk,
        seed=args.seed,
        mode=args.mode,
        workers=args.workers,
    )
    out = args.out or f"{os.path.splitext(args.file)[0]}.hist.{args.format}"
    backend.export_histogram(result, args.format, out)
    print(f"shots={result.shots} seed={result.seed} clbits={','.join(result.clbit_labels)}")
    for line in backend.histogram_lines(result):
        print(line)
    print(f"histogram written to {out}")
    return EXIT_OK


def _ry_cx_ansatz(num_qubits: int, layers: int) -> Ansatz:
    """Hardware-efficient ansatz: RY on every wire, CX chain, repeated `layers` times."""

    def build(params):
        c = Circuit(num_qubits)
        k = 0
        for _ in range(layers):
            for q in range(num_qubits):
                c.append(single_qubit_gate("RY", (params[k],), q))
                k += 1
            for q in range(num_qubits - 1):
                c.append(control_gate("CX", (), (q,), q + 1))
        return c

    return Ansatz(num_qubits * layers, build)


def _parse_hamiltonian(text: str) -> PauliHamiltonian:
    terms = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "*" in chunk:
            w, s = chunk.split("*", 1)
            terms.append((float(w), s.strip()))
        else:
            terms.append((1.0, chunk))
    return PauliHamiltonian(tuple(terms))


def _parse_edges(text: str):
    edges = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            pair, w = chunk.split(":", 1)
            weight = float(w)
        else:
            pair, weight = chunk, 1.0
        u, v = pair.split("-")
        edges.append((int(u), int(v), weight))
    return edges


def cmd_algo(args) -> int:
    seed = args.seed
    if args.algorithm == "dj":
        _emit(dj_decide(args.qubits, args.constant, rng=seed))
    elif args.algorithm == "bv":
        outcome, prob = bv_recover(args.secret)
        _emit({"algorithm": "bv", "secret": args.secret, "outcome": outcome,
               "probability": prob})
    elif args.algorithm == "grover":
        _emit(run_grover(args.qubits, args.marked, args.iters))
    elif args.algorithm == "qft":
        from .algorithms import qft

        c = qft(args.qubits)
        c.initial_state = basis_state(args.qubits, args.input)
        sv = engine.run(c, rng=seed).statevector
        _emit({
            "algorithm": "qft",
            "num_qubits": args.qubits,
            "input": args.input,
            "statevector": [complex(z) for z in sv.amplitudes],
        })
    elif args.algorithm == "qpe":
        count, _names = param_spec(args.gate)
        params = tuple(args.params or [])
        if len(params) != count:
            raise ParseError(f"gate {args.gate} takes {count} parameter(s), got {len(params)}")
        u = single_qubit_gate(args.gate, params, 0)
        eigenstate = basis_state(1, args.eigenstate)
        _emit(run_qpe(u, eigenstate, args.counting, rng=seed))
    elif args.algorithm == "shor":
        res = shor_order_finding(args.a, args.modulus, seed=seed, max_attempts=args.attempts)
        _emit({
            "algorithm": "shor", "a": res.a, "modulus": res.modulus, "order": res.order,
            "factors": list(res.factors) if res.factors else None,
            "attempts": res.attempts, "success": res.success, "note": res.note,
        })
    elif args.algorithm == "teleport":
        _emit(run_teleportation(args.alpha, rng=seed))
    elif args.algorithm == "vqe":
        ham = _parse_hamiltonian(args.ham)
        ansatz = _ry_cx_ansatz(ham.num_qubits, args.layers)
        method = "nelder-mead" if args.nelder_mead else "parameter-shift-gd"
        res = vqe(ham, ansatz, OptimizerConfig(method=method), seed=seed)
        _emit({
            "algorithm": "vqe", "energy": res.energy, "params": res.params,
            "converged": res.converged, "trace": res.trace,
        })
    elif args.algorithm == "qaoa":
        res = qaoa(_parse_edges(args.edges), args.layers, seed=seed)
        _emit({
            "algorithm": "qaoa", "expected_cut": res.expected_cut,
            "best_bitstring": res.best_bitstring, "best_cut": res.best_cut,
            "params": res.params, "trace": res.trace, "converged": res.converged,
        })
    return EXIT_OK


def cmd_bench(args) -> int:
    names = [g.strip() for g in args.gates.split(",") if g.strip()]
    records = bench.run_benchmark(
        names,
        min_qubits=args.min_qubits,
        max_qubits=args.max_qubits,
        reps=args.reps,
        ops=args.ops,
    )
    bench.write_csv(records, args.out)
    for r in records:
        print(f"{r.gate:>6} n={r.num_qubits:<3} wall={r.wall_seconds:.6f}s "
              f"per_op={r.per_op_seconds:.3e}s (reps={r.repetitions})")
    print(f"benchmark written to {args.out}")
    return EXIT_OK


def cmd_render(args) -> int:
    circuit = circuit_io.load_circuit(args.file)
    if args.no_color:
        color = False
    elif args.color:
        color = True
    else:
        color = sys.stdout.isatty()
    rendered = render_text(circuit, color=color)
    print(rendered.text())
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a circuit file and export a histogram")
    p_run.add_argument("file")
    p_run.add_argument("--shots", type=int, default=1000)
    p_run.add_argument("--seed", type=int, default=_default_seed())
    p_run.add_argument("--chunk-size", type=int, default=None)
    p_run.add_argument("--num-chunks", type=int, default=None,
                       help="alternative chunk spelling: number of batches")
    p_run.add_argument("--mode", choices=["trajectory", "density"], default="trajectory")
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--format", choices=["text", "csv", "json"], default="json")
    p_run.set_defaults(func=cmd_run)

    p_algo = sub.add_parser("algo", help="run a library algorithm, report JSON")
    algo_sub = p_algo.add_subparsers(dest="algorithm", required=True)

    a = algo_sub.add_parser("dj")
    a.add_argument("--qubits", type=int, required=True)
    group = a.add_mutually_exclusive_group(required=True)
    group.add_argument("--constant", action="store_true")
    group.add_argument("--balanced", dest="constant", action="store_false")
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("bv")
    a.add_argument("--secret", required=True)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("grover")
    a.add_argument("--qubits", type=int, required=True)
    a.add_argument("--marked", type=int, required=True)
    a.add_argument("--iters", type=int, required=True)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("qft")
    a.add_argument("--qubits", type=int, required=True)
    a.add_argument("--input", type=int, default=0)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("qpe")
    a.add_argument("--gate", default="T")
    a.add_argument("--params", type=float, nargs="*")
    a.add_argument("--eigenstate", type=int, default=1)
    a.add_argument("--counting", type=int, default=3)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("shor")
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--modulus", "-N", type=int, required=True)
    a.add_argument("--attempts", type=int, default=10)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("teleport")
    a.add_argument("--alpha", type=float, required=True)
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("vqe")
    a.add_argument("--ham", required=True, help='e.g. "1.0*ZZ" or "0.5*XI,0.5*IZ"')
    a.add_argument("--layers", type=int, default=1)
    a.add_argument("--nelder-mead", action="store_true")
    a.add_argument("--seed", type=int, default=_default_seed())

    a = algo_sub.add_parser("qaoa")
    a.add_argument("--edges", required=True, help='e.g. "0-1,1-2,0-2" or "0-1:2.0"')
    a.add_argument("--layers", type=int, default=1)
    a.add_argument("--seed", type=int, default=_default_seed())

    p_algo.set_defaults(func=cmd_algo)

    p_bench = sub.add_parser("bench", help="per-gate runtime scaling sweep")
    p_bench.add_argument("--gates", default="rx,h,cnot")
    p_bench.add_argument("--min-qubits", type=int, default=1)
    p_bench.add_argument("--max-qubits", type=int, default=12)
    p_bench.add_argument("--reps", type=int, default=7)
    p_bench.add_argument("--ops", type=int, default=bench.DEFAULT_OPS_PER_CIRCUIT)
    p_bench.add_argument("--out", default="bench.csv")
    p_bench.set_defaults(func=cmd_bench)

    p_render = sub.add_parser("render", help="draw a circuit file as text")
    p_render.add_argument("file")
    p_render.add_argument("--color", action="store_true")
    p_render.add_argument("--no-color", action="store_true")
    p_render.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except QcsimError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_SIM_FAILURE


if __name__ == "__main__":
    sys.exit(main())
