"""Text rendering of circuits with gate-category styling.

Layout reuses the greedy exact-wire layering that defines circuit depth, so a
gate-only circuit renders with exactly `depth` columns. Output with color=off
is pure ASCII and byte-stable; color=on wraps the same tokens in ANSI codes
(single=blue, two=magenta, three=default, control=cyan, noise=red,
measure=gray), so stripping the codes recovers the plain output exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, ClassicalControlOp, GateOp, MeasureOp, NoiseOp

ANSI_COLORS = {
    "single": "\x1b[34m",
    "two": "\x1b[35m",
    "three": "\x1b[39m",
    "control": "\x1b[36m",
    "noise": "\x1b[31m",
    "measure": "\x1b[90m",
}
ANSI_RESET = "\x1b[0m"

_NOISE_SHORT = {"bitflip": "BF", "phaseflip": "PF", "depolarizing": "DP"}

# Controlled-gate boxes show the base unitary's symbol.
_CONTROL_BASE = {"CX": "X", "CZ": "Z", "CP": "P", "CS": "S", "CSX": "SX", "CU": "U"}


@dataclass(frozen=True)
class RenderedCircuit:
    lines: list[str]
    style_map: dict[int, str]
    num_columns: int

    def text(self) -> str:
        return "\n".join(self.lines)


def _element_wires(e) -> tuple[int, ...]:
    if isinstance(e, GateOp):
        return e.gate.targets
    if isinstance(e, NoiseOp):
        return e.channel.targets
    if isinstance(e, MeasureOp):
        return e.qubits
    return e.gate.targets


def _element_category(e) -> str:
    if isinstance(e, NoiseOp):
        return "noise"
    if isinstance(e, MeasureOp):
        return "measure"
    gate = e.gate
    if gate.category != "custom":
        return gate.category
    if gate.arity == 1:
        return "single"
    return "two" if gate.arity == 2 else "three"


def _gate_cells(gate) -> dict[int, str]:
    """Map wire -> token for one gate."""
    name = gate.name
    if name in ("SWAP", "ISWAP"):
        return {w: "x" for w in gate.targets}
    if name in ("Toffoli", "CCX"):
        return {gate.targets[0]: "*", gate.targets[1]: "*", gate.targets[2]: "[X]"}
    if name in ("Fredkin", "CSWAP"):
        return {gate.targets[0]: "*", gate.targets[1]: "x", gate.targets[2]: "x"}
    if gate.category == "control":
        base = _CONTROL_BASE.get(name, name[1:] if name.startswith("C") else name)
        cells = {w: "*" for w in gate.targets[:-1]}
        cells[gate.targets[-1]] = f"[{base}]"
        return cells
    return {w: f"[{name}]" for w in gate.targets}


def render_text(circuit: Circuit, color: bool = False) -> RenderedCircuit:
    n = circuit.num_qubits
    clbits = circuit.clbit_labels
    clrow = {label: i for i, label in enumerate(clbits)}

    # Greedy exact-wire layering (same rule as Circuit.depth, over all elements,
    # with classical bits acting as extra wires so data dependencies order columns).
    last_layer = [-1] * (n + len(clbits))
    layers: list[int] = []
    for e in circuit.elements:
        wires = list(_element_wires(e))
        if isinstance(e, MeasureOp):
            wires += [n + clrow[l] for l in e.clbits]
        elif isinstance(e, ClassicalControlOp):
            wires.append(n + clrow[e.clbit])
        layer = 1 + max((last_layer[w] for w in wires), default=-1)
        for w in wires:
            last_layer[w] = layer
        layers.append(layer)
    num_columns = (max(layers) + 1) if layers else 0

    # Rows: qubit wires at 2q, spacers between, then classical rows (each with a spacer).
    qubit_row = {q: 2 * q for q in range(n)}
    cl_start = 2 * n
    cl_row = {label: cl_start + 2 * i for label, i in ((l, clrow[l]) for l in clbits)}
    num_rows = cl_start + 2 * len(clbits) - 1 if clbits else 2 * n - 1

    def row_fill(r: int) -> str:
        if r < 2 * n:
            return "-" if r % 2 == 0 else " "
        return "=" if (r - cl_start) % 2 == 0 else " "

    # cells[(row, col)] = (token, category or None for connectors)
    cells: dict[tuple[int, int], tuple[str, str | None]] = {}
    style_map: dict[int, str] = {}

    def put_connector(r0: int, r1: int, col: int) -> None:
        for r in range(min(r0, r1) + 1, max(r0, r1)):
            cells.setdefault((r, col), ("|", None))

    for idx, e in enumerate(circuit.elements):
        col = layers[idx]
        cat = _element_category(e)
        style_map[idx] = cat
        if isinstance(e, GateOp) or isinstance(e, ClassicalControlOp):
            gate = e.gate
            token_map = _gate_cells(gate)
            rows = [qubit_row[w] for w in gate.targets]
            put_connector(min(rows), max(rows), col)
            for w, token in token_map.items():
                cells[(qubit_row[w], col)] = (token, cat)
            if isinstance(e, ClassicalControlOp):
                r_cl = cl_row[e.clbit]
                put_connector(max(rows), r_cl, col)
                cells[(r_cl, col)] = (f"*={e.value}", cat)
        elif isinstance(e, NoiseOp):
            short = _NOISE_SHORT.get(e.channel.name, e.channel.name[:2].upper())
            for w in e.channel.targets:
                cells[(qubit_row[w], col)] = (f"<{short}>", cat)
        elif isinstance(e, MeasureOp):
            if not e.qubits:
                continue
            top = min(qubit_row[q] for q in e.qubits)
            bottom = max(cl_row[l] for l in e.clbits)
            put_connector(top, bottom, col)
            for q in e.qubits:
                cells[(qubit_row[q], col)] = ("[M]", cat)
            for label in e.clbits:
                cells[(cl_row[label], col)] = ("v", cat)

    widths = [
        max([len(cells[(r, c)][0]) for r in range(num_rows) if (r, c) in cells] or [1]) + 2
        for c in range(num_columns)
    ]
    if not num_columns:
        widths = [4]  # bare wires for an empty circuit
        num_columns = 0

    labels = [f"q{q}: " for q in range(n)] + [f"{l}: " for l in clbits]
    label_width = max(len(s) for s in labels)

    lines = []
    for r in range(num_rows):
        if r < 2 * n and r % 2 == 0:
            prefix = f"q{r // 2}: ".rjust(label_width)
        elif r >= cl_start and (r - cl_start) % 2 == 0:
            prefix = f"{clbits[(r - cl_start) // 2]}: ".rjust(label_width)
        else:
            prefix = " " * label_width
        fill = row_fill(r)
        parts = [prefix]
        for c, width in enumerate(widths):
            token, cat = cells.get((r, c), (None, None))
            if token is None:
                parts.append(fill * width)
            else:
                pad = width - len(token)
                left = pad // 2
                right = pad - left
                shown = f"{ANSI_COLORS[cat]}{token}{ANSI_RESET}" if (color and cat) else token
                parts.append(fill * left + shown + fill * right)
        lines.append("".join(parts))
    return RenderedCircuit(lines, style_map, num_columns)
