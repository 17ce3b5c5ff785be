# circuit_emitter.py

from dataclasses import dataclass
from typing import Tuple

from kuniform.tools.graph_core import Graph, edges

CIRCUIT_FORMATS = ('plain', 'qasm2')
QASM2_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: Tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    """
    Preparation circuit of a graph state, applied to |0…0⟩.

    Attributes:
        n (int): Qubit count.
        gates (tuple): One 'h' per qubit in ascending order, then one 'cz' per
            edge with i < j, lexicographically sorted.
    """
    n: int
    gates: Tuple[Gate, ...]

    def count(self, name: str) -> int:
        return sum(1 for gate in self.gates if gate.name == name)


def emit_circuit(g: Graph) -> Circuit:
    """Hadamard on every qubit followed by a controlled-Z for each edge."""
    hadamards = [Gate('h', (i,)) for i in range(g.n)]
    controlled_z = [Gate('cz', (i, j)) for i, j in edges(g)]
    return Circuit(g.n, tuple(hadamards + controlled_z))


def _plain_line(gate: Gate) -> str:
    return ' '.join([gate.name] + [str(q) for q in gate.qubits])


def _qasm2_line(gate: Gate) -> str:
    return f"{gate.name} " + ','.join(f"q[{q}]" for q in gate.qubits) + ';'


def render(c: Circuit, format: str = 'plain') -> str:
    """
    Text form of a circuit.

    Input:
        - c (Circuit): circuit to print.
        - format (str): 'plain' gives lines "h i" / "cz i j"; 'qasm2' gives an
          OpenQASM 2.0 program with a single register q[n] and no measurements.

    Output:
        - str: one gate per line, every line ending in a newline.

    Example:
        >>> render(emit_circuit(Graph.from_edges(2, [(0, 1)])))
        'h 0\\nh 1\\ncz 0 1\\n'
    """
    if format == 'plain':
        lines = [_plain_line(gate) for gate in c.gates]
        return ''.join(line + '\n' for line in lines)
    if format == 'qasm2':
        lines = [f"qreg q[{c.n}];"] + [_qasm2_line(gate) for gate in c.gates]
        return QASM2_HEADER + ''.join(line + '\n' for line in lines)
    raise ValueError(f"unknown circuit format {format!r}; expected one of {CIRCUIT_FORMATS}")
