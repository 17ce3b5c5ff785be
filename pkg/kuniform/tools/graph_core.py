# graph_core.py

import io
import json
import sys
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import networkx as nx
import numpy as np

from kuniform.tools.errors import GraphFormatError
from kuniform.tools.pauli_algebra import PauliWord

FORMATS = ('json', 'edgelist')


class Graph:
    """
    Simple undirected graph stored as adjacency rows over GF(2).

    Row i is an integer whose bit j is set when vertex i and vertex j share an edge.
    Vertices are numbered 0..n-1. Instances are immutable; build them with
    `Graph.from_edges`, `Graph.from_networkx`, `load_graph` or the family generators.
    """
    __slots__ = ('_n', '_rows')

    def __init__(self, n: int, rows: Iterable[int]):
        n = int(n)
        rows = tuple(int(r) for r in rows)
        if n < 1:
            raise GraphFormatError(f"a graph needs at least one vertex, got n={n}")
        if len(rows) != n:
            raise GraphFormatError(f"expected {n} adjacency rows, got {len(rows)}")
        mask = (1 << n) - 1
        for i, row in enumerate(rows):
            if row & ~mask:
                raise GraphFormatError(f"vertex {i} has a neighbour outside 0..{n - 1}")
            if (row >> i) & 1:
                raise GraphFormatError(f"self-loop on vertex {i}")
            for j in range(n):
                if ((row >> j) & 1) != ((rows[j] >> i) & 1):
                    raise GraphFormatError(f"adjacency is not symmetric at ({i}, {j})")
        object.__setattr__(self, '_n', n)
        object.__setattr__(self, '_rows', rows)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> Tuple[int, ...]:
        return self._rows

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __reduce__(self):
        return (Graph, (self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={edges(self)})"

    @classmethod
    def from_edges(cls, n: int, edge_list: Iterable[Iterable[int]]) -> 'Graph':
        """
        Builds a graph from vertex pairs, rejecting self-loops, duplicates
        (in either orientation) and indices outside 0..n-1.
        """
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise GraphFormatError(f"vertex count must be a positive integer, got {n!r}")
        rows = [0] * n
        if isinstance(edge_list, (str, bytes)):
            raise GraphFormatError("edges must be a sequence of [i, j] pairs")
        for pair in edge_list:
            if not isinstance(pair, (list, tuple, np.ndarray)):
                raise GraphFormatError(f"edge {pair!r} is not a pair of integers")
            pair = list(pair)
            if len(pair) != 2 or not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in pair):
                raise GraphFormatError(f"edge {pair!r} is not a pair of integers")
            i, j = int(pair[0]), int(pair[1])
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"edge ({i}, {j}) has a vertex index outside 0..{n - 1}")
            if i == j:
                raise GraphFormatError(f"self-loop on vertex {i}")
            if (rows[i] >> j) & 1:
                raise GraphFormatError(f"duplicate edge ({min(i, j)}, {max(i, j)})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> 'Graph':
        """Nodes are relabelled 0..n-1 in sorted order."""
        nodes = sorted(nx_graph.nodes)
        index = {node: k for k, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), [(index[u], index[v]) for u, v in nx_graph.edges])

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self._n))
        nx_graph.add_edges_from(edges(self))
        return nx_graph

    def adjacency_matrix(self) -> np.ndarray:
        """n×n uint8 matrix with 1 where an edge exists."""
        return np.array([[(row >> j) & 1 for j in range(self._n)] for row in self._rows], dtype=np.uint8)


def _check_vertex(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise IndexError(f"vertex {i} outside 0..{g.n - 1}")


def neighborhood(g: Graph, i: int) -> int:
    """Bitset of the neighbours of vertex i (i itself is never included)."""
    _check_vertex(g, i)
    return g.adj[i]


def neighbors(g: Graph, i: int) -> List[int]:
    row = neighborhood(g, i)
    return [j for j in range(g.n) if (row >> j) & 1]


def degree(g: Graph, i: int) -> int:
    return neighborhood(g, i).bit_count()


def edges(g: Graph) -> List[Tuple[int, int]]:
    """Sorted edge list with i < j."""
    return [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if (g.adj[i] >> j) & 1]


def correlation_operator(g: Graph, i: int) -> PauliWord:
    """
    K_i: X on vertex i, Z on every neighbour, identity elsewhere.

    Args:
        g (Graph): The graph.
        i (int): Vertex index.

    Returns:
        PauliWord: Phase 0 word of weight degree(i) + 1.
    """
    return PauliWord(g.n, x_bits=1 << i, z_bits=neighborhood(g, i))


def correlation_operators(g: Graph) -> List[PauliWord]:
    return [correlation_operator(g, i) for i in range(g.n)]


def adjacency_display(g: Graph) -> str:
    """
    One line per vertex, one symbol per column: X on the diagonal,
    Z where an edge exists, I otherwise.

    Example:
        >>> print(adjacency_display(Graph.from_edges(2, [])))
        XI
        IX
    """
    lines = []
    for i in range(g.n):
        lines.append(''.join('X' if j == i else ('Z' if (g.adj[i] >> j) & 1 else 'I') for j in range(g.n)))
    return '\n'.join(lines)


# ----------------- Graph files
def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON graph: {e}") from e
    if not isinstance(data, dict) or 'n' not in data or 'edges' not in data:
        raise GraphFormatError('JSON graph must be an object with "n" and "edges"')
    if not isinstance(data['edges'], list):
        raise GraphFormatError('"edges" must be a list of [i, j] pairs')
    return Graph.from_edges(data['n'], data['edges'])


def _parse_edgelist(text: str) -> Graph:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphFormatError("empty edgelist")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise GraphFormatError(f"first edgelist line must be the vertex count, got {lines[0]!r}") from e
    pairs = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            pairs.append((int(tokens[0]), int(tokens[1])))
        except ValueError as e:
            raise GraphFormatError(f"line {lineno}: vertex indices must be integers, got {line!r}") from e
    return Graph.from_edges(n, pairs)


def load_graph(source: Union[bytes, str, io.IOBase], format: str = 'json') -> Graph:
    """
    Reads a graph from bytes, text or a readable stream.

    Input:
        - source: JSON `{"n": <int>, "edges": [[i, j], ...]}` or an edgelist
          (vertex count on the first line, then one "i j" pair per line).
        - format (str): 'json' or 'edgelist'.

    Output:
        - Graph

    Notes:
        - Self-loops, duplicate edges and vertex indices >= n raise GraphFormatError.
    """
    if format not in FORMATS:
        raise GraphFormatError(f"unknown graph format {format!r}; expected one of {FORMATS}")
    if hasattr(source, 'read'):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode('ascii')
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"graph files are ASCII: {e}") from e
    return _parse_json(source) if format == 'json' else _parse_edgelist(source)


def save_graph(g: Graph, format: str = 'json') -> bytes:
    """Serialises a graph; edges are written normalised (i < j) and sorted."""
    if format not in FORMATS:
        raise GraphFormatError(f"unknown graph format {format!r}; expected one of {FORMATS}")
    pairs = edges(g)
    if format == 'json':
        text = json.dumps({'n': g.n, 'edges': [list(e) for e in pairs]}) + '\n'
    else:
        text = ''.join([f"{g.n}\n"] + [f"{i} {j}\n" for i, j in pairs])
    return text.encode('ascii')


def sniff_format(text: str) -> str:
    return 'json' if text.lstrip().startswith('{') else 'edgelist'


def infer_format(path: str) -> str:
    return 'json' if Path(path).suffix.lower() == '.json' else 'edgelist'


def read_graph(path: str, format: str = None, stdin=None) -> Graph:
    """Reads a graph file; "-" reads stdin and sniffs the format from its content."""
    if path == '-':
        stream = stdin if stdin is not None else sys.stdin
        data = stream.read()
        if isinstance(data, bytes):
            data = data.decode('ascii', errors='replace')
        return load_graph(data, format or sniff_format(data))
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise GraphFormatError(f"cannot read graph file {path}: {e.strerror}") from e
    return load_graph(data, format or infer_format(path))


def write_graph(g: Graph, path: str, format: str = None, stdout=None) -> None:
    """Writes a graph file; "-" writes JSON (or `format`) to stdout."""
    if path == '-':
        stream = stdout if stdout is not None else sys.stdout
        stream.write(save_graph(g, format or 'json').decode('ascii'))
        return
    data = save_graph(g, format or infer_format(path))
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise GraphFormatError(f"cannot write graph file {path}: {e.strerror}") from e
