# graph_families.py

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx

from kuniform.tools.errors import FamilyParameterError
from kuniform.tools.graph_core import Graph

FAMILIES = ('matching', 'complete', 'cycle', 'bilayer', 'torus')

# family -> (hard lower bound, size from which the uniformity claim holds, claimed k)
_SIZE_BOUNDS = {
    'matching': (2, 2, 1),
    'complete': (2, 2, 1),
    'cycle': (3, 5, 2),
    'bilayer': (2, 3, 3),
    'torus': (3, 5, 4),
}


@dataclass(frozen=True)
class FamilySpec:
    """
    One of the named graph families and its parameters.

    Attributes:
        family (str): 'matching', 'complete', 'cycle', 'bilayer' or 'torus'.
        n (int): Vertex count for matching/complete/cycle, layer size for bilayer.
        rows (int): Torus rows (l).
        cols (int): Torus columns (m).
    """
    family: str
    n: Optional[int] = None
    rows: Optional[int] = None
    cols: Optional[int] = None

    def parameters(self) -> Dict[str, int]:
        if self.family == 'torus':
            return {'rows': self.rows, 'cols': self.cols}
        return {'size': self.n}


def _validate(spec: FamilySpec) -> None:
    if spec.family not in FAMILIES:
        raise FamilyParameterError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
    hard, claimed_from, k = _SIZE_BOUNDS[spec.family]
    names = ('rows', 'cols') if spec.family == 'torus' else ('size',)
    for name in names:
        value = spec.parameters()[name]
        if value is None:
            raise FamilyParameterError(f"{spec.family} needs --{name}")
        if value < hard:
            raise FamilyParameterError(
                f"{spec.family} requires {name} >= {hard}, got {value}; "
                f"its {k}-uniformity is only claimed for {name} >= {claimed_from}")


def _matching(n: int) -> nx.Graph:
    nx_graph = nx.empty_graph(n)
    nx_graph.add_edges_from((i, i + 1) for i in range(0, n - 1, 2))
    if n % 2:
        # leftover vertex joins the first pair
        nx_graph.add_edge(n - 1, 0)
    return nx_graph


def _bilayer(n: int) -> nx.Graph:
    nx_graph = nx.disjoint_union(nx.complete_graph(n), nx.complete_graph(n))
    nx_graph.add_edges_from((i, i + n) for i in range(n))
    return nx_graph


def generate_family(spec: FamilySpec) -> Graph:
    """
    Builds the graph of a named family.

    Input:
        - spec (FamilySpec): family name and parameters.

    Output:
        - Graph:
            * matching: pairs (0,1),(2,3),...; odd n adds an edge from the last vertex to 0.
            * complete: every pair connected.
            * cycle: edges (i, i+1 mod n).
            * bilayer: two complete layers 0..n-1 and n..2n-1 joined by (i, i+n).
            * torus: l×m periodic grid, vertex (r, c) numbered r·m + c, every degree 4.

    Notes:
        - Parameters below the family's hard bound raise FamilyParameterError; the
          message also states from which size the uniformity claim holds.
    """
    _validate(spec)
    if spec.family == 'matching':
        nx_graph = _matching(spec.n)
    elif spec.family == 'complete':
        nx_graph = nx.complete_graph(spec.n)
    elif spec.family == 'cycle':
        nx_graph = nx.cycle_graph(spec.n)
    elif spec.family == 'bilayer':
        nx_graph = _bilayer(spec.n)
    else:
        nx_graph = nx.grid_2d_graph(spec.rows, spec.cols, periodic=True)
    return Graph.from_networkx(nx_graph)


def claimed_uniformity(spec: FamilySpec) -> Optional[int]:
    """Uniformity the construction guarantees, or None below the claimed range."""
    _validate(spec)
    _, claimed_from, k = _SIZE_BOUNDS[spec.family]
    if all(v >= claimed_from for v in spec.parameters().values()):
        return k
    return None


def bilayer_typical_products(n: int) -> List[Tuple[str, Tuple[int, ...], int]]:
    """
    The seven representative 1-, 2- and 3-products of the bilayer family of
    layer size n, with their weights. Layer A is 0..n-1, vertex i is matched to i+n.

    Returns:
        list of (label, subset, expected weight)
    """
    if n < 3:
        raise FamilyParameterError(f"bilayer typical products need layer size >= 3, got {n}")
    return [
        ('1-product', (0,), n + 1),
        ('2-product same layer', (0, 1), 4),
        ('2-product matched across layers', (0, n), 2 * n),
        ('2-product unmatched across layers', (0, n + 1), 2 * n - 2),
        ('3-product same layer', (0, 1, 2), n + 3),
        ('3-product with partner of one', (0, 1, n), n + 1),
        ('3-product with partner of neither', (0, 1, n + 2), n + 1),
    ]


def torus_diagonal(rows: int, cols: int, k: int) -> Tuple[int, ...]:
    """
    k vertices along the main diagonal of a rows×cols torus, (i mod rows, i mod cols)
    for i < k, in row-major numbering. Their product has weight k + 4 while
    k < min(rows, cols) and collapses to k at k = rows = cols.
    """
    if not 1 <= k <= min(rows, cols):
        raise FamilyParameterError(f"diagonal length must be in 1..{min(rows, cols)}, got {k}")
    return tuple(sorted((i % rows) * cols + (i % cols) for i in range(k)))
