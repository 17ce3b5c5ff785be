# uniformity_engine.py

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Dict, Iterable, List, Optional, Tuple

from tqdm import tqdm

from kuniform.tools.errors import BudgetExceededError
from kuniform.tools.graph_core import Graph, correlation_operator, degree
from kuniform.tools.pauli_algebra import PauliWord, product, to_string, weight

DEFAULT_BUDGET = 10 ** 8
# chunks handed to each worker per subset size
CHUNKS_PER_WORKER = 4
# searches smaller than this run in-process even when workers > 1
PARALLEL_MIN_SUBSETS = 20_000


@dataclass(frozen=True)
class SizeMinimum:
    """Minimum product weight over all subsets of one size and the first subset attaining it."""
    weight: int
    subset: Tuple[int, ...]
    pauli: PauliWord


@dataclass
class ProductWeightTable:
    n: int
    min_weight_by_size: Dict[int, SizeMinimum] = field(default_factory=dict)
    k_max_searched: int = 0
    subsets_enumerated: int = 0

    def weights(self) -> Dict[int, int]:
        return {j: m.weight for j, m in sorted(self.min_weight_by_size.items())}


@dataclass
class UniformityReport:
    """
    Outcome of a uniformity certification.

    Attributes:
        n (int): Qubit count.
        uniformity (int): Certified k; a lower bound when `truncated`.
        exact (bool): True when (uniformity + 1)-uniformity was refuted or the
            ⌊n/2⌋ ceiling was reached.
        ame (bool): uniformity == ⌊n/2⌋ >= 1.
        table (ProductWeightTable): Minimum weights per subset size.
        breaking_witness (SizeMinimum): Product of weight <= uniformity + 1 at a
            size <= uniformity + 1, None for AME or truncated reports.
        truncated (bool): The budget stopped the search.
        degree_bound (int): min(min degree, ⌊n/2⌋), an upper bound on uniformity.
        k_target (int): The k asked about, if any.
        uniform (bool): Verdict for k_target, None when no target was given.
    """
    n: int
    uniformity: int
    exact: bool
    ame: bool
    table: ProductWeightTable
    breaking_witness: Optional[SizeMinimum] = None
    truncated: bool = False
    degree_bound: int = 0
    k_target: Optional[int] = None
    uniform: Optional[bool] = None

    def to_dict(self) -> dict:
        witnesses = {
            str(j): {'subset': list(m.subset), 'pauli': to_string(m.pauli), 'weight': m.weight}
            for j, m in sorted(self.table.min_weight_by_size.items())
        }
        report = {
            'n': self.n,
            'uniformity': self.uniformity,
            'exact': self.exact,
            'ame': self.ame,
            'min_weights': {str(j): w for j, w in self.table.weights().items()},
            'witnesses': witnesses,
            'breaking_witness': None,
            'truncated': self.truncated,
            'degree_bound': self.degree_bound,
            'subsets_enumerated': self.table.subsets_enumerated,
        }
        if self.breaking_witness is not None:
            report['breaking_witness'] = {
                'subset': list(self.breaking_witness.subset),
                'pauli': to_string(self.breaking_witness.pauli),
                'weight': self.breaking_witness.weight,
            }
        if self.k_target is not None:
            report['k_target'] = self.k_target
            report['uniform'] = self.uniform
        return report


# ----------------- Subset products
def subset_product(g: Graph, s: Iterable[int]) -> PauliWord:
    """
    Product of the correlation operators of the vertices in s.

    The X part is the indicator of s and the Z part is the symmetric difference of
    the neighbourhoods of s; the phase comes from multiplying the generators in
    ascending vertex order (they commute, so the order does not matter).

    Raises:
        ValueError: If s is empty or repeats a vertex.
        IndexError: If a vertex is out of range.
    """
    vertices = sorted(s)
    if not vertices:
        raise ValueError("subset_product needs a non-empty vertex set")
    if len(set(vertices)) != len(vertices):
        raise ValueError(f"vertex set {vertices} repeats a vertex")
    return product(correlation_operator(g, i) for i in vertices)


def subset_count(n: int, k: int) -> int:
    """Number of subsets of sizes 1..k of an n-set."""
    return sum(comb(n, j) for j in range(1, k + 1))


def degree_bound(g: Graph) -> int:
    """A k-uniform graph state needs every vertex degree >= k."""
    return min(min(degree(g, i) for i in range(g.n)), g.n // 2)


def unrank_combination(n: int, j: int, rank: int) -> List[int]:
    """Subset of size j at position `rank` in the lexicographic order of C(n, j)."""
    if not 0 <= rank < comb(n, j):
        raise ValueError(f"rank {rank} outside 0..{comb(n, j) - 1}")
    combo = []
    x = 0
    for i in range(j):
        while True:
            below = comb(n - x - 1, j - i - 1)
            if rank < below:
                break
            rank -= below
            x += 1
        combo.append(x)
        x += 1
    return combo


def _next_combination(combo: List[int], n: int) -> bool:
    j = len(combo)
    i = j - 1
    while i >= 0 and combo[i] == n - j + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for t in range(i + 1, j):
        combo[t] = combo[t - 1] + 1
    return True


def _scan_chunk(rows: Tuple[int, ...], j: int, start: int, count: int) -> Tuple[int, int, Tuple[int, ...]]:
    """Minimum (weight, rank, subset) over `count` consecutive size-j subsets from rank `start`."""
    n = len(rows)
    combo = unrank_combination(n, j, start)
    best = (n + 1, -1, ())
    for offset in range(count):
        x_bits = 0
        z_bits = 0
        for v in combo:
            x_bits |= 1 << v
            z_bits ^= rows[v]
        w = (x_bits | z_bits).bit_count()
        if w < best[0]:
            best = (w, start + offset, tuple(combo))
            if w == j:
                # weight never drops below the subset size
                break
        if offset + 1 < count:
            _next_combination(combo, n)
    return best


def _chunks(total: int, workers: int) -> List[Tuple[int, int]]:
    size = max(1, ceil(total / (workers * CHUNKS_PER_WORKER)))
    return [(start, min(size, total - start)) for start in range(0, total, size)]


def _pool(workers: int, subsets: int, parallel_min_subsets: int) -> Optional[ProcessPoolExecutor]:
    if workers > 1 and subsets > 0 and subsets >= parallel_min_subsets:
        return ProcessPoolExecutor(max_workers=workers)
    return None


def _minimum_for_size(g: Graph, j: int, workers: int, executor=None) -> SizeMinimum:
    total = comb(g.n, j)
    chunks = _chunks(total, workers)
    if executor is None:
        results = [_scan_chunk(g.adj, j, start, count) for start, count in chunks]
    else:
        futures = [executor.submit(_scan_chunk, g.adj, j, start, count) for start, count in chunks]
        results = [f.result() for f in futures]
    w, _, subset = min(results)
    return SizeMinimum(w, subset, subset_product(g, subset))


def min_weight_products(g: Graph, k: int, budget: int = DEFAULT_BUDGET,
                        workers: int = 1, verbose: bool = False,
                        parallel_min_subsets: int = PARALLEL_MIN_SUBSETS) -> ProductWeightTable:
    """
    Minimum weight of the products of j correlation operators for every j = 1..k.

    Input:
        - g (Graph): the graph.
        - k (int): largest subset size, 1 <= k <= ⌊n/2⌋.
        - budget (int): cap on the number of subsets enumerated.
        - workers (int): processes scanning subset ranges; results do not depend on it.
        - parallel_min_subsets (int): below this many subsets no process pool is started.
        - verbose (bool): progress bar on stderr.

    Output:
        - ProductWeightTable: per size, the minimum weight and the first subset in
          lexicographic order attaining it.

    Notes:
        - Raises BudgetExceededError before enumerating anything when
          Σ_{j<=k} C(n, j) exceeds the budget.
    """
    half = g.n // 2
    if not 1 <= k <= half:
        raise ValueError(f"k must be in 1..{half} for a {g.n}-qubit graph, got {k}")
    required = subset_count(g.n, k)
    if required > budget:
        raise BudgetExceededError(required, budget)
    table = ProductWeightTable(g.n)
    _extend_table(g, table, range(1, k + 1), workers, verbose, parallel_min_subsets)
    return table


def _extend_table(g: Graph, table: ProductWeightTable, sizes: Iterable[int],
                  workers: int, verbose: bool, parallel_min_subsets: int = PARALLEL_MIN_SUBSETS) -> None:
    sizes = list(sizes)
    executor = _pool(workers, sum(comb(g.n, j) for j in sizes), parallel_min_subsets)
    try:
        for j in tqdm(sizes, desc="Enumerating subset sizes", disable=not verbose, file=sys.stderr):
            table.min_weight_by_size[j] = _minimum_for_size(g, j, workers, executor)
            table.k_max_searched = j
            table.subsets_enumerated += comb(g.n, j)
    finally:
        if executor is not None:
            executor.shutdown()


def _uniformity_from_table(table: ProductWeightTable) -> int:
    weights = table.weights()
    u = 0
    running = table.n + 1
    for k in range(1, table.k_max_searched + 1):
        running = min(running, weights[k])
        if running < k + 1:
            break
        u = k
    return u


def _pick_breaking_witness(table: ProductWeightTable, u: int) -> Optional[SizeMinimum]:
    sizes = table.min_weight_by_size
    if u + 1 in sizes and sizes[u + 1].weight <= u + 1:
        return sizes[u + 1]
    for j in range(1, u + 1):
        if sizes[j].weight == u + 1:
            return sizes[j]
    return None


def certify_uniformity(g: Graph, k_target: int = None, budget: int = DEFAULT_BUDGET,
                       workers: int = 1, verbose: bool = False,
                       parallel_min_subsets: int = PARALLEL_MIN_SUBSETS) -> UniformityReport:
    """
    Certifies k-uniformity from the minimum weights of generator products.

    A graph state is k-uniform exactly when no non-identity stabilizer element has
    weight <= k, and a product of j generators has weight >= j, so only subsets of
    size <= k need to be examined.

    Args:
        g (Graph): The graph.
        k_target (int, optional): Decide k_target-uniformity only. Without it the
            search climbs k until it fails or reaches ⌊n/2⌋.
        budget (int): Cap on enumerated subsets. When the next size would exceed
            it the report is returned truncated, carrying a lower bound.
        workers (int): Worker processes for enumeration.
        parallel_min_subsets (int): Searches over fewer subsets run in-process.
        verbose (bool): Progress output on stderr.

    Returns:
        UniformityReport
    """
    half = g.n // 2
    if k_target is not None and not 1 <= k_target <= half:
        raise ValueError(f"k must be in 1..{half} for a {g.n}-qubit graph, got {k_target}")
    table = ProductWeightTable(g.n)
    last = k_target if k_target is not None else half
    truncated = False

    executor = _pool(workers, min(subset_count(g.n, last), budget), parallel_min_subsets)
    try:
        for j in range(1, last + 1):
            if table.subsets_enumerated + comb(g.n, j) > budget:
                truncated = True
                if verbose:
                    print(f"Budget of {budget} subsets reached before size {j}; search truncated.",
                          file=sys.stderr)
                break
            if verbose:
                print(f"Enumerating {comb(g.n, j)} products of {j} correlation operators ...", file=sys.stderr)
            table.min_weight_by_size[j] = _minimum_for_size(g, j, workers, executor)
            table.k_max_searched = j
            table.subsets_enumerated += comb(g.n, j)
            if k_target is None and _uniformity_from_table(table) < j:
                break
    finally:
        if executor is not None:
            executor.shutdown()

    u = _uniformity_from_table(table)
    refuted = u < table.k_max_searched
    exact = refuted or u == half
    report = UniformityReport(
        n=g.n,
        uniformity=u,
        exact=exact,
        ame=u == half and u >= 1,
        table=table,
        breaking_witness=_pick_breaking_witness(table, u) if refuted else None,
        truncated=truncated and not refuted,
        degree_bound=degree_bound(g),
        k_target=k_target,
    )
    if k_target is not None:
        report.uniform = None if report.truncated else u >= k_target
    return report


def breaking_witness(report: UniformityReport) -> Optional[Tuple[Tuple[int, ...], PauliWord]]:
    """
    Subset of size <= uniformity + 1 whose product has weight <= uniformity + 1,
    which proves (uniformity + 1)-uniformity fails. None for AME states and for
    reports that could not refute the next level.
    """
    if report.breaking_witness is None:
        return None
    return report.breaking_witness.subset, report.breaking_witness.pauli
