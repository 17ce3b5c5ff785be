# dense_oracle.py

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Tuple

import galois
import numpy as np
from tqdm import tqdm

from kuniform.code.circuit_emitter import Circuit
from kuniform.code.uniformity_engine import subset_product
from kuniform.tools.errors import CapExceededError
from kuniform.tools.graph_core import Graph, edges
from kuniform.tools.pauli_algebra import PauliWord, sign_exp, weight, xz_phase_exp

DENSE_CAP = 14
EXPANSION_CAP = 16
DEFAULT_DENSE_STEPS = 10 ** 8
NORM_TOL = 1e-12
RDM_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class DenseState:
    """
    Amplitude vector of an n-qubit state. Qubit 0 is the most significant bit of
    the basis index, so the letter order of a Pauli word matches np.kron order.
    """
    n: int
    amplitudes: np.ndarray


@dataclass(frozen=True)
class ReducedDensityMatrix:
    subset: Tuple[int, ...]
    entries: np.ndarray

    @property
    def k(self) -> int:
        return len(self.subset)

    def check(self, tol: float = PSD_TOL) -> None:
        """Raises AssertionError unless the matrix is Hermitian, unit trace and PSD."""
        assert np.allclose(self.entries, self.entries.conj().T, atol=tol), "RDM is not Hermitian"
        assert abs(np.trace(self.entries) - 1) <= tol, "RDM trace differs from 1"
        assert np.linalg.eigvalsh(self.entries).min() >= -tol, "RDM has a negative eigenvalue"


@dataclass(frozen=True)
class OracleVerdict:
    """
    Result of scanning every k-subset with one oracle.

    Attributes:
        method (str): 'dense' or 'cutrank'.
        k (int): Subset size scanned.
        holds (bool): Every k-subset is maximally mixed.
        failing_subset (tuple): First failing subset in lexicographic order.
        max_deviation (float): Largest entrywise deviation from I/2^k (dense only).
        failing_rank (int): Cut rank of the failing subset (cutrank only).
        subsets_checked (int): Number of subsets examined.
    """
    method: str
    k: int
    holds: bool
    failing_subset: Optional[Tuple[int, ...]] = None
    max_deviation: Optional[float] = None
    failing_rank: Optional[int] = None
    subsets_checked: int = 0

    def to_dict(self) -> dict:
        report = {'method': self.method, 'k': self.k, 'uniform': self.holds,
                  'subsets_checked': self.subsets_checked, 'failure': None}
        if self.failing_subset is not None:
            failure = {'subset': list(self.failing_subset)}
            if self.max_deviation is not None:
                failure['max_deviation'] = self.max_deviation
            if self.failing_rank is not None:
                failure['cut_rank'] = self.failing_rank
            report['failure'] = failure
        return report


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(f"{what} is limited to {cap} qubits, graph has {n}", n=n, cap=cap)


def _basis_bits(n: int) -> np.ndarray:
    """(2^n, n) array; column q holds the bit of qubit q in each basis index."""
    index = np.arange(2 ** n, dtype=np.int64)
    return ((index[:, None] >> (n - 1 - np.arange(n))) & 1).astype(np.int64)


def _index_mask(bits: int, n: int) -> int:
    """Turns a qubit bitset (bit q = qubit q) into a basis-index mask."""
    return sum(1 << (n - 1 - q) for q in range(n) if (bits >> q) & 1)


# ----------------- States
def build_state(g: Graph, cap: int = DENSE_CAP) -> DenseState:
    """
    Graph state amplitudes: 2^{-n/2}·(-1)^{q(b)}, q(b) the number of edges with both
    endpoints set in basis state b. The all-zeros amplitude is +2^{-n/2}.

    Raises:
        CapExceededError: If n is above `cap`.
    """
    _check_cap(g.n, cap, "dense state construction")
    bits = _basis_bits(g.n)
    q = np.zeros(2 ** g.n, dtype=np.int64)
    for i, j in edges(g):
        q += bits[:, i] & bits[:, j]
    amplitudes = np.where(q % 2 == 0, 1.0, -1.0).astype(np.complex128) / np.sqrt(2 ** g.n)
    return DenseState(g.n, amplitudes)


def simulate_circuit(circuit: Circuit, cap: int = DENSE_CAP) -> DenseState:
    """
    Runs a circuit of h/cz gates on |0…0⟩.

    Example:
        simulate_circuit(emit_circuit(g)) reproduces build_state(g).
    """
    _check_cap(circuit.n, cap, "circuit simulation")
    n = circuit.n
    hadamard = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    psi = np.zeros((2,) * n, dtype=np.complex128)
    psi[(0,) * n] = 1.0
    for gate in circuit.gates:
        if gate.name == 'h':
            q = gate.qubits[0]
            psi = np.moveaxis(np.tensordot(hadamard, psi, axes=([1], [q])), 0, q)
        elif gate.name == 'cz':
            a, b = gate.qubits
            index = [slice(None)] * n
            index[a] = 1
            index[b] = 1
            psi[tuple(index)] *= -1
        else:
            raise ValueError(f"unsupported gate {gate.name!r}")
    return DenseState(n, psi.reshape(-1))


def apply_pauli(p: PauliWord, psi: DenseState) -> np.ndarray:
    """p|psi⟩ computed sparsely: basis state b maps to i^xz_phase_exp·(-1)^{z·b}|b ⊕ x⟩."""
    if p.n != psi.n:
        raise ValueError(f"{p.n}-qubit word applied to a {psi.n}-qubit state")
    index = np.arange(2 ** psi.n, dtype=np.int64)
    x_mask = _index_mask(p.x_bits, p.n)
    z_mask = _index_mask(p.z_bits, p.n)
    signs = 1 - 2 * (np.bitwise_count(index & z_mask) % 2).astype(np.int64)
    out = np.zeros_like(psi.amplitudes)
    out[index ^ x_mask] = (1j ** xz_phase_exp(p)) * signs * psi.amplitudes
    return out


def expectation(p: PauliWord, psi: DenseState) -> complex:
    return complex(np.vdot(psi.amplitudes, apply_pauli(p, psi)))


def bloch_coefficient(p: PauliWord, psi: DenseState) -> float:
    """(1/2^n)·Tr(p·ρ) for the unsigned letters of p."""
    unsigned = PauliWord(p.n, p.x_bits, p.z_bits)
    return expectation(unsigned, psi).real / 2 ** psi.n


# ----------------- Reduced density matrices
def _check_subset(subset: Iterable[int], n: int, proper: bool = True) -> Tuple[int, ...]:
    subset = tuple(sorted(subset))
    if not subset:
        raise ValueError("subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise ValueError(f"subset {subset} repeats a vertex")
    if subset[0] < 0 or subset[-1] >= n:
        raise ValueError(f"subset {subset} has a vertex outside 0..{n - 1}")
    if proper and len(subset) >= n:
        raise ValueError(f"subset {subset} must leave at least one qubit to trace out")
    return subset


def reduced_density_matrix(psi: DenseState, subset: Iterable[int]) -> ReducedDensityMatrix:
    """
    Partial trace over the complement of `subset`.

    Input:
        - psi (DenseState): pure state.
        - subset: qubits to keep, 1 <= |subset| <= n-1; sorted ascending, the
          first kept qubit is the most significant index of the result.

    Output:
        - ReducedDensityMatrix: 2^k × 2^k matrix.
    """
    subset = _check_subset(subset, psi.n)
    rest = [q for q in range(psi.n) if q not in subset]
    tensor = psi.amplitudes.reshape((2,) * psi.n).transpose(list(subset) + rest)
    m = tensor.reshape(2 ** len(subset), 2 ** len(rest))
    return ReducedDensityMatrix(subset, m @ m.conj().T)


def mixed_deviation(rho: ReducedDensityMatrix) -> float:
    dim = 2 ** rho.k
    return float(np.abs(rho.entries - np.eye(dim) / dim).max())


def is_maximally_mixed(rho: ReducedDensityMatrix, tol: float = RDM_TOL) -> bool:
    """True iff every entry is within tol of I/2^k."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return mixed_deviation(rho) <= tol


def von_neumann_entropy(rho: ReducedDensityMatrix) -> float:
    """-Tr(ρ ln ρ) in nats."""
    eigenvalues = np.linalg.eigvalsh(rho.entries)
    eigenvalues = eigenvalues[eigenvalues > PSD_TOL]
    return float(-(eigenvalues * np.log(eigenvalues)).sum())


def _scan(subsets: List[Tuple[int, ...]], test, workers: int, verbose: bool, desc: str):
    """Applies `test` to each subset; returns the first failure in input order."""
    if workers > 1 and len(subsets) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = executor.map(test, subsets)
            for subset, result in tqdm(zip(subsets, results), total=len(subsets), desc=desc,
                                       disable=not verbose, file=sys.stderr):
                if result is not None:
                    return subset, result
        return None
    for subset in tqdm(subsets, desc=desc, disable=not verbose, file=sys.stderr):
        result = test(subset)
        if result is not None:
            return subset, result
    return None


def verify_uniformity_dense(g: Graph, k: int, cap: int = DENSE_CAP, tol: float = RDM_TOL,
                            max_steps: int = DEFAULT_DENSE_STEPS, workers: int = 1,
                            verbose: bool = False) -> OracleVerdict:
    """
    Checks k-uniformity from its definition: the reduced density matrix of every
    k-subset is compared entrywise with I/2^k. Only size k is scanned since a
    k-uniform state is j-uniform for every j < k.

    Raises:
        CapExceededError: n above `cap`, or C(n, k)·2^n above `max_steps`.
    """
    half = g.n // 2
    if not 1 <= k <= half:
        raise ValueError(f"k must be in 1..{half} for a {g.n}-qubit graph, got {k}")
    _check_cap(g.n, cap, "dense verification")
    steps = comb(g.n, k) * 2 ** g.n
    if steps > max_steps:
        raise CapExceededError(f"dense scan needs {steps} steps, above the limit of {max_steps}",
                               n=g.n, cap=cap)
    psi = build_state(g, cap=cap)

    def test(subset):
        deviation = mixed_deviation(reduced_density_matrix(psi, subset))
        return deviation if deviation > tol else None

    subsets = list(combinations(range(g.n), k))
    failure = _scan(subsets, test, workers, verbose, f"Scanning {k}-qubit RDMs")
    if failure is None:
        return OracleVerdict('dense', k, True, subsets_checked=len(subsets))
    subset, deviation = failure
    return OracleVerdict('dense', k, False, failing_subset=subset, max_deviation=deviation,
                         subsets_checked=subsets.index(subset) + 1)


# ----------------- GF(2) cut rank
def cut_rank_entropy(g: Graph, subset: Iterable[int]) -> int:
    """
    GF(2) rank of the adjacency block between `subset` and its complement; equals
    the entanglement entropy of the subset in bits (entropy / ln 2).
    """
    subset = _check_subset(subset, g.n)
    rest = [q for q in range(g.n) if q not in subset]
    block = g.adjacency_matrix()[np.ix_(subset, rest)]
    return int(np.linalg.matrix_rank(galois.GF2(block)))


def verify_uniformity_cutrank(g: Graph, k: int, verbose: bool = False) -> OracleVerdict:
    """Every k-subset has cut rank k."""
    half = g.n // 2
    if not 1 <= k <= half:
        raise ValueError(f"k must be in 1..{half} for a {g.n}-qubit graph, got {k}")

    def test(subset):
        rank = cut_rank_entropy(g, subset)
        return rank if rank != k else None

    subsets = list(combinations(range(g.n), k))
    failure = _scan(subsets, test, 1, verbose, f"Cut ranks of {k}-subsets")
    if failure is None:
        return OracleVerdict('cutrank', k, True, subsets_checked=len(subsets))
    subset, rank = failure
    return OracleVerdict('cutrank', k, False, failing_subset=subset, failing_rank=rank,
                         subsets_checked=subsets.index(subset) + 1)


def dense_uniformity(g: Graph, cap: int = DENSE_CAP, **kwargs) -> int:
    """Largest k <= ⌊n/2⌋ passing the dense scan."""
    u = 0
    for k in range(1, g.n // 2 + 1):
        if not verify_uniformity_dense(g, k, cap=cap, **kwargs).holds:
            break
        u = k
    return u


def cutrank_uniformity(g: Graph) -> int:
    u = 0
    for k in range(1, g.n // 2 + 1):
        if not verify_uniformity_cutrank(g, k).holds:
            break
        u = k
    return u


# ----------------- Bloch expansion
def stabilizer_subsets(n: int) -> Iterable[Tuple[int, ...]]:
    """All vertex subsets in size-major lexicographic order, empty set first."""
    for j in range(n + 1):
        yield from combinations(range(n), j)


def bloch_expansion(g: Graph, cap: int = EXPANSION_CAP) -> List[Tuple[Tuple[int, ...], PauliWord]]:
    """
    All 2^n signed stabilizer elements as (subset, word) pairs; the density matrix
    is their sum divided by 2^n. The empty subset gives the identity.
    """
    _check_cap(g.n, cap, "Bloch expansion")
    terms = []
    for subset in stabilizer_subsets(g.n):
        word = subset_product(g, subset) if subset else PauliWord(g.n)
        terms.append((subset, word))
    return terms


def verify_bloch_expansion(g: Graph, cap: int = DENSE_CAP) -> bool:
    """Every listed term has Bloch coefficient ±1/2^n with the listed sign."""
    psi = build_state(g, cap=cap)
    scale = 2 ** g.n
    for _, word in bloch_expansion(g):
        expected = (1 if sign_exp(word) == 0 else -1) / scale
        if abs(bloch_coefficient(word, psi) - expected) > NORM_TOL:
            return False
    return True


def weight_distribution(g: Graph, cap: int = EXPANSION_CAP) -> Dict[int, int]:
    """Number of stabilizer elements of each weight (sizes of the m-particle sectors)."""
    counts = {w: 0 for w in range(g.n + 1)}
    for _, word in bloch_expansion(g, cap=cap):
        counts[weight(word)] += 1
    return counts
