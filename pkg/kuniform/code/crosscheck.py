# crosscheck.py

import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from kuniform.code.dense_oracle import (DENSE_CAP, verify_uniformity_cutrank,
                                        verify_uniformity_dense)
from kuniform.code.uniformity_engine import DEFAULT_BUDGET, UniformityReport, certify_uniformity
from kuniform.tools.graph_core import Graph

METHODS = ('stabilizer', 'dense', 'cutrank')


@dataclass
class CrosscheckReport:
    """
    Per-k verdicts of the three uniformity methods.

    Attributes:
        n (int): Qubit count.
        verdicts (dict): k -> {method: True | False | None}; None means the
            stabilizer search was truncated below k.
        skipped (list): Methods not applied, e.g. 'dense' above its cap.
        agree (bool): Every applied method gives the same verdict for every k.
        disagreements (list): The k values where two known verdicts differ.
    """
    n: int
    verdicts: Dict[int, Dict[str, Optional[bool]]] = field(default_factory=dict)
    skipped: List[str] = field(default_factory=list)
    agree: bool = True
    disagreements: List[int] = field(default_factory=list)
    stabilizer: Optional[UniformityReport] = None

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'methods': [m for m in METHODS if m not in self.skipped],
            'skipped': list(self.skipped),
            'verdicts': {str(k): v for k, v in sorted(self.verdicts.items())},
            'uniformity': self.stabilizer.uniformity if self.stabilizer is not None else None,
            'agree': self.agree,
            'disagreements': list(self.disagreements),
        }


def crosscheck(g: Graph, budget: int = DEFAULT_BUDGET, threads: int = 1,
               dense_cap: int = DENSE_CAP, verbose: bool = False) -> CrosscheckReport:
    """
    Decides k-uniformity for k = 1..⌊n/2⌋ with the stabilizer search, the dense
    RDM scan and the GF(2) cut-rank scan, and compares the answers.

    The stabilizer search is run once without a target; its verdict for k is
    k <= certified uniformity, or unknown above a truncated lower bound.
    """
    report = CrosscheckReport(g.n)
    report.stabilizer = certify_uniformity(g, budget=budget, workers=threads, verbose=verbose)
    u = report.stabilizer.uniformity
    run_dense = g.n <= dense_cap
    if not run_dense:
        report.skipped.append('dense')
        if verbose:
            print(f"Dense scan skipped: {g.n} qubits is above the cap of {dense_cap}.", file=sys.stderr)

    for k in range(1, g.n // 2 + 1):
        row = {'stabilizer': None if report.stabilizer.truncated and k > u else k <= u}
        if run_dense:
            row['dense'] = verify_uniformity_dense(g, k, cap=dense_cap, workers=threads).holds
        row['cutrank'] = verify_uniformity_cutrank(g, k).holds
        report.verdicts[k] = row
        known = {v for v in row.values() if v is not None}
        if len(known) > 1:
            report.disagreements.append(k)
    report.agree = not report.disagreements
    return report
