"""Optimal one-to-one matching between truth and predicted extractions.

The rectangular assignment problem is solved with SciPy's modified
Jonker-Volgenant implementation on the cost matrix 1 - s, which
maximises total similarity and leaves |n - n̂| items unmatched. The
test suite checks the result against an independent brute-force
permutation oracle on instances up to 6x6.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .similarity import WeightProfile, field_similarity


@dataclass
class MatchingResult:
    pairs: list[tuple[int, int, float]] = field(default_factory=list)
    unmatched_truth: list[int] = field(default_factory=list)
    unmatched_pred: list[int] = field(default_factory=list)

    @property
    def total_similarity(self) -> float:
        return sum(s for _, _, s in self.pairs)


def solve_assignment(similarity: np.ndarray | list[list[float]]) -> MatchingResult:
    """Match rows (truth) to columns (predictions) maximising total
    similarity. Empty matrices yield empty matchings."""
    S = np.asarray(similarity, dtype=float)
    if S.size == 0:
        n_truth = S.shape[0] if S.ndim == 2 else 0
        n_pred = S.shape[1] if S.ndim == 2 else 0
        return MatchingResult(unmatched_truth=list(range(n_truth)),
                              unmatched_pred=list(range(n_pred)))
    rows, cols = linear_sum_assignment(1.0 - S)
    pairs = [(int(i), int(j), float(S[i, j])) for i, j in zip(rows, cols)]
    matched_rows = {i for i, _, _ in pairs}
    matched_cols = {j for _, j, _ in pairs}
    return MatchingResult(
        pairs=pairs,
        unmatched_truth=[i for i in range(S.shape[0]) if i not in matched_rows],
        unmatched_pred=[j for j in range(S.shape[1]) if j not in matched_cols])


def similarity_matrix(truth_list: list, pred_list: list,
                      profile: WeightProfile) -> np.ndarray:
    S = np.zeros((len(truth_list), len(pred_list)))
    for i, truth in enumerate(truth_list):
        for j, pred in enumerate(pred_list):
            S[i, j] = field_similarity(truth, pred, profile)
    return S


def optimal_matching(truth_list: list, pred_list: list,
                     profile: WeightProfile) -> MatchingResult:
    if not truth_list or not pred_list:
        return MatchingResult(unmatched_truth=list(range(len(truth_list))),
                              unmatched_pred=list(range(len(pred_list))))
    return solve_assignment(similarity_matrix(truth_list, pred_list, profile))
