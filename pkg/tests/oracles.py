"""Independent oracles used by the test suite.

The brute-force assignment oracle enumerates every injection of the
smaller side into the larger and maximises total similarity directly;
it never touches the production matching path.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np


def brute_force_best_total(similarity) -> float:
    S = np.asarray(similarity, dtype=float)
    if S.size == 0:
        return 0.0
    n, m = S.shape
    if n <= m:
        return max(sum(S[i, perm[i]] for i in range(n))
                   for perm in permutations(range(m), n))
    return max(sum(S[perm[j], j] for j in range(m))
               for perm in permutations(range(n), m))
