"""Rank statistics: midrank assignment and the two-sided Mann-Whitney U test.

The U statistic reported is U for the first sample,

    U_a = R_a - n_a (n_a + 1) / 2,

with R_a the sum of the first sample's midranks in the pooled ordering.

Two p-value routes:

* exact, for small pooled sizes: the permutation distribution of U over all
  C(n_a + n_b, n_a) assignments of the pooled midranks to the first group,
  computed by a subset-sum dynamic program (ties are handled for free
  because midranks are permuted, not raw positions);
* tie-corrected normal approximation with a 0.5 continuity correction,
  otherwise.

Doubling midranks makes every rank sum an integer, so the exact route is
pure integer counting and agrees bit-for-bit with brute-force enumeration.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyInput, EmptySample

#: Smallest p-value ever reported, to keep downstream feature values nonzero.
P_FLOOR = 1e-300

#: Pooled-size cutoff at or below which the exact permutation p-value is used.
DEFAULT_EXACT_CUTOFF = 20


class UTestMethod(enum.Enum):
    EXACT_PERMUTATION = "exact_permutation"
    NORMAL_APPROX = "normal_approx"


@dataclass(frozen=True)
class UTestResult:
    u_statistic: float
    p_value: float
    method: UTestMethod
    n_a: int
    n_b: int


def rank_with_ties(values: Sequence[float]) -> list[float]:
    """Ranks 1..n with tied values sharing the mean of their rank span.

    The rank sum is always n(n+1)/2 regardless of ties.
    """
    n = len(values)
    if n == 0:
        raise EmptyInput("cannot rank an empty list")
    order = sorted(range(n), key=values.__getitem__)
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        midrank = (i + j + 2) / 2.0  # mean of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = midrank
        i = j + 1
    return ranks


def _tie_correction(pooled: Sequence[float]) -> float:
    """Sum of t^3 - t over tie groups of the pooled values."""
    counts: dict[float, int] = {}
    for v in pooled:
        counts[v] = counts.get(v, 0) + 1
    return float(sum(t**3 - t for t in counts.values() if t > 1))

def _subset_sum_counts(doubled: Sequence[int], size: int) -> np.ndarray:
    """Count, for every achievable sum s, the subsets of ``doubled`` with
    exactly ``size`` elements and element sum s.

    Returns an int64 vector c where c[s] is that count. Counts fit in
    int64 comfortably for pooled sizes up to the exact cutoff.
    """
    total = sum(doubled)
    dp = np.zeros((size + 1, total + 1), dtype=np.int64)
    dp[0, 0] = 1
    for r in doubled:
        # iterate k downward so each item is used at most once
        for k in range(size, 0, -1):
            dp[k, r:] += dp[k - 1, : total + 1 - r]
    return dp[size]


def _exact_two_sided_p(pooled_ranks: Sequence[float], n_a: int, n_b: int, u_a: float) -> float:
    """Two-sided permutation p: fraction of group assignments at least as
    far from the null mean n_a*n_b/2 as the observed U."""
    doubled = [int(round(2.0 * r)) for r in pooled_ranks]
    counts = _subset_sum_counts(doubled, n_a)
    # For a subset with doubled-rank sum s: 2U = s - n_a(n_a+1).
    two_u = np.arange(counts.shape[0], dtype=np.int64) - n_a * (n_a + 1)
    dev = np.abs(two_u - n_a * n_b)
    dev_obs = abs(int(round(2.0 * u_a)) - n_a * n_b)
    extreme = int(counts[dev >= dev_obs].sum())
    total = math.comb(n_a + n_b, n_a)
    return extreme / total


def _normal_two_sided_p(
    pooled: Sequence[float], n_a: int, n_b: int, u_a: float
) -> float:
    """Tie-corrected normal approximation with continuity correction 0.5."""
    n = n_a + n_b
    mean = n_a * n_b / 2.0
    tie_sum = _tie_correction(pooled)
    variance = (n_a * n_b / 12.0) * ((n + 1) - tie_sum / (n * (n - 1)))
    if variance <= 0.0:
        return 1.0  # every pooled value tied: U is degenerate at its mean
    z = (abs(u_a - mean) - 0.5) / math.sqrt(variance)
    if z < 0.0:
        z = 0.0
    return math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(
    a: Sequence[float],
    b: Sequence[float],
    exact_cutoff: int = DEFAULT_EXACT_CUTOFF,
) -> UTestResult:
    """Two-sided Mann-Whitney U test between samples ``a`` and ``b``.

    Exact permutation p when the pooled size is at most ``exact_cutoff``,
    tie-corrected normal approximation otherwise. The reported p-value is
    clamped into (0, 1] with floor ``P_FLOOR``.
    """
    n_a, n_b = len(a), len(b)
    if n_a == 0 or n_b == 0:
        raise EmptySample("both samples must be non-empty")
    pooled = list(a) + list(b)
    ranks = rank_with_ties(pooled)
    r_a = sum(ranks[:n_a])
    u_a = r_a - n_a * (n_a + 1) / 2.0
    if n_a + n_b <= exact_cutoff:
        p = _exact_two_sided_p(ranks, n_a, n_b, u_a)
        method = UTestMethod.EXACT_PERMUTATION
    else:
        p = _normal_two_sided_p(pooled, n_a, n_b, u_a)
        method = UTestMethod.NORMAL_APPROX
    p = min(max(p, P_FLOOR), 1.0)
    return UTestResult(u_statistic=u_a, p_value=p, method=method, n_a=n_a, n_b=n_b)
