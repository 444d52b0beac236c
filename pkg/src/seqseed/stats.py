"""Paired nonparametric comparison: Wilcoxon signed-rank and Hodges-Lehmann."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import List, Sequence

EXACT_LIMIT = 25


def hodges_lehmann(differences: Sequence[float]) -> float:
    """Median of all Walsh averages (d_i + d_j) / 2 for i <= j."""
    d = list(differences)
    if not d:
        raise ValueError("need at least one difference")
    walsh = [(d[i] + d[j]) / 2.0 for i in range(len(d)) for j in range(i, len(d))]
    return float(statistics.median(walsh))


@dataclass
class WilcoxonResult:
    w: float
    p: float
    n_effective: int
    method: str  # "exact", "normal", or "degenerate"


def _signed_midranks(values: List[float]) -> List[float]:
    """Midranks of |values|, returned signed with the sign of each value."""
    order = sorted(range(len(values)), key=lambda i: abs(values[i]))
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and abs(values[order[j + 1]]) == abs(values[order[i]]):
            j += 1
        mid = (i + j) / 2.0 + 1.0
        for t in range(i, j + 1):
            ranks[order[t]] = mid
        i = j + 1
    return ranks


def _exact_p(rank2: List[int], w2: int) -> float:
    """Two-sided exact p by DP over the 2^n equiprobable sign patterns.

    rank2 holds doubled ranks (midranks become integers); w2 = 2W.
    """
    total_sum = sum(rank2)
    counts = [0] * (total_sum + 1)
    counts[0] = 1
    for r in rank2:
        for w in range(total_sum - r, -1, -1):
            if counts[w]:
                counts[w + r] += counts[w]
    total = 1 << len(rank2)
    le = sum(counts[: w2 + 1])
    ge = sum(counts[w2:])
    return min(1.0, 2.0 * min(le, ge) / total)


def wilcoxon_signed_rank(differences: Sequence[float]) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on paired differences.

    Zero differences are dropped. Exact enumeration (via rank-sum DP, which
    reproduces the 2^n sign-pattern distribution) when the effective sample
    is small; tie-corrected normal approximation with continuity correction
    otherwise.
    """
    if len(differences) == 0:
        raise ValueError("need at least one difference")
    nz = [float(d) for d in differences if d != 0]
    if not nz:
        return WilcoxonResult(0.0, 1.0, 0, "degenerate")
    n = len(nz)
    ranks = _signed_midranks(nz)
    w = sum(r for r, d in zip(ranks, nz) if d > 0)
    if n <= EXACT_LIMIT:
        rank2 = [round(2 * r) for r in ranks]
        p = _exact_p(rank2, round(2 * w))
        return WilcoxonResult(w, max(p, 0.0), n, "exact")
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    # tie correction over groups of equal |d|
    groups = {}
    for d in nz:
        groups[abs(d)] = groups.get(abs(d), 0) + 1
    var -= sum(t ** 3 - t for t in groups.values()) / 48.0
    if var <= 0:
        return WilcoxonResult(w, 1.0, n, "normal")
    num = max(abs(w - mean) - 0.5, 0.0)
    z = num / math.sqrt(var)
    p = math.erfc(z / math.sqrt(2.0))
    # keep p strictly positive even when erfc underflows
    return WilcoxonResult(w, min(max(p, 1e-300), 1.0), n, "normal")
