# appeal/stats/classical.py
"""Summary statistics and two-sample tests on score surfaces."""
from __future__ import annotations

import logging
import math
from typing import Mapping, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from celine.appeal.core.errors import StatisticsError
from celine.appeal.scoring.models import ScoreSurface
from celine.appeal.stats.models import (
    Comparison,
    NormalityDecision,
    NormalityRule,
    StatResult,
    SummaryStats,
    TVariant,
    WilcoxonMode,
)

logger = logging.getLogger(__name__)

EXACT_MAX_N = 25
SHAPIRO_MIN_N = 3
SHAPIRO_MAX_N = 5000


def _as_array(x: Sequence[float], name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise StatisticsError(f"{name} contains non-finite values")
    return arr


def summary_stats(x: Sequence[float]) -> SummaryStats:
    arr = _as_array(x)
    if arr.size == 0:
        raise StatisticsError("summary statistics of an empty sample")
    q25, q50, q75 = np.quantile(arr, [0.25, 0.5, 0.75], method="linear")
    return SummaryStats(
        n=int(arr.size),
        mean=float(arr.mean()),
        std=float(arr.std(ddof=1)) if arr.size >= 2 else float("nan"),
        min=float(arr.min()),
        q25=float(q25),
        q50=float(q50),
        q75=float(q75),
        max=float(arr.max()),
    )


def pearson(x: Sequence[float], y: Sequence[float]) -> StatResult:
    a, b = _as_array(x, "x"), _as_array(y, "y")
    if a.size != b.size:
        raise StatisticsError(f"pearson needs equal lengths, got {a.size} and {b.size}")
    if a.size < 3:
        raise StatisticsError("pearson needs at least 3 pairs")
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise StatisticsError("pearson is undefined for constant input")
    res = stats.pearsonr(a, b)
    r = float(np.clip(res.statistic, -1.0, 1.0))
    return StatResult(statistic=r, p_value=float(res.pvalue), method="pearson", n=(int(a.size),))


def t_test_two_sample(
    x: Sequence[float], y: Sequence[float], variant: TVariant = "pooled"
) -> StatResult:
    a, b = _as_array(x, "x"), _as_array(y, "y")
    if a.size < 2 or b.size < 2:
        raise StatisticsError("t-test needs at least 2 observations per sample")
    method = "t_test_pooled" if variant == "pooled" else "t_test_welch"
    n = (int(a.size), int(b.size))

    if np.ptp(a) == 0 and np.ptp(b) == 0:
        if a[0] == b[0]:
            return StatResult(statistic=0.0, p_value=1.0, method=method, n=n)
        raise StatisticsError("t-test undefined: both samples constant with different means")

    res = stats.ttest_ind(a, b, equal_var=(variant == "pooled"))
    return StatResult(statistic=float(res.statistic), p_value=float(res.pvalue), method=method, n=n)


# -- exact null distributions over doubled mid-ranks (integers even with ties)


def _signed_rank_null(doubled: np.ndarray) -> np.ndarray:
    """Counts of 2*W+ over all 2^n sign assignments."""
    total = int(doubled.sum())
    dist = np.zeros(total + 1, dtype=float)
    dist[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(dist)
        shifted[r:] = dist[: total + 1 - r]
        dist = dist + shifted
    return dist


def _rank_sum_null(doubled: np.ndarray, k: int) -> np.ndarray:
    """Counts of 2*R over all size-k subsets, R the rank sum of the subset."""
    total = int(doubled.sum())
    dp = np.zeros((k + 1, total + 1), dtype=float)
    dp[0, 0] = 1.0
    for r in doubled:
        for j in range(k, 0, -1):
            dp[j, r:] += dp[j - 1, : total + 1 - r]
    return dp[k]


def _two_sided_exact(dist: np.ndarray, observed: int) -> float:
    prob = dist / dist.sum()
    lower = prob[: observed + 1].sum()
    upper = prob[observed:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def _has_ties(values: np.ndarray) -> bool:
    return np.unique(values).size != values.size


def _signed_rank(a: np.ndarray, b: np.ndarray) -> StatResult:
    if a.size != b.size:
        raise StatisticsError(
            f"signed-rank test needs paired samples, got {a.size} and {b.size}"
        )
    d = a - b
    d = d[d != 0]
    if d.size == 0:
        raise StatisticsError("degenerate pairing: all differences are zero")

    ranks = stats.rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    n = int(d.size)

    if n <= EXACT_MAX_N:
        if _has_ties(np.abs(d)):
            doubled = np.rint(2 * ranks).astype(int)
            p = _two_sided_exact(_signed_rank_null(doubled), int(round(2 * w_plus)))
        else:
            p = float(stats.wilcoxon(d, zero_method="wilcox", method="exact").pvalue)
        method = "wilcoxon_signed_rank_exact"
    else:
        p = float(
            stats.wilcoxon(d, zero_method="wilcox", correction=True, method="approx").pvalue
        )
        method = "wilcoxon_signed_rank"
    return StatResult(statistic=w_plus, p_value=p, method=method, n=(n,))


def _rank_sum(a: np.ndarray, b: np.ndarray) -> StatResult:
    if a.size < 1 or b.size < 1:
        raise StatisticsError("rank-sum test needs non-empty samples")
    pooled = np.concatenate([a, b])
    n = (int(a.size), int(b.size))

    if max(n) <= EXACT_MAX_N and _has_ties(pooled):
        ranks = stats.rankdata(pooled)
        r1 = float(ranks[: a.size].sum())
        u = r1 - a.size * (a.size + 1) / 2.0
        doubled = np.rint(2 * ranks).astype(int)
        p = _two_sided_exact(_rank_sum_null(doubled, a.size), int(round(2 * r1)))
        return StatResult(statistic=u, p_value=p, method="wilcoxon_rank_sum_exact", n=n)

    exact = max(n) <= EXACT_MAX_N
    res = stats.mannwhitneyu(
        a,
        b,
        alternative="two-sided",
        use_continuity=True,
        method="exact" if exact else "asymptotic",
    )
    method = "wilcoxon_rank_sum_exact" if exact else "wilcoxon_rank_sum"
    return StatResult(statistic=float(res.statistic), p_value=float(res.pvalue), method=method, n=n)


def wilcoxon(x: Sequence[float], y: Sequence[float], mode: WilcoxonMode = "signed_rank") -> StatResult:
    """Wilcoxon signed-rank (paired, statistic W+) or rank-sum (statistic U of x).

    Exact null distributions up to 25 observations, tie-corrected normal
    approximation with continuity correction above.
    """
    a, b = _as_array(x, "x"), _as_array(y, "y")
    if mode == "signed_rank":
        return _signed_rank(a, b)
    if mode == "rank_sum":
        return _rank_sum(a, b)
    raise ValueError(f"unknown wilcoxon mode {mode!r}")


def shapiro_wilk(x: Sequence[float]) -> StatResult:
    arr = _as_array(x)
    if not SHAPIRO_MIN_N <= arr.size <= SHAPIRO_MAX_N:
        raise StatisticsError(
            f"shapiro-wilk supports {SHAPIRO_MIN_N}..{SHAPIRO_MAX_N} observations, got {arr.size}"
        )
    if np.ptp(arr) == 0:
        raise StatisticsError("shapiro-wilk is undefined for zero-variance input")
    res = stats.shapiro(arr)
    w = float(min(1.0, res.statistic))
    return StatResult(statistic=w, p_value=float(res.pvalue), method="shapiro_wilk", n=(int(arr.size),))


def is_normal(res: StatResult, rule: NormalityRule, w_min: float, alpha: float) -> bool:
    if rule == "w_threshold":
        return res.statistic >= w_min
    return res.p_value > alpha


def normality_gate(
    x: Sequence[float],
    y: Sequence[float],
    rule: NormalityRule = "w_threshold",
    *,
    w_min: float = 0.80,
    alpha: float = 0.05,
) -> NormalityDecision:
    """Shapiro-Wilk on both samples; Wilcoxon is used if either looks non-normal.

    ``w_threshold`` flags W below ``w_min``. At thousands of observations the
    p-value rejects almost any real sample, so ``p_value`` (p <= alpha) is
    only sensible for small samples.
    """
    rx, ry = shapiro_wilk(x), shapiro_wilk(y)
    return NormalityDecision(
        rule=rule,
        x=rx,
        y=ry,
        x_normal=is_normal(rx, rule, w_min, alpha),
        y_normal=is_normal(ry, rule, w_min, alpha),
        threshold=w_min if rule == "w_threshold" else alpha,
    )


def pearson_matrix(surfaces: Mapping[str, ScoreSurface]) -> pd.DataFrame:
    """Pairwise Pearson r on the images shared by all surfaces."""
    if not surfaces:
        return pd.DataFrame()
    labels = list(surfaces)
    common = set.intersection(*(set(s.values) for s in surfaces.values()))
    ids = sorted(common)
    if len(ids) < 3:
        raise StatisticsError(f"only {len(ids)} images shared by all surfaces")
    data = np.vstack([surfaces[label].array(ids) for label in labels])
    matrix = pd.DataFrame(np.eye(len(labels)), index=labels, columns=labels)
    for i, li in enumerate(labels):
        for j in range(i + 1, len(labels)):
            try:
                r = pearson(data[i], data[j]).statistic
            except StatisticsError:
                logger.warning("Pearson r undefined for %s vs %s", li, labels[j])
                r = math.nan
            matrix.iloc[i, j] = matrix.iloc[j, i] = r
    return matrix


def compare_samples(
    label: str,
    x: Sequence[float],
    y: Sequence[float],
    *,
    aligned: bool,
    t_variant: TVariant = "pooled",
    wilcoxon_mode: WilcoxonMode | str = "auto",
    normality_rule: NormalityRule = "w_threshold",
    w_min: float = 0.80,
    alpha: float = 0.05,
) -> Comparison:
    """t-test, Wilcoxon and the normality gate for one pair of samples.

    ``aligned`` means x[i] and y[i] belong to the same image, which is what
    ``auto`` uses to pick signed-rank over rank-sum.
    """
    mode = wilcoxon_mode
    if mode == "auto":
        mode = "signed_rank" if aligned else "rank_sum"
    gate = normality_gate(x, y, normality_rule, w_min=w_min, alpha=alpha)
    return Comparison(
        label=label,
        t_test=t_test_two_sample(x, y, t_variant),
        wilcoxon=wilcoxon(x, y, mode),
        normality=gate,
        chosen="wilcoxon" if gate.use_wilcoxon else "t_test",
        pearson=pearson(x, y) if aligned else None,
    )
