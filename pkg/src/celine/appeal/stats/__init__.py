from celine.appeal.stats.autocorrelation import local_morans_i, morans_i
from celine.appeal.stats.classical import (
    compare_samples,
    normality_gate,
    pearson,
    pearson_matrix,
    shapiro_wilk,
    summary_stats,
    t_test_two_sample,
    wilcoxon,
)
from celine.appeal.stats.differences import analyze_differences
from celine.appeal.stats.hotspots import getis_ord_gstar, z_critical
from celine.appeal.stats.models import (
    Comparison,
    DifferenceAnalysis,
    GlobalStat,
    NormalityDecision,
    SiteLabel,
    StatResult,
    SummaryStats,
)
from celine.appeal.stats.palettes import palette_metadata
from celine.appeal.stats.weights import SpatialWeights, build_weights

__all__ = [
    "local_morans_i",
    "morans_i",
    "compare_samples",
    "normality_gate",
    "pearson",
    "pearson_matrix",
    "shapiro_wilk",
    "summary_stats",
    "t_test_two_sample",
    "wilcoxon",
    "analyze_differences",
    "getis_ord_gstar",
    "z_critical",
    "Comparison",
    "DifferenceAnalysis",
    "GlobalStat",
    "NormalityDecision",
    "SiteLabel",
    "StatResult",
    "SummaryStats",
    "palette_metadata",
    "SpatialWeights",
    "build_weights",
]
