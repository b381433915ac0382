# appeal/pipeline/analyze.py
from __future__ import annotations

import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from celine.appeal.core.config import Settings
from celine.appeal.core.errors import AppealError, StatisticsError
from celine.appeal.core.utils import read_json, write_json
from celine.appeal.imagery.io import read_luminosity_csv
from celine.appeal.panel.models import RaterGroup
from celine.appeal.pipeline.adjust import SurfaceSet, build_surfaces
from celine.appeal.pipeline.common import layout_for, require_output
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest
from celine.appeal.prompts.models import Persona, PromptModel
from celine.appeal.scoring.centering import difference_surface, pooled_centered_scores
from celine.appeal.scoring.models import ScoreSurface
from celine.appeal.stats.autocorrelation import morans_i
from celine.appeal.stats.classical import (
    compare_samples,
    is_normal,
    pearson,
    pearson_matrix,
    shapiro_wilk,
    summary_stats,
)
from celine.appeal.stats.differences import analyze_differences
from celine.appeal.stats.models import Comparison, DifferenceAnalysis, GlobalStat, StatResult, SummaryStats
from celine.appeal.stats.weights import SpatialWeights, build_weights

logger = logging.getLogger(__name__)

PERSONA_GROUP = {Persona.LR: RaterGroup.LOCAL_RESIDENT, Persona.NR: RaterGroup.NON_RESIDENT}


class LabeledSummary(BaseModel):
    label: str
    stats: SummaryStats


class LabeledComparison(BaseModel):
    pathway: str
    comparison: Comparison


class LabeledResult(BaseModel):
    label: str
    result: StatResult


class NormalityRow(BaseModel):
    label: str
    result: StatResult
    normal: bool


class LabeledGlobal(BaseModel):
    label: str
    stat: GlobalStat


class PlotPair(BaseModel):
    comparison: str
    point_id: str
    x: float
    y: float


class AnalysisResults(BaseModel):
    """Everything the report stage renders."""

    seed: int
    sample_hash: Optional[str] = None
    settings: Dict[str, Any] = Field(default_factory=dict)
    rater_means: Dict[str, float] = Field(default_factory=dict)
    summary: List[LabeledSummary] = Field(default_factory=list)
    normality: List[NormalityRow] = Field(default_factory=list)
    comparisons: List[LabeledComparison] = Field(default_factory=list)
    pearson_labels: List[str] = Field(default_factory=list)
    pearson_values: List[List[float]] = Field(default_factory=list)
    moran_ratings: List[LabeledGlobal] = Field(default_factory=list)
    differences: List[DifferenceAnalysis] = Field(default_factory=list)
    luminosity: List[LabeledResult] = Field(default_factory=list)
    plot_pairs: List[PlotPair] = Field(default_factory=list)
    locations: Dict[str, Tuple[float, float]] = Field(default_factory=dict)


@contextmanager
def _step(label: str) -> Iterator[None]:
    try:
        yield
    except StatisticsError as exc:
        raise StatisticsError(f"{label}: {exc}") from exc
    except AppealError as exc:
        raise StatisticsError(f"{label}: {exc}") from exc


class _WeightsCache:
    def __init__(self, settings: Settings):
        self.cfg = settings.stats
        self._cache: Dict[Tuple[str, ...], SpatialWeights] = {}

    def for_surface(self, surface: ScoreSurface) -> SpatialWeights:
        key = tuple(surface.point_ids)
        if key not in self._cache:
            self._cache[key] = build_weights(
                surface,
                self.cfg.weights_scheme,
                k=self.cfg.k,
                band_m=self.cfg.band_m,
                standardize=True,
            )
        return self._cache[key]


def _aligned(model: ScoreSurface, participant: ScoreSurface) -> Tuple[List[str], List[float], List[float]]:
    ids = sorted(set(model.values) & set(participant.values))
    excluded = len(set(model.values) ^ set(participant.values))
    if excluded:
        logger.info("%s vs %s: %d image(s) outside the shared domain", model.label, participant.label, excluded)
    return ids, [model.values[i] for i in ids], [participant.values[i] for i in ids]


def run_analysis(settings: Settings, surfaces: SurfaceSet) -> AnalysisResults:
    cfg = settings.stats
    seed = settings.seed
    weights = _WeightsCache(settings)
    results = AnalysisResults(
        seed=seed,
        sample_hash=surfaces.sample_hash,
        settings=settings.snapshot(),
        rater_means=surfaces.rater_means,
        locations=surfaces.locations,
    )
    all_surfaces = surfaces.all()

    for label, surface in all_surfaces.items():
        with _step(f"summary {label}"):
            results.summary.append(LabeledSummary(label=label, stats=summary_stats(surface.array())))
        with _step(f"normality {label}"):
            sw = shapiro_wilk(surface.array())
            results.normality.append(
                NormalityRow(
                    label=label,
                    result=sw,
                    normal=is_normal(sw, cfg.normality_rule, cfg.normality_w_min, cfg.alpha),
                )
            )
        with _step(f"moran {label}"):
            w = weights.for_surface(surface)
            results.moran_ratings.append(
                LabeledGlobal(label=label, stat=morans_i(surface, w, cfg.permutations, seed))
            )

    compare_kwargs = dict(
        t_variant=cfg.t_variant,
        wilcoxon_mode=cfg.wilcoxon_mode,
        normality_rule=cfg.normality_rule,
        w_min=cfg.normality_w_min,
        alpha=cfg.alpha,
    )
    for key, model in surfaces.models.items():
        for group, participant in surfaces.participants.items():
            label = f"{key} vs {participant.label}"
            ids, x, y = _aligned(model, participant)
            with _step(label):
                results.comparisons.append(
                    LabeledComparison(
                        pathway="per_image",
                        comparison=compare_samples(label, x, y, aligned=True, **compare_kwargs),
                    )
                )
                pooled = pooled_centered_scores(surfaces.centered_humans, group)
                results.comparisons.append(
                    LabeledComparison(
                        pathway="pooled",
                        comparison=compare_samples(
                            label, model.array(), pooled, aligned=False, **compare_kwargs
                        ),
                    )
                )
            results.plot_pairs.extend(
                PlotPair(comparison=label, point_id=pid, x=xi, y=yi)
                for pid, xi, yi in zip(ids, x, y)
            )

    if len(all_surfaces) >= 2:
        with _step("pearson matrix"):
            matrix = pearson_matrix(all_surfaces)
        results.pearson_labels = list(matrix.index)
        results.pearson_values = matrix.to_numpy().tolist()

    for key, model in surfaces.models.items():
        group = PERSONA_GROUP[PromptModel.from_key(key).persona]
        participant = surfaces.participants.get(group)
        if participant is None:
            continue
        with _step(f"differences {key}"):
            diff = difference_surface(model, participant)
            results.differences.append(
                analyze_differences(
                    diff,
                    weights.for_surface(diff),
                    permutations=cfg.permutations,
                    seed=seed,
                    alpha=cfg.alpha,
                    gstar_permutations=cfg.gstar_permutations,
                )
            )

    lum_path = layout_for(settings).luminosity_csv
    if lum_path.exists():
        lum = {r.point_id: r.L for r in read_luminosity_csv(lum_path)}
        for label, surface in all_surfaces.items():
            ids = sorted(set(lum) & set(surface.values))
            try:
                r = pearson([lum[i] for i in ids], [surface.values[i] for i in ids])
            except StatisticsError as exc:
                logger.warning("Luminosity correlation for %s undefined: %s", label, exc)
                continue
            results.luminosity.append(LabeledResult(label=label, result=r))

    return results


def cmd_analyze(settings: Settings) -> AnalysisResults:
    """Center, build surfaces and run every comparison into ``results.json``."""
    layout = layout_for(settings)
    surfaces = build_surfaces(settings, layout)
    results = run_analysis(settings, surfaces)

    write_json(layout.results_json, results.model_dump(mode="json"))
    write_manifest(
        layout.analysis_dir,
        Manifest(
            stage="analyze",
            seed=settings.seed,
            inputs=hash_files(
                points=layout.points_csv,
                human=layout.human_ratings_csv,
                model=layout.model_ratings_csv,
                luminosity=layout.luminosity_csv,
            ),
            outputs=hash_files(results=layout.results_json),
            counts={
                "surfaces": len(surfaces.all()),
                "comparisons": len(results.comparisons),
                "differences": len(results.differences),
            },
            config={"stats": settings.stats.model_dump(mode="json")},
        ),
    )
    logger.info(
        "Analysis complete: %d surfaces, %d comparisons, %d difference surfaces",
        len(surfaces.all()),
        len(results.comparisons),
        len(results.differences),
    )
    return results


def load_results(settings: Settings) -> AnalysisResults:
    layout = layout_for(settings)
    return AnalysisResults.model_validate(read_json(require_output(layout.results_json, "analyze")))
