# appeal/pipeline/report.py
from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import pandas as pd

from celine.appeal.core.config import Settings
from celine.appeal.core.utils import ensure_dir, write_json
from celine.appeal.pipeline.analyze import AnalysisResults, load_results
from celine.appeal.pipeline.common import layout_for
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest
from celine.appeal.sampling.io import point_features, write_geojson
from celine.appeal.stats.models import SiteLabel
from celine.appeal.stats.palettes import palette_metadata

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"
SITE_COLUMNS = ["point_id", "lon", "lat", "statistic", "p_or_z", "label"]


def _write_table(rows: Iterable[Dict[str, Any]], path: Path, columns: Optional[Sequence[str]] = None) -> Path:
    df = pd.DataFrame(list(rows), columns=list(columns) if columns else None)
    df.to_csv(path, index=False, lineterminator="\n", float_format=FLOAT_FORMAT)
    return path


def summary_rows(results: AnalysisResults) -> List[Dict[str, Any]]:
    return [s.stats.to_row(s.label) for s in results.summary]


def distribution_rows(results: AnalysisResults) -> List[Dict[str, Any]]:
    rows = []
    for item in results.comparisons:
        c = item.comparison
        tests = [("t_test", c.t_test), ("wilcoxon", c.wilcoxon)]
        if c.pearson is not None:
            tests.append(("pearson", c.pearson))
        for kind, res in tests:
            rows.append(
                {
                    **res.to_row(c.label),
                    "pathway": item.pathway,
                    "test": kind,
                    "chosen": kind == c.chosen,
                }
            )
    return rows


def normality_rows(results: AnalysisResults) -> List[Dict[str, Any]]:
    return [
        {
            "label": row.label,
            "W": row.result.statistic,
            "p_value": row.result.p_value,
            "n": row.result.n[0],
            "normal": row.normal,
        }
        for row in results.normality
    ]


def pearson_frame(results: AnalysisResults) -> pd.DataFrame:
    return pd.DataFrame(
        results.pearson_values, index=results.pearson_labels, columns=results.pearson_labels
    )


def site_rows(results: AnalysisResults, sites: Sequence[SiteLabel]) -> List[Dict[str, Any]]:
    rows = []
    for s in sites:
        lon, lat = results.locations[s.point_id]
        rows.append(
            {
                "point_id": s.point_id,
                "lon": lon,
                "lat": lat,
                "statistic": s.statistic,
                "p_or_z": s.p_or_z,
                "label": s.label,
            }
        )
    return rows


def _safe_label(label: str) -> str:
    return label.replace("/", "_").replace(" ", "_")


def max_model_participant_r(results: AnalysisResults) -> Optional[tuple[str, float]]:
    best: Optional[tuple[str, float]] = None
    for item in results.comparisons:
        r = item.comparison.pearson
        if r is None or math.isnan(r.statistic):
            continue
        if best is None or r.statistic > best[1]:
            best = (item.comparison.label, r.statistic)
    return best


def summary_text(results: AnalysisResults) -> str:
    lines = [f"seed: {results.seed}"]
    if results.sample_hash:
        lines.append(f"sample: {results.sample_hash[:12]}")
    if results.rater_means:
        means = results.rater_means
        lines.append(
            f"rater means: {min(means.values()):.3f} to {max(means.values()):.3f} ({len(means)} raters)"
        )
    best = max_model_participant_r(results)
    if best is not None:
        lines.append(f"max model-participant r: {best[1]:.3f} ({best[0]})")
    for g in results.moran_ratings:
        lines.append(f"moran {g.label}: I={g.stat.I:.4f} p={g.stat.pseudo_p:.3f}")
    for d in results.differences:
        counts = d.counts()
        gstar = ", ".join(f"{k}={v}" for k, v in sorted(counts["gstar"].items()))
        lines.append(
            f"differences {d.label}: I={d.moran.I:.4f} p={d.moran.pseudo_p:.3f} gi* {gstar}"
        )
    return "\n".join(lines) + "\n"


def write_report(results: AnalysisResults, report_dir: Path) -> List[Path]:
    """Render every table and map layer of one results bundle into ``report_dir``."""
    ensure_dir(report_dir)
    written = [
        _write_table(summary_rows(results), report_dir / "summary_stats.csv"),
        _write_table(distribution_rows(results), report_dir / "distribution_tests.csv"),
        _write_table(normality_rows(results), report_dir / "normality.csv"),
        _write_table(
            (g.stat.to_row(g.label) for g in results.moran_ratings),
            report_dir / "moran_ratings.csv",
        ),
        _write_table(
            ({**d.moran.to_row(d.label), "dropped": len(d.dropped)} for d in results.differences),
            report_dir / "moran_differences.csv",
        ),
        _write_table(
            (p.model_dump() for p in results.plot_pairs),
            report_dir / "plot_pairs.csv",
            ["comparison", "point_id", "x", "y"],
        ),
        _write_table(
            (r.result.to_row(r.label) for r in results.luminosity),
            report_dir / "luminosity.csv",
            ["comparison_label", "method", "statistic", "p_value", "n"],
        ),
    ]

    matrix_path = report_dir / "pearson_matrix.csv"
    pearson_frame(results).to_csv(matrix_path, lineterminator="\n", float_format=FLOAT_FORMAT)
    written.append(matrix_path)

    for d in results.differences:
        name = _safe_label(d.label)
        for kind, sites in (("gstar", d.gstar), ("lisa", d.local)):
            rows = site_rows(results, sites)
            csv_path = _write_table(rows, report_dir / f"{kind}_{name}.csv", SITE_COLUMNS)
            geo_path = report_dir / f"{kind}_{name}.geojson"
            collection = point_features(rows)
            collection["name"] = f"{kind} {d.label}"
            write_geojson(collection, geo_path)
            written.extend([csv_path, geo_path])

    summary_path = report_dir / "summary.txt"
    summary_path.write_text(summary_text(results), encoding="utf-8", newline="\n")
    palette_path = report_dir / "palette.json"
    write_json(palette_path, palette_metadata())
    written.extend([summary_path, palette_path])
    return written


def cmd_report(settings: Settings) -> List[Path]:
    """Build the report directory from ``results.json`` alone."""
    layout = layout_for(settings)
    results = load_results(settings)
    written = write_report(results, layout.report_dir)
    write_manifest(
        layout.report_dir,
        Manifest(
            stage="report",
            seed=results.seed,
            inputs=hash_files(results=layout.results_json),
            outputs={p.name: h for p in written for h in hash_files(p=p).values()},
            counts={"files": len(written)},
        ),
    )
    logger.info("Wrote %d report files to %s", len(written), layout.report_dir)
    return written
