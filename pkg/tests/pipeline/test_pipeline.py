# tests/pipeline/test_pipeline.py
from __future__ import annotations

import json

import numpy as np
import pandas as pd
import pytest

from celine.appeal.core.errors import ConfigError, ManifestMismatch
from celine.appeal.pipeline import cmd_analyze, cmd_rate, load_results, read_manifest
from celine.appeal.pipeline.manifest import Manifest, check_same_sample
from celine.appeal.prompts.models import all_prompt_models
from tests.pipeline.conftest import RATERS, STREET_COUNT, city_settings, run_city

# 470 m streets at 20 m spacing: 23 full steps, a 10 m tail and both ends
N_POINTS = 25 * STREET_COUNT
PROMPT_KEYS = {m.key for m in all_prompt_models()}


# ---------------------------------------------------------------------------
# stage by stage
# ---------------------------------------------------------------------------


class TestStages:
    def test_sample(self, city):
        counts = city.manifests["sample"].counts
        assert counts["segments"] == STREET_COUNT
        assert counts["final"] == N_POINTS
        assert counts["landmark_augmented"] == 0
        assert city.layout.points_geojson.exists()

    def test_fetch(self, city):
        counts = city.manifests["fetch"].counts
        assert counts["panoramas"] == N_POINTS
        assert counts["failed"] == 0
        lum = pd.read_csv(city.layout.luminosity_csv)
        assert len(lum) == N_POINTS

    def test_rate(self, city):
        counts = city.manifests["rate"].counts
        assert counts["ratings"] == 6 * N_POINTS
        assert counts["failed"] == 0
        audit = city.layout.audit_log.read_text().splitlines()
        assert len(audit) == 6 * N_POINTS
        assert json.loads(audit[0])["params"]["kind"] == "mock"

    def test_panel(self, city):
        assign = city.manifests["panel-assign"].counts
        assert assign["raters"] == len(RATERS)
        assert assign["min_per_image"] >= 2
        ingest = city.manifests["panel-ingest"]
        assert len(ingest.records) == 4 * N_POINTS - 3
        assert ingest.errors == []

    def test_adjust(self, city):
        surfaces = city.manifests["adjust"].counts["surfaces"]
        assert len(surfaces) == 8
        assert set(surfaces.values()) == {N_POINTS}
        assert PROMPT_KEYS <= set(surfaces)

    def test_rerun_resumes(self, city):
        manifest = cmd_rate(city.settings)
        assert manifest.counts["new"] == 0
        assert manifest.counts["resumed"] == 6 * N_POINTS
        assert manifest.counts["ratings"] == 6 * N_POINTS


# ---------------------------------------------------------------------------
# analysis
# ---------------------------------------------------------------------------


class TestAnalysis:
    def test_shape(self, city):
        results = city.manifests["analyze"]
        assert len(results.moran_ratings) == 8
        assert len(results.differences) == 6
        assert len(results.comparisons) == 24
        assert {c.pathway for c in results.comparisons} == {"per_image", "pooled"}
        assert len(results.pearson_labels) == 8
        assert len(results.luminosity) == 8

    def test_per_image_pathway_is_paired(self, city):
        for c in city.manifests["analyze"].comparisons:
            if c.pathway == "per_image":
                assert c.comparison.wilcoxon.method.startswith("wilcoxon_signed_rank")
                assert c.comparison.pearson is not None
            else:
                assert c.comparison.wilcoxon.method.startswith("wilcoxon_rank_sum")
                assert c.comparison.pearson is None

    def test_differences_are_persona_matched(self, city):
        labels = [d.label for d in city.manifests["analyze"].differences]
        assert {label.split("-", 1)[0] for label in labels} == PROMPT_KEYS
        for label in labels:
            key, group = label.split("-", 1)
            persona = key.split("_")[1]
            assert group.startswith("local") if persona == "lr" else group.startswith("non")

    def test_greener_images_rate_higher(self, city):
        results = city.manifests["analyze"]
        pairs = [p for p in results.plot_pairs if p.comparison.startswith("model1_lr vs")]
        greens = np.array([city.levels[p.point_id] for p in pairs])
        models = np.array([p.x for p in pairs])
        assert np.corrcoef(greens, models)[0, 1] > 0.9

    def test_results_round_trip(self, city):
        loaded = load_results(city.settings)
        assert loaded == city.manifests["analyze"]
        assert loaded.settings["stats"]["permutations"] == 99

    def test_manifests_share_one_sample(self, city):
        layout = city.layout
        stages = [layout.sample_dir, layout.ratings_dir, layout.panel_dir, layout.analysis_dir]
        hashes = {read_manifest(d).sample_hash() for d in stages}
        assert len(hashes) == 1 and None not in hashes

    def test_mismatched_sample_is_refused(self):
        a = Manifest(stage="rate", seed=1, inputs={"points.csv": "a" * 64})
        b = Manifest(stage="panel-ingest", seed=1, inputs={"points.csv": "b" * 64})
        with pytest.raises(ManifestMismatch):
            check_same_sample(a, b)

    def test_analyze_needs_earlier_stages(self, tmp_path):
        with pytest.raises(ConfigError):
            cmd_analyze(city_settings(tmp_path, tmp_path / "empty"))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


class TestReport:
    def test_files(self, city):
        names = {p.name for p in city.manifests["report"]}
        for expected in (
            "summary_stats.csv",
            "distribution_tests.csv",
            "normality.csv",
            "moran_ratings.csv",
            "moran_differences.csv",
            "pearson_matrix.csv",
            "summary.txt",
            "palette.json",
        ):
            assert expected in names
        assert len([n for n in names if n.startswith("gstar_") and n.endswith(".geojson")]) == 6
        assert len([n for n in names if n.startswith("lisa_") and n.endswith(".csv")]) == 6

    def test_tables(self, city):
        report = city.layout.report_dir
        assert len(pd.read_csv(report / "moran_ratings.csv")) == 8
        assert len(pd.read_csv(report / "moran_differences.csv")) == 6
        dist = pd.read_csv(report / "distribution_tests.csv")
        assert set(dist["pathway"]) == {"per_image", "pooled"}
        gstar = next(report.glob("gstar_*.csv"))
        assert set(pd.read_csv(gstar)["label"]) <= {"hot", "cold", "ns"}

    def test_summary_mentions_seed(self, city):
        text = (city.layout.report_dir / "summary.txt").read_text()
        assert text.startswith("seed: 7\n")

    def test_second_run_is_byte_identical(self, city, city_root):
        again = run_city(city_root, city_root / "out2")
        first, second = city.layout.report_dir, again.layout.report_dir
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name
        assert again.layout.results_json.read_bytes() == city.layout.results_json.read_bytes()
