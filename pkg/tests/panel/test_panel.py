# tests/panel/test_panel.py
from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from celine.appeal.core.errors import (
    ConfigError,
    DuplicateError,
    ParseError,
    RangeError,
    UnknownPointError,
    UnknownRaterError,
)
from celine.appeal.panel.assignment import assign_batches, read_assignment_csv, write_assignment_csv
from celine.appeal.panel.ingest import ingest_ratings, load_raters, write_ratings_csv
from celine.appeal.panel.models import Rater, RaterGroup, RaterKind, RatingRecord
from celine.appeal.panel.summary import panel_summary

IMAGES = [f"img{i}" for i in range(1, 9)]
RATERS = ["r1", "r2", "r3", "r4"]


def _csv(tmp_path, body: str, name="ratings.csv"):
    path = tmp_path / name
    path.write_text(body)
    return path


# ---------------------------------------------------------------------------
# assign_batches
# ---------------------------------------------------------------------------


class TestAssignBatches:
    def test_round_robin_example(self):
        a = assign_batches(IMAGES, RATERS, coverage=2, per_rater_min=4, seed=1)
        assert set(a.per_image_counts().values()) == {2}
        assert sorted(len(v) for v in a.lists.values()) == [4, 4, 4, 4]
        for ids in a.lists.values():
            assert len(ids) == len(set(ids))

    def test_saturation(self):
        a = assign_batches(IMAGES, RATERS, coverage=4, per_rater_min=0, seed=3)
        assert all(sorted(v) == sorted(IMAGES) for v in a.lists.values())

    def test_coverage_above_rater_count(self):
        with pytest.raises(ConfigError, match="coverage"):
            assign_batches(IMAGES, RATERS, coverage=5, per_rater_min=0, seed=0)

    def test_per_rater_min_above_image_count(self):
        with pytest.raises(ConfigError, match="per_rater_min"):
            assign_batches(IMAGES, RATERS, coverage=1, per_rater_min=9, seed=0)

    def test_top_up_reaches_minimum(self):
        a = assign_batches(IMAGES, RATERS, coverage=1, per_rater_min=5, seed=2)
        assert all(len(v) >= 5 for v in a.lists.values())
        assert min(a.per_image_counts().values()) >= 1

    def test_rater_order_does_not_matter(self):
        a = assign_batches(IMAGES, RATERS, 2, 4, seed=9)
        b = assign_batches(list(reversed(IMAGES)), list(reversed(RATERS)), 2, 4, seed=9)
        assert a == b

    def test_duplicate_rater_ids(self):
        with pytest.raises(ConfigError):
            assign_batches(IMAGES, ["r1", "r1"], 1, 0, seed=0)

    @settings(max_examples=40, deadline=None)
    @given(
        n_images=st.integers(1, 40),
        n_raters=st.integers(1, 8),
        data=st.data(),
    )
    def test_invariants(self, n_images, n_raters, data):
        coverage = data.draw(st.integers(1, n_raters))
        per_rater_min = data.draw(st.integers(0, n_images))
        images = [f"i{k:02d}" for k in range(n_images)]
        raters = [f"r{k}" for k in range(n_raters)]
        a = assign_batches(images, raters, coverage, per_rater_min, seed=data.draw(st.integers(0, 99)))
        counts = a.per_image_counts()
        assert set(counts) == set(images)
        assert min(counts.values()) >= coverage
        assert all(len(v) >= per_rater_min for v in a.lists.values())
        assert all(len(v) == len(set(v)) for v in a.lists.values())

    def test_csv(self, tmp_path):
        a = assign_batches(IMAGES, RATERS, 2, 4, seed=1)
        write_assignment_csv(a, tmp_path / "assignment.csv")
        assert read_assignment_csv(tmp_path / "assignment.csv") == a


# ---------------------------------------------------------------------------
# ingest_ratings
# ---------------------------------------------------------------------------


class TestIngestRatings:
    def test_accepts_valid_rows(self, tmp_path):
        path = _csv(tmp_path, "rater_id,point_id,score\nr1,img1,5\nr2,img1,1\n")
        result = ingest_ratings(path, IMAGES, [Rater(id="r1", group="lr"), Rater(id="r2", group="nr")])
        assert [r.score for r in result.records] == [5.0, 1.0]
        assert all(r.rater_kind is RaterKind.HUMAN for r in result.records)

    def test_range_error_names_line(self, tmp_path):
        path = _csv(tmp_path, "rater_id,point_id,score\nr1,img1,5\nr1,img2,8\n")
        with pytest.raises(RangeError) as excinfo:
            ingest_ratings(path, IMAGES)
        assert excinfo.value.line == 3
        assert "line 3" in str(excinfo.value)

    def test_duplicate_pair(self, tmp_path):
        path = _csv(tmp_path, "rater_id,point_id,score\nr1,img7,5\nr2,img7,4\nr1,img7,3\n")
        with pytest.raises(DuplicateError, match="first seen at line 2"):
            ingest_ratings(path, IMAGES)

    @pytest.mark.parametrize(
        "row, error",
        [
            ("r1,img1,4.5", ParseError),
            ("r1,img1,good", ParseError),
            ("r1,img1,0", RangeError),
            ("r1,nowhere,4", UnknownPointError),
            ("ghost,img1,4", UnknownRaterError),
        ],
    )
    def test_row_errors(self, tmp_path, row, error):
        path = _csv(tmp_path, f"rater_id,point_id,score\n{row}\n")
        with pytest.raises(error):
            ingest_ratings(path, IMAGES, [Rater(id="r1", group=RaterGroup.LOCAL_RESIDENT)])

    def test_lenient_skips_and_collects(self, tmp_path):
        path = _csv(tmp_path, "rater_id,point_id,score\nr1,img1,5\nr1,img2,9\nr1,img3,x\nr1,img4,2\n")
        result = ingest_ratings(path, IMAGES, strict=False)
        assert [r.point_id for r in result.records] == ["img1", "img4"]
        assert [e.line for e in result.errors] == [3, 4]
        assert [type(e) for e in result.errors] == [RangeError, ParseError]

    def test_model_rows(self, tmp_path):
        path = _csv(
            tmp_path,
            "rater_id,point_id,score,rater_kind,prompt,criteria\n"
            'model2_lr,img1,4.6,model,model2_lr,"[4, 5, 3, 6, 5]"\n'
            "model2_nr,img1,4.6,model,,\n",
        )
        with pytest.raises(ParseError, match="prompt"):
            ingest_ratings(path, IMAGES)
        result = ingest_ratings(path, IMAGES, strict=False)
        record = result.records[0]
        assert record.score == pytest.approx(4.6)
        assert record.prompt == "model2_lr"
        assert record.criteria == "[4, 5, 3, 6, 5]"

    def test_missing_columns(self, tmp_path):
        from celine.appeal.core.errors import DataValidationError

        with pytest.raises(DataValidationError):
            ingest_ratings(_csv(tmp_path, "rater,point_id\n"))

    def test_empty_file_names_the_path(self, tmp_path):
        from celine.appeal.core.errors import DataValidationError

        path = _csv(tmp_path, "")
        with pytest.raises(DataValidationError, match="ratings.csv: file is empty") as excinfo:
            ingest_ratings(path, IMAGES)
        assert excinfo.value.line == 1
        assert excinfo.value.exit_code == 2

    def test_write_then_ingest_preserves_records(self, tmp_path):
        records = [
            RatingRecord(rater_id="r2", point_id="img2", score=3),
            RatingRecord(rater_id="r1", point_id="img1", score=7),
            RatingRecord(
                rater_id="model3_nr",
                point_id="img1",
                score=31 / 7,
                rater_kind=RaterKind.MODEL,
                prompt="model3_nr",
            ),
        ]
        path = tmp_path / "out.csv"
        write_ratings_csv(records, path)
        back = ingest_ratings(path, IMAGES).records
        assert [(r.rater_id, r.point_id) for r in back] == [("model3_nr", "img1"), ("r1", "img1"), ("r2", "img2")]
        assert back[0].score == pytest.approx(31 / 7, abs=1e-6)


class TestRaters:
    def test_groups_and_aliases(self, tmp_path):
        path = _csv(tmp_path, "rater_id,group\nb,nr\na,local_resident\n", "raters.csv")
        assert load_raters(path) == [
            Rater(id="a", group=RaterGroup.LOCAL_RESIDENT),
            Rater(id="b", group=RaterGroup.NON_RESIDENT),
        ]

    def test_duplicate_rater(self, tmp_path):
        path = _csv(tmp_path, "rater_id,group\na,lr\na,nr\n", "raters.csv")
        with pytest.raises(DuplicateError):
            load_raters(path)

    def test_empty_roster(self, tmp_path):
        from celine.appeal.core.errors import DataValidationError

        with pytest.raises(DataValidationError, match="raters.csv: file is empty"):
            load_raters(_csv(tmp_path, "", "raters.csv"))

    def test_unknown_group(self, tmp_path):
        with pytest.raises(ParseError):
            load_raters(_csv(tmp_path, "rater_id,group\na,tourist\n", "raters.csv"))


# ---------------------------------------------------------------------------
# panel_summary
# ---------------------------------------------------------------------------


class TestPanelSummary:
    def test_fully_crossed(self):
        records = [
            RatingRecord(rater_id=r, point_id=p, score=4) for r in ("a", "b") for p in ("x", "y", "z")
        ]
        raters = [Rater(id="a", group="lr"), Rater(id="b", group="nr")]
        s = panel_summary(records, raters)
        assert s.total == 6
        assert s.per_image == {"x": 2, "y": 2, "z": 2}
        assert s.min_per_image == 2
        assert s.mean_per_image == 2
        assert s.mean_per_rater == 3
        assert s.per_group == {"local_resident": 3, "non_resident": 3}

    def test_empty(self):
        s = panel_summary([])
        assert (s.total, s.min_per_image, s.mean_per_image, s.mean_per_rater) == (0, 0, 0.0, 0.0)

    def test_counts_match_ingest(self, tmp_path):
        path = _csv(tmp_path, "rater_id,point_id,score\nr1,img1,5\nr1,img2,9\nr2,img1,2\n")
        result = ingest_ratings(path, IMAGES, strict=False)
        assert panel_summary(result.records).total == len(result.records) == 2
