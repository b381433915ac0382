# appeal/stats/models.py
from __future__ import annotations

import math
from typing import Any, Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

TVariant = Literal["pooled", "welch"]
WilcoxonMode = Literal["signed_rank", "rank_sum"]
NormalityRule = Literal["w_threshold", "p_value"]


class StatResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: float
    p_value: float = Field(ge=0.0, le=1.0)
    method: str
    n: Tuple[int, ...]

    @field_validator("p_value", mode="before")
    @classmethod
    def _clip_p(cls, v: float) -> float:
        # tail sums can overshoot 1 by rounding
        v = float(v)
        if math.isnan(v):
            raise ValueError("p_value is NaN")
        return min(1.0, max(0.0, v))

    def to_row(self, label: str) -> Dict[str, Any]:
        return {
            "comparison_label": label,
            "method": self.method,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "n": "/".join(str(k) for k in self.n),
        }


class SummaryStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    mean: float
    std: float
    min: float
    q25: float
    q50: float
    q75: float
    max: float

    def to_row(self, label: str) -> Dict[str, Any]:
        return {"label": label, **self.model_dump()}


class NormalityDecision(BaseModel):
    """Outcome of the normality gate for a pair of samples."""

    model_config = ConfigDict(frozen=True)

    rule: NormalityRule
    x: StatResult
    y: StatResult
    x_normal: bool
    y_normal: bool
    threshold: float

    @property
    def use_wilcoxon(self) -> bool:
        return not (self.x_normal and self.y_normal)


class Comparison(BaseModel):
    """Distribution comparison of one model surface against one participant surface."""

    model_config = ConfigDict(frozen=True)

    label: str
    t_test: StatResult
    wilcoxon: StatResult
    normality: NormalityDecision
    chosen: Literal["t_test", "wilcoxon"]
    pearson: Optional[StatResult] = None

    @property
    def chosen_result(self) -> StatResult:
        return self.wilcoxon if self.chosen == "wilcoxon" else self.t_test


class GlobalStat(BaseModel):
    model_config = ConfigDict(frozen=True)

    I: float
    expected_I: float
    z: float
    pseudo_p: float = Field(gt=0.0, le=1.0)
    permutations: int
    seed: int
    n: int

    def to_row(self, label: str) -> Dict[str, Any]:
        return {"label": label, **self.model_dump()}


LocalLabel = Literal["HH", "LL", "HL", "LH", "NS"]
HotspotLabel = Literal["hot", "cold", "ns"]


class SiteLabel(BaseModel):
    """Per-site local statistic with its significance and category."""

    model_config = ConfigDict(frozen=True)

    point_id: str
    statistic: float
    pseudo_p: Optional[float] = None
    z: Optional[float] = None
    label: str

    @property
    def p_or_z(self) -> float:
        return self.pseudo_p if self.pseudo_p is not None else float(self.z)


class DifferenceAnalysis(BaseModel):
    """Global and local clustering of one model-minus-participant surface."""

    label: str
    moran: GlobalStat
    local: list[SiteLabel]
    gstar: list[SiteLabel]
    dropped: list[str] = Field(default_factory=list)

    def counts(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {"local": {}, "gstar": {}}
        for key, sites in (("local", self.local), ("gstar", self.gstar)):
            for s in sites:
                out[key][s.label] = out[key].get(s.label, 0) + 1
        return out
