# appeal/stats/autocorrelation.py
from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np
from esda.moran import Moran, Moran_Local

from celine.appeal.core.errors import StatisticsError
from celine.appeal.scoring.models import ScoreSurface
from celine.appeal.stats.models import GlobalStat, SiteLabel
from celine.appeal.stats.permutation import (
    conditional_draws,
    conditional_lags,
    padded_weights,
    permutation_chunks,
    pseudo_p,
)
from celine.appeal.stats.weights import SpatialWeights

logger = logging.getLogger(__name__)


def prepare(surface: ScoreSurface, w: SpatialWeights) -> Tuple[np.ndarray, SpatialWeights]:
    """Align values to the weights and drop isolated sites from both."""
    values = w.align(surface)
    isolates = w.isolates
    if isolates:
        keep = [i for i in range(w.n) if i not in set(isolates)]
        w = w.without_isolates()
        values = values[keep]
    if values.size < 3:
        raise StatisticsError(f"surface {surface.label}: fewer than 3 connected sites")
    if np.ptp(values) == 0:
        raise StatisticsError(f"surface {surface.label}: zero variance")
    return values, w


def _moran(z: np.ndarray, W, s0: float) -> np.ndarray:
    """Moran's I for each column of ``z`` (n, P), deviations already removed."""
    n = z.shape[0]
    return (n / s0) * np.einsum("ij,ij->j", z, W @ z) / np.einsum("ij,ij->j", z, z)


def morans_i(
    surface: ScoreSurface, w: SpatialWeights, permutations: int = 999, seed: int = 0
) -> GlobalStat:
    """Global Moran's I with total-relabeling permutation inference."""
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    values, w = prepare(surface, w)
    n = values.size
    W = w.to_sparse()
    s0 = float(W.sum())
    z = values - values.mean()

    # weights are already in their final form, so esda must not re-transform them
    observed = float(Moran(values, w.to_pysal(), transformation="o", permutations=0).I)
    null = np.concatenate(
        [_moran(z[perm].T, W, s0) for perm in permutation_chunks(n, permutations, seed)]
    )
    sd = null.std()
    z_score = float((observed - null.mean()) / sd) if sd > 0 else 0.0

    result = GlobalStat(
        I=observed,
        expected_I=-1.0 / (n - 1),
        z=z_score,
        pseudo_p=pseudo_p(observed, null),
        permutations=permutations,
        seed=seed,
        n=n,
    )
    logger.debug("Moran's I %s: I=%.4f p=%.4f", surface.label, result.I, result.pseudo_p)
    return result


def _quadrant(zi: float, lag: float) -> str:
    if zi > 0 and lag > 0:
        return "HH"
    if zi < 0 and lag < 0:
        return "LL"
    if zi > 0 and lag < 0:
        return "HL"
    if zi < 0 and lag > 0:
        return "LH"
    return "NS"


def local_morans_i(
    surface: ScoreSurface,
    w: SpatialWeights,
    permutations: int = 999,
    seed: int = 0,
    alpha: float = 0.05,
) -> List[SiteLabel]:
    """Local Moran's I_i = z_i * lag_i / m2 with conditional permutation pseudo-p.

    Sites significant at ``alpha`` get their HH/LL/HL/LH quadrant, the rest NS.
    """
    if permutations < 1:
        raise ValueError("permutations must be >= 1")
    values, w = prepare(surface, w)
    n = values.size
    z = values - values.mean()
    m2 = float(z @ z) / n
    lag = w.to_sparse() @ z
    # esda scales by (n - 1) / n; rescale so the local values average to I
    lisa = Moran_Local(values, w.to_pysal(), transformation="o", permutations=0)
    local_i = np.asarray(lisa.Is, dtype=float) * n / (n - 1)

    pad, self_w = padded_weights(w)
    draws = conditional_draws(n, pad.shape[1], permutations, seed)
    null = z[:, None] * (conditional_lags(z, pad, draws) + (self_w * z)[:, None]) / m2
    p = pseudo_p(local_i, null)

    return [
        SiteLabel(
            point_id=pid,
            statistic=float(local_i[i]),
            pseudo_p=float(p[i]),
            label=_quadrant(z[i], lag[i]) if p[i] <= alpha else "NS",
        )
        for i, pid in enumerate(w.ids)
    ]
