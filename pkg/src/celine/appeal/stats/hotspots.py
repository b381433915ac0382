# appeal/stats/hotspots.py
from __future__ import annotations

import logging
from typing import List

import numpy as np
from scipy.stats import norm

from celine.appeal.core.errors import StatisticsError
from celine.appeal.scoring.models import ScoreSurface
from celine.appeal.stats.autocorrelation import prepare
from celine.appeal.stats.models import SiteLabel
from celine.appeal.stats.permutation import (
    conditional_draws,
    conditional_lags,
    padded_weights,
    pseudo_p,
)
from celine.appeal.stats.weights import SpatialWeights

logger = logging.getLogger(__name__)


def z_critical(alpha: float) -> float:
    """Two-sided critical value, 1.959964 at alpha 0.05."""
    return float(norm.ppf(1.0 - alpha / 2.0))


def gstar_z(values: np.ndarray, w: SpatialWeights) -> np.ndarray:
    # closed form instead of esda G_Local, whose ratio divides by sum(values)
    # and that sum is near zero on a centered difference surface
    n = values.size
    W = w.to_sparse()
    xbar = values.mean()
    s = values.std()
    wi = np.asarray(W.sum(axis=1)).ravel()
    wi2 = np.asarray(W.multiply(W).sum(axis=1)).ravel()
    num = W @ values - xbar * wi
    den = s * np.sqrt(np.clip(n * wi2 - wi**2, 0.0, None) / (n - 1))
    out = np.zeros(n)
    np.divide(num, den, out=out, where=den > 0)
    return out


def _label(z: float, significant: bool) -> str:
    if not significant:
        return "ns"
    return "hot" if z > 0 else "cold"


def getis_ord_gstar(
    surface: ScoreSurface,
    w_star: SpatialWeights,
    alpha: float = 0.05,
    *,
    permutations: int = 0,
    seed: int = 0,
) -> List[SiteLabel]:
    """Getis-Ord Gi* z-scores on self-inclusive weights.

    With ``permutations == 0`` sites are hot/cold when |z| reaches the
    two-sided critical value. Otherwise significance comes from a
    conditional permutation pseudo-p and the sign of z.
    """
    if not w_star.include_self:
        raise StatisticsError("Gi* needs self-inclusive weights")
    values, w_star = prepare(surface, w_star)
    z = gstar_z(values, w_star)

    if permutations <= 0:
        zc = z_critical(alpha)
        return [
            SiteLabel(
                point_id=pid,
                statistic=float(z[i]),
                z=float(z[i]),
                label=_label(z[i], abs(z[i]) >= zc),
            )
            for i, pid in enumerate(w_star.ids)
        ]

    xbar = values.mean()
    pad, self_w = padded_weights(w_star)
    wi = pad.sum(axis=1) + self_w
    observed = w_star.to_sparse() @ values - xbar * wi
    draws = conditional_draws(values.size, pad.shape[1], permutations, seed)
    null = conditional_lags(values, pad, draws) + (self_w * values - xbar * wi)[:, None]
    p = pseudo_p(observed, null)

    return [
        SiteLabel(
            point_id=pid,
            statistic=float(z[i]),
            z=float(z[i]),
            pseudo_p=float(p[i]),
            label=_label(z[i], p[i] <= alpha),
        )
        for i, pid in enumerate(w_star.ids)
    ]
