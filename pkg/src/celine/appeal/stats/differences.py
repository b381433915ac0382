# appeal/stats/differences.py
from __future__ import annotations

import logging

from celine.appeal.scoring.models import ScoreSurface
from celine.appeal.stats.autocorrelation import local_morans_i, morans_i
from celine.appeal.stats.hotspots import getis_ord_gstar
from celine.appeal.stats.models import DifferenceAnalysis
from celine.appeal.stats.weights import SpatialWeights

logger = logging.getLogger(__name__)


def analyze_differences(
    diff: ScoreSurface,
    w: SpatialWeights,
    *,
    permutations: int = 999,
    seed: int = 0,
    alpha: float = 0.05,
    gstar_permutations: int = 0,
) -> DifferenceAnalysis:
    """Global Moran's I, local Moran's I and Gi* on a difference surface.

    ``w`` carries the Moran weights; Gi* uses the same neighbour sets with
    self added and binary weights. Hot means the model rates higher than
    participants and the excess is clustered.
    """
    dropped = [w.ids[i] for i in w.isolates]
    moran = morans_i(diff, w, permutations, seed)
    local = local_morans_i(diff, w, permutations, seed, alpha)
    gstar = getis_ord_gstar(
        diff, w.with_self(), alpha, permutations=gstar_permutations, seed=seed
    )
    result = DifferenceAnalysis(
        label=diff.label, moran=moran, local=local, gstar=gstar, dropped=dropped
    )
    logger.info(
        "Differences %s: I=%.3f (p=%.3f), Gi* %s",
        diff.label,
        moran.I,
        moran.pseudo_p,
        result.counts()["gstar"],
    )
    return result
