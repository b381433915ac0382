# appeal/stats/weights.py
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from libpysal.weights import W
from scipy import sparse

from celine.appeal.core.errors import StatisticsError
from celine.appeal.sampling.geo import haversine_m
from celine.appeal.scoring.models import ScoreSurface

logger = logging.getLogger(__name__)

Scheme = Literal["knn", "distance_band"]

# slack on the band edge for coordinates that round-trip through degrees
BAND_SLACK_M = 1e-6
_CHUNK = 512


@dataclass(frozen=True)
class SpatialWeights:
    """Neighbour lists and weights in ``ids`` order."""

    ids: Tuple[str, ...]
    neighbors: Tuple[np.ndarray, ...]
    weights: Tuple[np.ndarray, ...]
    scheme: Scheme
    k: Optional[int] = None
    band_m: Optional[float] = None
    standardized: bool = False
    include_self: bool = False

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def cardinalities(self) -> np.ndarray:
        return np.array([len(nb) for nb in self.neighbors], dtype=int)

    @property
    def isolates(self) -> List[int]:
        """Sites with no neighbour other than themselves."""
        return [i for i, nb in enumerate(self.neighbors) if not np.any(nb != i)]

    @property
    def s0(self) -> float:
        return float(sum(w.sum() for w in self.weights))

    def to_sparse(self) -> sparse.csr_matrix:
        rows = np.repeat(np.arange(self.n), self.cardinalities)
        cols = np.concatenate(self.neighbors) if self.n else np.array([], dtype=int)
        data = np.concatenate(self.weights) if self.n else np.array([], dtype=float)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def to_pysal(self) -> W:
        """The same neighbour sets as a libpysal ``W`` keyed by position."""
        neighbors = {i: nb.tolist() for i, nb in enumerate(self.neighbors)}
        weights = {i: wt.tolist() for i, wt in enumerate(self.weights)}
        return W(neighbors, weights, id_order=list(range(self.n)), silence_warnings=True)

    def row_standardized(self) -> "SpatialWeights":
        weights = tuple(w / w.sum() if w.size else w for w in self.weights)
        return replace(self, weights=weights, standardized=True)

    def binary(self) -> "SpatialWeights":
        return replace(
            self, weights=tuple(np.ones(len(nb)) for nb in self.neighbors), standardized=False
        )

    def with_self(self) -> "SpatialWeights":
        """Self-inclusive binary weights, as the Gi* statistic uses."""
        if self.include_self:
            return self.binary()
        neighbors = tuple(
            np.sort(np.append(nb, i)).astype(int) for i, nb in enumerate(self.neighbors)
        )
        return replace(
            self,
            neighbors=neighbors,
            weights=tuple(np.ones(len(nb)) for nb in neighbors),
            standardized=False,
            include_self=True,
        )

    def subset(self, keep: Sequence[int]) -> "SpatialWeights":
        """Restrict to the sites ``keep``; links to dropped sites are removed."""
        keep = list(keep)
        remap = np.full(self.n, -1, dtype=int)
        remap[keep] = np.arange(len(keep))
        neighbors, weights = [], []
        for i in keep:
            nb = remap[self.neighbors[i]]
            mask = nb >= 0
            neighbors.append(nb[mask])
            weights.append(self.weights[i][mask])
        out = replace(
            self,
            ids=tuple(self.ids[i] for i in keep),
            neighbors=tuple(neighbors),
            weights=tuple(weights),
        )
        if self.standardized:
            out = out.row_standardized()
        return out

    def without_isolates(self) -> "SpatialWeights":
        isolates = set(self.isolates)
        if not isolates:
            return self
        logger.warning(
            "Dropping %d isolated site(s) from the weights, e.g. %s",
            len(isolates),
            self.ids[min(isolates)],
        )
        return self.subset([i for i in range(self.n) if i not in isolates])

    def align(self, surface: ScoreSurface) -> np.ndarray:
        """Surface values in weights order; the two domains must match."""
        ids = set(self.ids)
        if ids != set(surface.values):
            extra = sorted(set(surface.values) - ids)
            missing = sorted(ids - set(surface.values))
            raise StatisticsError(
                f"surface {surface.label} and weights do not share a domain "
                f"({len(missing)} missing, {len(extra)} extra)"
            )
        return surface.array(list(self.ids))


Locations = Union[ScoreSurface, Mapping[str, Tuple[float, float]]]


def _coords(points: Locations) -> Tuple[List[str], np.ndarray]:
    locs = points.locations if isinstance(points, ScoreSurface) else points
    ids = sorted(locs)
    xy = np.array([locs[pid] for pid in ids], dtype=float).reshape(-1, 2)
    return ids, xy


def _distance_rows(xy: np.ndarray, start: int, stop: int) -> np.ndarray:
    return np.atleast_2d(
        haversine_m(xy[start:stop, 0, None], xy[start:stop, 1, None], xy[None, :, 0], xy[None, :, 1])
    )


def build_weights(
    points: Locations,
    scheme: Scheme = "knn",
    *,
    k: int = 8,
    band_m: Optional[float] = None,
    standardize: bool = True,
    include_self: bool = False,
) -> SpatialWeights:
    """Neighbour sets by great-circle distance over points sorted by id.

    ``knn`` takes the k nearest other sites; equal distances go to the lower
    id. ``distance_band`` takes every other site within ``band_m`` metres and
    may leave sites isolated.
    """
    ids, xy = _coords(points)
    n = len(ids)
    if n < 2:
        raise StatisticsError(f"spatial weights need at least 2 points, got {n}")
    if scheme == "knn":
        if not 1 <= k < n:
            raise StatisticsError(f"knn needs 1 <= k < n, got k={k} with n={n}")
    elif scheme == "distance_band":
        if band_m is None or band_m <= 0:
            raise StatisticsError("distance_band needs band_m > 0")
    else:
        raise ValueError(f"unknown weights scheme {scheme!r}")

    neighbors: List[np.ndarray] = []
    for start in range(0, n, _CHUNK):
        stop = min(n, start + _CHUNK)
        d = _distance_rows(xy, start, stop)
        rows = np.arange(stop - start)
        d[rows, rows + start] = np.inf
        if scheme == "knn":
            order = np.argsort(d, axis=1, kind="stable")[:, :k]
            neighbors.extend(np.sort(o).astype(int) for o in order)
        else:
            limit = band_m + BAND_SLACK_M
            neighbors.extend(np.flatnonzero(row <= limit) for row in d)

    if include_self:
        neighbors = [np.sort(np.append(nb, i)).astype(int) for i, nb in enumerate(neighbors)]

    w = SpatialWeights(
        ids=tuple(ids),
        neighbors=tuple(neighbors),
        weights=tuple(np.ones(len(nb)) for nb in neighbors),
        scheme=scheme,
        k=k if scheme == "knn" else None,
        band_m=band_m if scheme == "distance_band" else None,
        include_self=include_self,
    )
    if w.isolates:
        logger.warning("%d site(s) have no neighbour within %.1f m", len(w.isolates), band_m)
    if standardize:
        w = w.row_standardized()
    logger.debug("Built %s weights over %d sites (mean %.2f neighbours)", scheme, n, w.cardinalities.mean())
    return w
