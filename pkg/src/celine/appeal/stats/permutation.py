# appeal/stats/permutation.py
"""Seeded permutation machinery shared by the spatial statistics.

Permutation ``p`` always draws from its own substream of ``seed``, so the
null distribution does not depend on how permutations are chunked or
ordered.
"""
from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np

from celine.appeal.stats.weights import SpatialWeights

# relative tolerance when comparing permuted and observed statistics
EXTREME_RTOL = 1e-10
PERMUTATION_CHUNK = 128
SITE_CHUNK = 64


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def permutation_matrix(n: int, permutations: int, seed: int, start: int = 0) -> np.ndarray:
    """Rows ``start .. start+permutations-1`` of the full-relabeling null, shape (P, n)."""
    return np.stack([substream(seed, p).permutation(n) for p in range(start, start + permutations)])


def permutation_chunks(n: int, permutations: int, seed: int) -> Iterator[np.ndarray]:
    for start in range(0, permutations, PERMUTATION_CHUNK):
        yield permutation_matrix(n, min(PERMUTATION_CHUNK, permutations - start), seed, start)


def conditional_draws(n: int, kmax: int, permutations: int, seed: int) -> np.ndarray:
    """Indices into the n-1 other sites, shape (P, kmax), shared by every site.

    For site ``i`` an index ``j`` maps to site ``j + (j >= i)``, which skips
    the site itself.
    """
    if kmax > n - 1:
        raise ValueError(f"cannot draw {kmax} neighbours from {n - 1} other sites")
    if kmax == 0:
        return np.zeros((permutations, 0), dtype=int)
    return np.stack(
        [substream(seed, p).choice(n - 1, size=kmax, replace=False) for p in range(permutations)]
    )


def padded_weights(w: SpatialWeights, exclude_self: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Per-site neighbour weights padded with zeros to the largest row, and self weights.

    Returns ``(pad, self_w)`` with shapes (n, kmax) and (n,).
    """
    self_w = np.zeros(w.n)
    rows = []
    for i, (nb, wt) in enumerate(zip(w.neighbors, w.weights)):
        if exclude_self:
            mask = nb != i
            self_w[i] = wt[~mask].sum()
            rows.append(wt[mask])
        else:
            rows.append(wt)
    kmax = max((len(r) for r in rows), default=0)
    pad = np.zeros((w.n, kmax))
    for i, r in enumerate(rows):
        pad[i, : len(r)] = r
    return pad, self_w


def conditional_lags(values: np.ndarray, pad: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """Spatially lagged values under conditional permutation, shape (n, P).

    Site i keeps its own value; its neighbour slots take the values of the
    randomly drawn other sites.
    """
    n = values.size
    out = np.empty((n, draws.shape[0]))
    for start in range(0, n, SITE_CHUNK):
        sites = np.arange(start, min(n, start + SITE_CHUNK))
        idx = draws[None, :, :] + (draws[None, :, :] >= sites[:, None, None])
        out[sites] = (values[idx] * pad[sites, None, :]).sum(axis=-1)
    return out


def pseudo_p(observed: np.ndarray | float, null: np.ndarray) -> np.ndarray | float:
    """(#{|null| >= |observed|} + 1) / (P + 1) along the last axis of ``null``."""
    obs = np.abs(np.asarray(observed, dtype=float))
    permutations = null.shape[-1]
    extreme = np.abs(null) >= (obs[..., None] * (1.0 - EXTREME_RTOL))
    p = (extreme.sum(axis=-1) + 1.0) / (permutations + 1.0)
    return float(p) if np.ndim(p) == 0 else p
