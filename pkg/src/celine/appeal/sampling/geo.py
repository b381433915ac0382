"""
Great-circle helpers on a spherical earth.

All distances are haversine distances in metres on a sphere of radius
6,371,000 m. Functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(lon1: ArrayLike, lat1: ArrayLike, lon2: ArrayLike, lat2: ArrayLike):
    """Return distance between WGS84 coordinates in metres."""
    lon1, lat1, lon2, lat2 = (np.radians(np.asarray(v, dtype=float)) for v in (lon1, lat1, lon2, lat2))
    dphi = lat2 - lat1
    dlambda = lon2 - lon1
    a = np.sin(dphi / 2) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin(dlambda / 2) ** 2
    c = 2 * np.arctan2(np.sqrt(a), np.sqrt(np.clip(1 - a, 0.0, None)))
    d = EARTH_RADIUS_M * c
    return float(d) if np.ndim(d) == 0 else d


def interpolate_great_circle(
    lon1: float, lat1: float, lon2: float, lat2: float, fraction: float
) -> Tuple[float, float]:
    """Point at ``fraction`` of the great-circle arc from (lon1, lat1) to (lon2, lat2)."""
    if fraction <= 0.0:
        return lon1, lat1
    if fraction >= 1.0:
        return lon2, lat2

    phi1, lam1, phi2, lam2 = np.radians([lat1, lon1, lat2, lon2])
    delta = haversine_m(lon1, lat1, lon2, lat2) / EARTH_RADIUS_M
    if delta == 0.0:
        return lon1, lat1

    a = np.sin((1 - fraction) * delta) / np.sin(delta)
    b = np.sin(fraction * delta) / np.sin(delta)
    x = a * np.cos(phi1) * np.cos(lam1) + b * np.cos(phi2) * np.cos(lam2)
    y = a * np.cos(phi1) * np.sin(lam1) + b * np.cos(phi2) * np.sin(lam2)
    z = a * np.sin(phi1) + b * np.sin(phi2)
    lat = np.degrees(np.arctan2(z, np.hypot(x, y)))
    lon = np.degrees(np.arctan2(y, x))
    return float(lon), float(lat)


def unit_vectors(lons: ArrayLike, lats: ArrayLike) -> np.ndarray:
    """Cartesian coordinates on the unit sphere, shape (n, 3).

    Chord length between unit vectors is monotone in great-circle distance,
    so k-d tree queries on these preserve neighbour order.
    """
    lam = np.radians(np.asarray(lons, dtype=float))
    phi = np.radians(np.asarray(lats, dtype=float))
    return np.column_stack(
        (np.cos(phi) * np.cos(lam), np.cos(phi) * np.sin(lam), np.sin(phi))
    )


def chord_for_distance(distance_m: float) -> float:
    return 2.0 * np.sin(distance_m / (2.0 * EARTH_RADIUS_M))


def offset_m(lon: float, lat: float, east_m: float, north_m: float) -> Tuple[float, float]:
    """Shift a coordinate by small east/north offsets in metres (local tangent plane)."""
    dlat = np.degrees(north_m / EARTH_RADIUS_M)
    dlon = np.degrees(east_m / (EARTH_RADIUS_M * np.cos(np.radians(lat))))
    return float(lon + dlon), float(lat + dlat)
