"""Fixed-radius neighbor search over the rows of a point matrix.

Two interchangeable query paths: a plain brute-force scan and a uniform
grid whose cell width equals the query radius, so every point within the
radius of a query row lies in the 3^K block of cells around it. Both paths
apply the identical closed-ball distance predicate row by row, so their
member sets agree bit for bit (the grid only restricts which rows are
examined, never how a row's distance is computed).
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np


def distances_from(values: np.ndarray, row: int) -> np.ndarray:
    """Euclidean distance of every row to ``values[row]``.

    Computed as sqrt of the in-order sum of squared coordinate differences;
    this exact formula is the package-wide membership predicate.
    """
    diff = values - values[row]
    return np.sqrt((diff * diff).sum(axis=1))


def brute_force_ball(values: np.ndarray, row: int, radius: float) -> np.ndarray:
    """Sorted row indices within the closed ball of ``radius`` around ``row``."""
    return np.flatnonzero(distances_from(values, row) <= radius)


class GridIndex:
    """Uniform grid with cell width equal to the fixed query radius."""

    def __init__(self, values: np.ndarray, radius: float):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self._values = values
        self._radius = radius
        self._origin = values.min(axis=0)
        keys = np.floor((values - self._origin) / radius).astype(np.int64)
        cells: dict[tuple, list[int]] = defaultdict(list)
        for i, key in enumerate(map(tuple, keys)):
            cells[key].append(i)
        self._cells = {k: np.array(v, dtype=np.intp) for k, v in cells.items()}
        self._keys = keys

    def query_ball(self, row: int) -> np.ndarray:
        """Sorted row indices within the closed radius ball around ``row``.

        Identical result to ``brute_force_ball`` on the same matrix.
        """
        center = self._keys[row]
        k = center.shape[0]
        candidates = []
        # 3^K neighboring cells; any in-radius point differs by at most one
        # cell per axis since the cell width equals the radius.
        for offset in np.ndindex(*(3,) * k):
            key = tuple(center + np.array(offset) - 1)
            bucket = self._cells.get(key)
            if bucket is not None:
                candidates.append(bucket)
        cand = np.concatenate(candidates)
        diff = self._values[cand] - self._values[row]
        dist = np.sqrt((diff * diff).sum(axis=1))
        return np.sort(cand[dist <= self._radius])
