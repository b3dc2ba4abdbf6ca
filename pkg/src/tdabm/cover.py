"""Epsilon-ball cover of a point cloud by iterative landmark selection.

The construction loop: pick a landmark from the not-yet-covered points,
form its closed epsilon-ball over the whole cloud, mark the members
covered, repeat until nothing is uncovered. Two consequences hold by
construction and are re-checkable with ``assert_cover_valid``:

* completeness: every row id ends up in at least one ball, and
* packing: pairwise landmark distances exceed epsilon, because each
  landmark was uncovered when chosen.

Balls are closed (distance <= eps keeps the point), so boundary points
belong to the ball; a point at exactly eps is the one case where last-ulp
floating-point differences between platforms could flip membership, which
is documented as out of contract.

Landmark policies:

* ``sequential``: lowest uncovered row id (deterministic in row order), and
* ``random``: uniform over the uncovered set, drawn by indexing the
  ascending uncovered ids with a PCG64 generator seeded from the config.

The metric is Euclidean on the columns as stored. Standardize first
(``ingest.standardize``); the cover is distance-based, so columns must be
on comparable scales.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .errors import ValidationError
from .ingest import PointCloud
from .neighbors import GridIndex, brute_force_ball, distances_from

POLICIES = ("sequential", "random")

# Beyond a few axes the 3^K cell walk stops paying for itself.
_GRID_MAX_AXES = 4
_GRID_MIN_POINTS = 64


@dataclass(frozen=True)
class CoverConfig:
    """Radius, landmark policy, and the seed used by the random policy."""

    eps: float
    policy: str = "sequential"
    seed: int = 0

    def __post_init__(self):
        if not self.eps > 0:
            raise ValidationError(f"eps must be positive, got {self.eps}")
        if self.policy not in POLICIES:
            raise ValidationError(
                f"unknown policy {self.policy!r}, expected one of {POLICIES}"
            )


@dataclass(frozen=True, eq=False)
class Ball:
    """One cover ball: selection-order id, landmark row, member rows."""

    id: int
    landmark: int
    members: np.ndarray  # sorted ascending, always contains the landmark

    def __post_init__(self):
        members = np.array(self.members, dtype=np.intp)
        members.setflags(write=False)
        object.__setattr__(self, "members", members)

    @property
    def size(self) -> int:
        return self.members.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.id == other.id
            and self.landmark == other.landmark
            and np.array_equal(self.members, other.members)
        )


@dataclass(frozen=True, eq=False)
class Cover:
    """Ordered balls plus the radius that produced them."""

    balls: tuple[Ball, ...]
    eps: float
    n_points: int

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self) -> Iterator[Ball]:
        return iter(self.balls)

    def sizes(self) -> list[int]:
        return [b.size for b in self.balls]

    def landmarks(self) -> list[int]:
        return [b.landmark for b in self.balls]

    def point_memberships(self) -> list[list[int]]:
        """For each row id, the ascending ball ids containing it."""
        memberships: list[list[int]] = [[] for _ in range(self.n_points)]
        for ball in self.balls:
            for p in ball.members:
                memberships[p].append(ball.id)
        return memberships

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cover):
            return NotImplemented
        return (
            self.eps == other.eps
            and self.n_points == other.n_points
            and self.balls == other.balls
        )


def _make_query(
    values: np.ndarray, eps: float, search: str
) -> Callable[[int], np.ndarray]:
    n, k = values.shape
    if search == "auto":
        search = "grid" if (k <= _GRID_MAX_AXES and n >= _GRID_MIN_POINTS) else "brute"
    if search == "grid":
        index = GridIndex(values, eps)
        return index.query_ball
    if search == "brute":
        return lambda row: brute_force_ball(values, row, eps)
    raise ValidationError(f"unknown search strategy {search!r}")


def build_cover(
    cloud: PointCloud, config: CoverConfig, *, search: str = "auto"
) -> Cover:
    """Construct the epsilon-ball cover of ``cloud``.

    Pure function of (cloud, eps) under the sequential policy and of
    (cloud, eps, seed) under the random policy. ``search`` picks the
    neighbor-query path (``auto``, ``grid``, ``brute``); all paths return
    identical member sets.
    """
    values = cloud.values
    n = cloud.n_points
    query = _make_query(values, config.eps, search)
    rng = (
        np.random.default_rng(config.seed) if config.policy == "random" else None
    )
    covered = np.zeros(n, dtype=bool)
    balls: list[Ball] = []
    while not covered.all():
        if rng is None:
            landmark = int(np.argmax(~covered))
        else:
            uncovered = np.flatnonzero(~covered)
            landmark = int(uncovered[rng.integers(len(uncovered))])
        members = query(landmark)
        covered[members] = True
        balls.append(Ball(len(balls), landmark, members))
    return Cover(tuple(balls), config.eps, n)


def points_covered_by_landmarks(cover: Cover) -> dict[int, list[int]]:
    """Ball id -> ascending member row ids."""
    return {ball.id: ball.members.tolist() for ball in cover.balls}


@dataclass(frozen=True)
class CoverDiagnostics:
    """Outcome of a brute-force cover re-check."""

    ok: bool
    failure: str | None = None


def assert_cover_valid(cloud: PointCloud, cover: Cover) -> CoverDiagnostics:
    """Re-derive membership, completeness, and packing by brute force.

    Independent of the grid-accelerated construction path: every ball is
    rescanned against all N points. Returns the first counterexample found
    rather than raising.
    """
    if cover.n_points != cloud.n_points:
        return CoverDiagnostics(
            False,
            f"cover built over {cover.n_points} points, cloud has "
            f"{cloud.n_points}",
        )
    values = cloud.values
    for ball in cover.balls:
        expected = brute_force_ball(values, ball.landmark, cover.eps)
        if not np.array_equal(ball.members, expected):
            missing = np.setdiff1d(expected, ball.members)
            extra = np.setdiff1d(ball.members, expected)
            point = int(missing[0]) if missing.size else int(extra[0])
            kind = "missing" if missing.size else "extraneous"
            return CoverDiagnostics(
                False, f"ball {ball.id}: {kind} member point {point}"
            )
    covered = np.zeros(cloud.n_points, dtype=bool)
    for ball in cover.balls:
        covered[ball.members] = True
    if not covered.all():
        return CoverDiagnostics(
            False, f"point {int(np.argmax(~covered))} is uncovered"
        )
    for i, a in enumerate(cover.balls):
        dists = distances_from(values, a.landmark)
        for b in cover.balls[i + 1 :]:
            if dists[b.landmark] <= cover.eps:
                return CoverDiagnostics(
                    False,
                    f"landmarks of balls {a.id} and {b.id} are within eps "
                    f"of each other",
                )
    return CoverDiagnostics(True)
