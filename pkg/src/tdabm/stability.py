"""Reordering-consistency experiments over repeated row permutations.

Each repetition shuffles the rows with its own seed, rebuilds a sequential
cover on the shuffled cloud, and maps the result back to original row ids
before evaluating claims. Shuffling plus sequential selection is the
randomization mechanism: it matches how published ball mapper studies
re-run the construction, and it exercises the same degrees of freedom as
random landmark selection.

Claims are named predicates over ``(Cover, BallGraph)``. Because member
ids are mapped back to the original row order before claims run, a claim
closure may safely capture per-row arrays from the original cloud.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .cover import Ball, Cover, CoverConfig, build_cover
from .errors import ValidationError
from .graph import BallGraph, build_graph
from .ingest import ColoringVariable, PointCloud, permute

ClaimPredicate = Callable[[Cover, BallGraph], bool]


@dataclass(frozen=True)
class Claim:
    """A named boolean predicate evaluated per repetition."""

    name: str
    predicate: ClaimPredicate

    def __post_init__(self):
        if not self.name:
            raise ValidationError("claim name must be non-empty")


def _per_ball_means(cover: Cover, values: np.ndarray) -> np.ndarray:
    return np.array([float(values[b.members].mean()) for b in cover.balls])


def claim_corr(
    name: str,
    x_values: np.ndarray,
    y_values: np.ndarray,
    *,
    positive: bool = True,
) -> Claim:
    """Across balls, per-ball means of x and y correlate with the given sign.

    The value arrays are indexed by original row id, which is what ball
    members refer to after the harness maps each repetition back.
    """
    x_values = np.asarray(x_values, dtype=float)
    y_values = np.asarray(y_values, dtype=float)

    def predicate(cover: Cover, graph: BallGraph) -> bool:
        mx = _per_ball_means(cover, x_values)
        my = _per_ball_means(cover, y_values)
        if len(mx) < 2 or mx.std() == 0.0 or my.std() == 0.0:
            return False
        r = float(np.corrcoef(mx, my)[0, 1])
        return r > 0.0 if positive else r < 0.0

    return Claim(name, predicate)


def claim_balls_at_least(n: int, name: str | None = None) -> Claim:
    return Claim(
        name if name is not None else f"balls>={n}",
        lambda cover, graph: len(cover.balls) >= n,
    )


def claim_share_ball(i: int, j: int, name: str | None = None) -> Claim:
    """Some ball contains both original rows i and j."""

    def predicate(cover: Cover, graph: BallGraph) -> bool:
        for ball in cover.balls:
            members = ball.members
            if i in members and j in members:
                return True
        return False

    return Claim(name if name is not None else f"share-ball-{i}-{j}", predicate)


@dataclass(frozen=True)
class RepResult:
    """Outcome of one repetition: its seed, ball count, claim booleans."""

    rep: int
    seed: int
    ball_count: int
    results: Mapping[str, bool]

    def __post_init__(self):
        object.__setattr__(self, "results", MappingProxyType(dict(self.results)))


@dataclass(frozen=True)
class StabilityReport:
    reps: int
    eps: float
    per_rep: tuple[RepResult, ...]
    aggregate: Mapping[str, float]

    def __post_init__(self):
        if len(self.per_rep) != self.reps:
            raise ValidationError("per_rep length must equal reps")
        agg = dict(self.aggregate)
        if any(not 0.0 <= f <= 1.0 for f in agg.values()):
            raise ValidationError("aggregate fractions must lie in [0, 1]")
        object.__setattr__(self, "aggregate", MappingProxyType(agg))


def _remap_cover(cover: Cover, perm: np.ndarray, n_points: int) -> Cover:
    """Rewrite a cover built on shuffled rows in terms of original row ids."""
    balls = tuple(
        Ball(b.id, int(perm[b.landmark]), np.sort(perm[b.members]))
        for b in cover.balls
    )
    return Cover(balls, cover.eps, n_points)


def _run_rep(
    rep: int,
    cloud: PointCloud,
    coloring: ColoringVariable,
    eps: float,
    seed: int,
    claims: tuple[Claim, ...],
) -> RepResult:
    shuffled_cloud, _, perm = permute(cloud, coloring, seed)
    cover = build_cover(shuffled_cloud, CoverConfig(eps, policy="sequential"))
    cover = _remap_cover(cover, perm, cloud.n_points)
    graph = build_graph(cover, coloring)
    results = {c.name: bool(c.predicate(cover, graph)) for c in claims}
    return RepResult(rep, seed, len(cover.balls), results)


def run_stability(
    cloud: PointCloud,
    coloring: ColoringVariable,
    eps: float,
    reps: int,
    base_seed: int,
    claims: list[Claim] | tuple[Claim, ...],
    *,
    jobs: int = 1,
) -> StabilityReport:
    """Rebuild the cover under ``reps`` row shuffles and evaluate claims.

    Repetition r shuffles with seed ``base_seed + r``. Results are ordered
    by repetition index and are deterministic for fixed inputs regardless
    of ``jobs``.
    """
    if reps < 1:
        raise ValidationError(f"reps must be >= 1, got {reps}")
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    claims = tuple(claims)
    names = [c.name for c in claims]
    if len(set(names)) != len(names):
        raise ValidationError(f"claim names must be unique, got {names}")

    def one(rep: int) -> RepResult:
        return _run_rep(rep, cloud, coloring, eps, base_seed + rep, claims)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_rep = tuple(pool.map(one, range(reps)))
    else:
        per_rep = tuple(one(rep) for rep in range(reps))

    aggregate = {
        name: sum(r.results[name] for r in per_rep) / reps for name in names
    }
    return StabilityReport(reps, eps, per_rep, aggregate)


def ball_count_distribution(report: StabilityReport) -> dict[int, int]:
    """Histogram of per-rep ball counts, keyed ascending."""
    if not report.per_rep:
        raise ValidationError("report has no repetitions")
    histogram: dict[int, int] = {}
    for r in report.per_rep:
        histogram[r.ball_count] = histogram.get(r.ball_count, 0) + 1
    return dict(sorted(histogram.items()))


def report_to_csv_text(report: StabilityReport) -> str:
    """One row per repetition; claim columns are 1 (held) or 0 (failed)."""
    names = sorted(report.aggregate)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["rep", "seed", "balls", *names])
    for r in report.per_rep:
        writer.writerow(
            [r.rep, r.seed, r.ball_count, *(int(r.results[n]) for n in names)]
        )
    return out.getvalue()


def report_to_json(report: StabilityReport) -> str:
    doc = {
        "reps": report.reps,
        "eps": report.eps,
        "per_rep": [
            {
                "rep": r.rep,
                "seed": r.seed,
                "balls": r.ball_count,
                "results": dict(r.results),
            }
            for r in report.per_rep
        ],
        "aggregate": dict(report.aggregate),
        "ball_counts": {
            str(k): v for k, v in ball_count_distribution(report).items()
        },
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
