"""Deterministic 2-D force-directed placement of a ball graph.

Fruchterman-Reingold: seeded uniform initial positions in the unit square,
then per iteration a repulsive force k^2/d between every node pair and an
attractive force d^2/k along every edge, with the per-step displacement
capped by a linearly cooling temperature. The result is rescaled into
[-1, 1]^2 with a uniform scale about the bounding-box center, which fixes
the output gauge. Degenerate cases are pinned explicitly: a lone node sits
at the origin, a 2-node graph becomes the horizontal segment (-1,0)-(1,0)
in ascending id order.

The layout is a pure function of (graph topology, k, seed, iterations);
node colorings never influence positions, so recoloring keeps the picture
still. Bit-compatibility with any external layout library is a non-goal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import ValidationError
from .graph import BallGraph

_MIN_DISTANCE = 0.01


@dataclass(frozen=True)
class LayoutConfig:
    """Spring constant k (edge length scale), placement seed, iterations.

    k defaults to 1/sqrt(number of nodes) when left unset.
    """

    k: float | None = None
    seed: int = 0
    iterations: int = 50

    def __post_init__(self):
        if self.k is not None and not self.k > 0:
            raise ValidationError(f"spring constant k must be positive, got {self.k}")
        if self.iterations < 0:
            raise ValidationError("iterations must be non-negative")


@dataclass(frozen=True, eq=False)
class Layout:
    """Ball id -> (x, y), all coordinates finite and inside [-1, 1]^2."""

    positions: Mapping[int, tuple[float, float]]

    def __post_init__(self):
        object.__setattr__(
            self, "positions", MappingProxyType(dict(self.positions))
        )
        for node_id, (x, y) in self.positions.items():
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValidationError(f"non-finite position for ball {node_id}")

    def __getitem__(self, node_id: int) -> tuple[float, float]:
        return self.positions[node_id]

    def __len__(self) -> int:
        return len(self.positions)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Layout):
            return NotImplemented
        return dict(self.positions) == dict(other.positions)


def default_spring_k(n_nodes: int) -> float:
    return 1.0 / math.sqrt(n_nodes)


def _rescale(pos: np.ndarray) -> np.ndarray:
    center = (pos.min(axis=0) + pos.max(axis=0)) / 2.0
    half_extent = float((pos.max(axis=0) - pos.min(axis=0)).max()) / 2.0
    if half_extent == 0.0:
        return np.zeros_like(pos)
    return (pos - center) / half_extent


def spring_layout(graph: BallGraph, config: LayoutConfig = LayoutConfig()) -> Layout:
    """Place the graph's nodes in [-1, 1]^2 by the seeded spring algorithm."""
    ids = graph.node_ids()
    n = len(ids)
    if n == 0:
        raise ValidationError("cannot lay out an empty graph")
    if n == 1:
        return Layout({ids[0]: (0.0, 0.0)})
    if n == 2:
        lo, hi = sorted(ids)
        return Layout({lo: (-1.0, 0.0), hi: (1.0, 0.0)})

    index = {node_id: i for i, node_id in enumerate(ids)}
    adjacency = np.zeros((n, n))
    for e in graph.edges:
        adjacency[index[e.a], index[e.b]] = 1.0
        adjacency[index[e.b], index[e.a]] = 1.0

    k = config.k if config.k is not None else default_spring_k(n)
    rng = np.random.default_rng(config.seed)
    pos = rng.random((n, 2))

    temperature = 0.1
    step = temperature / (config.iterations + 1)
    for _ in range(config.iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        distance = np.sqrt((delta * delta).sum(axis=-1))
        np.clip(distance, _MIN_DISTANCE, None, out=distance)
        # repulsion k^2/d for all pairs, attraction d^2/k along edges;
        # dividing by d turns the magnitudes into vector scalings of delta
        scale = k * k / distance**2 - adjacency * distance / k
        displacement = (delta * scale[..., None]).sum(axis=1)
        length = np.sqrt((displacement * displacement).sum(axis=-1))
        length = np.where(length < 1e-12, 1.0, length)
        pos = pos + displacement * (np.minimum(length, temperature) / length)[:, None]
        temperature -= step

    pos = _rescale(pos)
    return Layout(
        {node_id: (float(pos[i, 0]), float(pos[i, 1])) for node_id, i in index.items()}
    )


def layout_stress(graph: BallGraph, layout: Layout, k: float | None = None) -> float:
    """Mean squared deviation of edge lengths from the spring length k.

    Diagnostic used by regression tests; 0.0 for an edgeless graph.
    """
    if graph.n_edges == 0:
        return 0.0
    if k is None:
        k = default_spring_k(graph.n_nodes)
    total = 0.0
    for e in graph.edges:
        ax, ay = layout[e.a]
        bx, by = layout[e.b]
        length = math.hypot(ax - bx, ay - by)
        total += (length - k) ** 2
    return total / graph.n_edges
