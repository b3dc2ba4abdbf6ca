"""Ball-intersection graph with named colorings, filtering, and summaries.

One node per ball (carrying its member count and the per-ball means of any
registered coloring variables), one undirected edge per non-empty pairwise
ball intersection. Graphs are immutable; recoloring and filtering return
new graphs. Ball ids survive filtering unchanged so a ball keeps its name
across views of the same cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

import numpy as np

from .cover import Cover
from .errors import ValidationError
from .ingest import ColoringVariable, PointCloud
from .tables import Table


@dataclass(frozen=True, eq=False)
class BallNode:
    """Graph node for one ball: id, member count, per-coloring means."""

    id: int
    size: int
    colorings: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "colorings", MappingProxyType(dict(self.colorings)))

    def coloring(self, name: str) -> float:
        if name not in self.colorings:
            raise ValidationError(
                f"node {self.id} has no coloring {name!r}; "
                f"available: {sorted(self.colorings)}"
            )
        return self.colorings[name]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BallNode):
            return NotImplemented
        return (
            self.id == other.id
            and self.size == other.size
            and dict(self.colorings) == dict(other.colorings)
        )


@dataclass(frozen=True, order=True)
class Edge:
    """Unordered ball pair (stored a < b) with its intersection size."""

    a: int
    b: int
    intersection_size: int

    def __post_init__(self):
        if self.a >= self.b:
            raise ValidationError(f"edge endpoints must satisfy a < b, got {self}")
        if self.intersection_size < 1:
            raise ValidationError(f"edge with empty intersection: {self}")


@dataclass(frozen=True, eq=False)
class BallGraph:
    """Attributed ball-intersection graph. Nodes and edges sorted by id."""

    nodes: tuple[BallNode, ...]
    edges: tuple[Edge, ...]
    eps: float

    def __post_init__(self):
        ids = {n.id for n in self.nodes}
        if len(ids) != len(self.nodes):
            raise ValidationError("duplicate node ids")
        for e in self.edges:
            if e.a not in ids or e.b not in ids:
                raise ValidationError(f"edge {e} references a missing node")
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def node(self, node_id: int) -> BallNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise ValidationError(f"no node with id {node_id}")

    def node_ids(self) -> list[int]:
        return [n.id for n in self.nodes]

    def coloring_names(self) -> list[str]:
        if not self.nodes:
            return []
        return sorted(self.nodes[0].colorings)

    def coloring(self, name: str) -> dict[int, float]:
        return {n.id: n.coloring(name) for n in self.nodes}

    def has_edge(self, a: int, b: int) -> bool:
        a, b = min(a, b), max(a, b)
        return any(e.a == a and e.b == b for e in self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BallGraph):
            return NotImplemented
        return (
            self.eps == other.eps
            and self.nodes == other.nodes
            and self.edges == other.edges
        )


def _ball_means(cover: Cover, values: np.ndarray) -> dict[int, float]:
    return {b.id: float(values[b.members].mean()) for b in cover.balls}


def _check_aligned(cover: Cover, variable: ColoringVariable) -> None:
    if len(variable) != cover.n_points:
        raise ValidationError(
            f"coloring {variable.name!r} has {len(variable)} values for a "
            f"cover over {cover.n_points} points"
        )


def intersection_edges(cover: Cover) -> list[Edge]:
    """Every unordered ball pair with a non-empty intersection.

    Found by inverting memberships: a point in m balls witnesses all
    m*(m-1)/2 pairs, so counting witnesses per pair yields exact
    intersection sizes without scanning empty pairs.
    """
    counts: dict[tuple[int, int], int] = {}
    for ball_ids in cover.point_memberships():
        for i, a in enumerate(ball_ids):
            for b in ball_ids[i + 1 :]:
                key = (a, b)
                counts[key] = counts.get(key, 0) + 1
    return [Edge(a, b, c) for (a, b), c in sorted(counts.items())]


def build_graph(cover: Cover, coloring: ColoringVariable) -> BallGraph:
    """Ball graph of a cover with one registered coloring."""
    _check_aligned(cover, coloring)
    means = _ball_means(cover, coloring.values)
    nodes = tuple(
        BallNode(b.id, b.size, {coloring.name: means[b.id]}) for b in cover.balls
    )
    return BallGraph(nodes, tuple(intersection_edges(cover)), cover.eps)


def add_coloring(
    graph: BallGraph,
    cover: Cover,
    variable: ColoringVariable,
    *,
    overwrite: bool = False,
) -> BallGraph:
    """New graph with the per-ball mean of ``variable`` registered.

    Existing colorings are untouched; re-registering a name requires
    ``overwrite=True``. Works on filtered graphs: only surviving balls are
    recolored.
    """
    _check_aligned(cover, variable)
    if not overwrite:
        for n in graph.nodes:
            if variable.name in n.colorings:
                raise ValidationError(
                    f"coloring {variable.name!r} already registered "
                    f"(pass overwrite=True to replace)"
                )
    by_id = {b.id: b for b in cover.balls}
    nodes = []
    for n in graph.nodes:
        if n.id not in by_id:
            raise ValidationError(f"cover has no ball {n.id} for this graph")
        mean = float(variable.values[by_id[n.id].members].mean())
        nodes.append(BallNode(n.id, n.size, {**n.colorings, variable.name: mean}))
    return BallGraph(tuple(nodes), graph.edges, graph.eps)


def color_by_variable(
    graph: BallGraph, cover: Cover, cloud: PointCloud, column: str
) -> BallGraph:
    """Register one of the cloud's axis columns as a coloring.

    Replaces a same-named registration if present, so switching back and
    forth between axes is idempotent.
    """
    variable = ColoringVariable(column, cloud.column(column))
    return add_coloring(graph, cover, variable, overwrite=True)


def filter_by(graph: BallGraph, predicate: Callable[[BallNode], bool]) -> BallGraph:
    """Induced subgraph of nodes passing the predicate; ids preserved."""
    kept = tuple(n for n in graph.nodes if predicate(n))
    ids = {n.id for n in kept}
    edges = tuple(e for e in graph.edges if e.a in ids and e.b in ids)
    return BallGraph(kept, edges, graph.eps)


@dataclass(frozen=True)
class PointsAndBalls:
    """One row per (point, ball) membership pair, sorted by (point, ball)."""

    rows: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def to_table(self) -> Table:
        return Table(("point", "ball"), self.rows)

    def to_csv(self, path) -> None:
        self.to_table().to_csv(path)


def points_and_balls(cover: Cover) -> PointsAndBalls:
    """Membership table for merging ball ids back onto the source rows.

    Longer than the dataset whenever intersections are non-empty: a point
    in m balls contributes m rows.
    """
    rows = []
    for ball in cover.balls:
        rows.extend((int(p), ball.id) for p in ball.members)
    rows.sort()
    return PointsAndBalls(tuple(rows))


def ball_summary(
    cover: Cover, cloud: PointCloud, extra: Sequence[ColoringVariable] = ()
) -> Table:
    """Per-ball mean, sd, min, max of every variable, plus member count.

    sd is the sample value (1/(n-1)); a single-member ball reports sd 0.
    Columns: ball, then <var>_mean/_sd/_min/_max per variable, then obs.
    """
    if cover.n_points != cloud.n_points:
        raise ValidationError(
            f"cover over {cover.n_points} points, cloud has {cloud.n_points}"
        )
    for c in extra:
        _check_aligned(cover, c)
    names = list(cloud.columns) + [c.name for c in extra]
    vectors = [cloud.column(c) for c in cloud.columns] + [c.values for c in extra]
    columns = ["ball"]
    for name in names:
        columns += [f"{name}_mean", f"{name}_sd", f"{name}_min", f"{name}_max"]
    columns.append("obs")
    rows = []
    for ball in cover.balls:
        cells: list = [ball.id]
        for vec in vectors:
            member_vals = vec[ball.members]
            sd = float(member_vals.std(ddof=1)) if ball.size > 1 else 0.0
            cells += [
                float(member_vals.mean()),
                sd,
                float(member_vals.min()),
                float(member_vals.max()),
            ]
        cells.append(ball.size)
        rows.append(tuple(cells))
    return Table(tuple(columns), tuple(rows))
