"""Colormaps and static exports: SVG plot, JSON persistence, DOT interop.

All exporters are pure functions of their inputs and emit byte-identical
output on repeated calls; floats in JSON use shortest round-trip repr and
SVG coordinates use fixed two-decimal formatting.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .cover import Ball, Cover
from .errors import ValidationError
from .graph import BallGraph, BallNode, Edge
from .layout import Layout

RGB = tuple[int, int, int]

SCHEMA_VERSION = 1

# Fraction of the observed value range added above and below when no
# explicit color window is given.
COLOR_WINDOW_BUFFER = 0.05


@dataclass(frozen=True)
class ColorMap:
    """Piecewise-linear map from [0, 1] to RGB via ordered stops."""

    name: str
    stops: tuple[tuple[float, RGB], ...]

    def __post_init__(self):
        stops = tuple((float(t), tuple(int(c) for c in rgb)) for t, rgb in self.stops)
        if len(stops) < 2:
            raise ValidationError("colormap needs at least two stops")
        ts = [t for t, _ in stops]
        if ts[0] != 0.0 or ts[-1] != 1.0:
            raise ValidationError("colormap stops must cover t=0 and t=1")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValidationError("colormap stop positions must strictly increase")
        for _, rgb in stops:
            if len(rgb) != 3 or any(not 0 <= c <= 255 for c in rgb):
                raise ValidationError("colormap channels must be integers in 0..255")
        object.__setattr__(self, "stops", stops)


REDS = ColorMap(
    "reds",
    (
        (0.0, (255, 245, 240)),
        (0.25, (252, 187, 161)),
        (0.5, (251, 106, 74)),
        (0.75, (203, 24, 29)),
        (1.0, (103, 0, 13)),
    ),
)

RAINBOW = ColorMap(
    "rainbow",
    (
        (0.0, (255, 0, 40)),
        (0.2, (255, 255, 0)),
        (0.4, (0, 255, 0)),
        (0.6, (0, 255, 255)),
        (0.8, (0, 0, 255)),
        (1.0, (255, 0, 191)),
    ),
)

BUILTIN_COLORMAPS = {"reds": REDS, "rainbow": RAINBOW}


def load_colormap(path: str | Path) -> ColorMap:
    """Read a colormap from a JSON stop list: [{"t": .., "rgb": [r,g,b]}]."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid colormap JSON ({exc})") from None
    if not isinstance(raw, list):
        raise ValidationError(f"{path}: expected a JSON array of stops")
    try:
        stops = tuple((entry["t"], tuple(entry["rgb"])) for entry in raw)
    except (TypeError, KeyError):
        raise ValidationError(
            f"{path}: each stop needs 't' and 'rgb' fields"
        ) from None
    return ColorMap(path.stem, stops)


def get_colormap(spec: str) -> ColorMap:
    """Resolve a builtin colormap name or a stop-list file path."""
    if spec in BUILTIN_COLORMAPS:
        return BUILTIN_COLORMAPS[spec]
    if Path(spec).exists():
        return load_colormap(spec)
    raise ValidationError(
        f"unknown colormap {spec!r}; builtins: {sorted(BUILTIN_COLORMAPS)}"
    )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def eval_colormap(cmap: ColorMap, value: float, vmin: float, vmax: float) -> RGB:
    """Color for ``value`` on the [vmin, vmax] window, clamped at the ends.

    A degenerate window (vmin == vmax) maps everything to the middle of the
    map. Channels are rounded half-up to integers.
    """
    if vmin > vmax:
        raise ValidationError(f"vmin {vmin} exceeds vmax {vmax}")
    if vmin == vmax:
        t = 0.5
    else:
        t = min(max((value - vmin) / (vmax - vmin), 0.0), 1.0)
    stops = cmap.stops
    for (t0, c0), (t1, c1) in zip(stops, stops[1:]):
        if t <= t1:
            w = (t - t0) / (t1 - t0)
            return tuple(
                _round_half_up(a + w * (b - a)) for a, b in zip(c0, c1)
            )
    return tuple(int(c) for c in stops[-1][1])


def rgb_hex(rgb: RGB) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


@dataclass(frozen=True)
class RenderConfig:
    """Options shared by the SVG and DOT exporters."""

    coloring_variable: str
    cmap: ColorMap = REDS
    colorbar: bool = True
    colorbar_label: str | None = None
    vmin: float | None = None
    vmax: float | None = None
    min_disc: float = 10.0
    max_disc: float = 30.0
    edge_width: float = 1.5

    def __post_init__(self):
        if self.vmin is not None and self.vmax is not None and self.vmin >= self.vmax:
            raise ValidationError(f"vmin {self.vmin} must be below vmax {self.vmax}")
        if not 0 < self.min_disc <= self.max_disc:
            raise ValidationError("disc radii must satisfy 0 < min_disc <= max_disc")


def _node_values(graph: BallGraph, name: str) -> dict[int, float]:
    if graph.nodes and name not in graph.nodes[0].colorings:
        raise ValidationError(
            f"coloring {name!r} is not registered; "
            f"available: {graph.coloring_names()}"
        )
    return {n.id: n.colorings[name] for n in graph.nodes}


def color_window(
    values: list[float], vmin: float | None, vmax: float | None
) -> tuple[float, float]:
    """Explicit window, or the observed range with a small buffer."""
    if vmin is not None and vmax is not None:
        return vmin, vmax
    if not values:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = min(values), max(values)
    buffer = COLOR_WINDOW_BUFFER * (hi - lo)
    auto_lo, auto_hi = lo - buffer, hi + buffer
    return (vmin if vmin is not None else auto_lo,
            vmax if vmax is not None else auto_hi)


def _disc_radius(size: int, lo: int, hi: int, config: RenderConfig) -> float:
    if lo == hi:
        return (config.min_disc + config.max_disc) / 2.0
    frac = (size - lo) / (hi - lo)
    return config.min_disc + frac * (config.max_disc - config.min_disc)


def render_svg(graph: BallGraph, layout: Layout, config: RenderConfig) -> str:
    """SVG document: edges under sized, colored, id-labelled discs.

    Disc radii map affinely from the node-size range onto
    [min_disc, max_disc]; fills come from the colormap over the configured
    (or buffered auto) value window; the optional colorbar carries five
    ticks and a label.
    """
    values = _node_values(graph, config.coloring_variable)
    for n in graph.nodes:
        if n.id not in layout.positions:
            raise ValidationError(f"layout has no position for ball {n.id}")
    vmin, vmax = color_window(list(values.values()), config.vmin, config.vmax)

    margin, plot = 40.0, 640.0
    bar_space = 150.0 if config.colorbar else 0.0
    width = 2 * margin + plot + bar_space
    height = 2 * margin + plot

    def sx(x: float) -> float:
        return margin + (x + 1.0) / 2.0 * plot

    def sy(y: float) -> float:
        return margin + (1.0 - (y + 1.0) / 2.0) * plot

    sizes = [n.size for n in graph.nodes]
    lo_size, hi_size = (min(sizes), max(sizes)) if sizes else (0, 0)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" '
        f'fill="#ffffff"/>',
    ]
    if config.colorbar:
        stops = "".join(
            f'<stop offset="{t:.4f}" stop-color="{rgb_hex(rgb)}"/>'
            for t, rgb in config.cmap.stops
        )
        parts.append(
            '<defs><linearGradient id="colorbar-gradient" '
            f'x1="0" y1="1" x2="0" y2="0">{stops}</linearGradient></defs>'
        )

    parts.append('<g id="edges">')
    for e in graph.edges:
        ax, ay = layout[e.a]
        bx, by = layout[e.b]
        parts.append(
            f'<line x1="{sx(ax):.2f}" y1="{sy(ay):.2f}" '
            f'x2="{sx(bx):.2f}" y2="{sy(by):.2f}" '
            f'stroke="#888888" stroke-width="{config.edge_width:.2f}"/>'
        )
    parts.append("</g>")

    parts.append('<g id="nodes">')
    for n in graph.nodes:
        x, y = layout[n.id]
        radius = _disc_radius(n.size, lo_size, hi_size, config)
        fill = rgb_hex(eval_colormap(config.cmap, values[n.id], vmin, vmax))
        parts.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{radius:.2f}" '
            f'fill="{fill}" stroke="#333333" stroke-width="0.75"/>'
        )
    parts.append("</g>")

    parts.append('<g id="labels">')
    for n in graph.nodes:
        x, y = layout[n.id]
        parts.append(
            f'<text x="{sx(x):.2f}" y="{sy(y):.2f}" text-anchor="middle" '
            f'dominant-baseline="central" font-family="sans-serif" '
            f'font-size="12" fill="#000000">{n.id}</text>'
        )
    parts.append("</g>")

    if config.colorbar:
        bar_x = margin + plot + 40.0
        bar_w = 20.0
        parts.append('<g id="colorbar">')
        parts.append(
            f'<rect x="{bar_x:.2f}" y="{margin:.2f}" width="{bar_w:.2f}" '
            f'height="{plot:.2f}" fill="url(#colorbar-gradient)" '
            f'stroke="#333333" stroke-width="0.75"/>'
        )
        for i in range(5):
            frac = i / 4.0
            value = vmin + frac * (vmax - vmin)
            tick_y = margin + (1.0 - frac) * plot
            parts.append(
                f'<line x1="{bar_x + bar_w:.2f}" y1="{tick_y:.2f}" '
                f'x2="{bar_x + bar_w + 5:.2f}" y2="{tick_y:.2f}" '
                f'stroke="#333333" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{bar_x + bar_w + 9:.2f}" y="{tick_y:.2f}" '
                f'dominant-baseline="central" font-family="sans-serif" '
                f'font-size="11" fill="#000000">{format(value, ".4g")}</text>'
            )
        label = (
            config.colorbar_label
            if config.colorbar_label is not None
            else config.coloring_variable
        )
        label_x = bar_x + bar_w + 60.0
        label_y = margin + plot / 2.0
        parts.append(
            f'<text x="{label_x:.2f}" y="{label_y:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" fill="#000000" '
            f'transform="rotate(-90 {label_x:.2f} {label_y:.2f})">{label}</text>'
        )
        parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_json(graph: BallGraph, cover: Cover, layout: Layout | None = None) -> str:
    """Serialize graph, membership, and optional layout to schema-1 JSON.

    Keys are sorted and floats use shortest round-trip repr, so the output
    is byte-stable. Positions are omitted entirely when no layout is given.
    """
    balls = {b.id: b for b in cover.balls}
    nodes = []
    members = {}
    for n in graph.nodes:
        if n.id not in balls:
            raise ValidationError(f"cover has no ball {n.id} for this graph")
        entry: dict = {
            "id": n.id,
            "landmark": int(balls[n.id].landmark),
            "size": n.size,
            "colorings": dict(n.colorings),
        }
        if layout is not None:
            if n.id not in layout.positions:
                raise ValidationError(f"layout has no position for ball {n.id}")
            x, y = layout[n.id]
            entry["x"] = x
            entry["y"] = y
        nodes.append(entry)
        members[str(n.id)] = balls[n.id].members.tolist()
    doc = {
        "schema": SCHEMA_VERSION,
        "eps": graph.eps,
        "nodes": nodes,
        "edges": [
            {"a": e.a, "b": e.b, "intersection": e.intersection_size}
            for e in graph.edges
        ],
        "members": members,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def import_json(text: str) -> tuple[BallGraph, Cover, Layout | None]:
    """Inverse of ``export_json`` for complete covers."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid graph JSON ({exc})") from None
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA_VERSION}"
        )
    eps = float(doc["eps"])
    nodes = []
    balls = []
    positions = {}
    has_layout = False
    for entry in doc["nodes"]:
        node_id = int(entry["id"])
        colorings = {str(k): float(v) for k, v in entry["colorings"].items()}
        nodes.append(BallNode(node_id, int(entry["size"]), colorings))
        member_list = doc["members"][str(node_id)]
        balls.append(Ball(node_id, int(entry["landmark"]), member_list))
        if "x" in entry:
            has_layout = True
            positions[node_id] = (float(entry["x"]), float(entry["y"]))
    edges = tuple(
        Edge(int(e["a"]), int(e["b"]), int(e["intersection"]))
        for e in doc["edges"]
    )
    n_points = 1 + max(
        (int(b.members.max()) for b in balls if b.members.size), default=-1
    )
    graph = BallGraph(tuple(nodes), edges, eps)
    cover = Cover(tuple(sorted(balls, key=lambda b: b.id)), eps, n_points)
    return graph, cover, Layout(positions) if has_layout else None


def export_dot(graph: BallGraph, config: RenderConfig) -> str:
    """Graphviz undirected graph with filled, size-scaled circle nodes.

    Node width is the disc diameter in inches at 96 units per inch.
    """
    values = _node_values(graph, config.coloring_variable)
    vmin, vmax = color_window(list(values.values()), config.vmin, config.vmax)
    sizes = [n.size for n in graph.nodes]
    lo_size, hi_size = (min(sizes), max(sizes)) if sizes else (0, 0)
    lines = [
        "graph ballmapper {",
        "  node [shape=circle, style=filled, fixedsize=true];",
    ]
    for n in graph.nodes:
        radius = _disc_radius(n.size, lo_size, hi_size, config)
        fill = rgb_hex(eval_colormap(config.cmap, values[n.id], vmin, vmax))
        lines.append(
            f'  {n.id} [label="{n.id}", width={2 * radius / 96:.3f}, '
            f'fillcolor="{fill}"];'
        )
    for e in graph.edges:
        lines.append(f"  {e.a} -- {e.b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
