"""Synthesize a correlated dataset, then style and export its graph.

Covers the remaining surface the other demos don't touch:

* ``synthesize`` — draw a fresh bivariate dataset with a targeted
  correlation between the axes (here 0.5) and outcome Y = X1 - X2;
* built-in colormaps (``reds``, ``rainbow``) versus a custom map loaded
  from JSON — the custom one is a diverging map with a hard switch at
  the middle of the window, which with vmin/vmax = (-1, 1) turns the
  plot into a binary "mean Y below/above zero" verdict per ball;
* the three export formats: SVG for looking, DOT for Graphviz, JSON
  for round-tripping (``import_json`` restores graph, cover, layout).

Run from the repository root:

    python3 demos/colormaps_and_exports.py

The CLI equivalent of the synthesis step:

    tdabm synth --n 1000 --rho 0.5 --seed 11 --out synthetic.csv
"""
import json
from pathlib import Path

import tdabm

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"

# Blue below the window midpoint, red above, switching sharply at 0.5.
SPLIT_MAP = [
    {"t": 0.0, "rgb": [33, 102, 172]},
    {"t": 0.4999, "rgb": [146, 197, 222]},
    {"t": 0.5001, "rgb": [244, 165, 130]},
    {"t": 1.0, "rgb": [178, 24, 43]},
]


def main() -> None:
    OUT.mkdir(exist_ok=True)

    spec = tdabm.DatasetSpec(n=1000, seed=11, target_correlation=0.5)
    cloud, y = tdabm.synthesize(spec)
    print(f"synthesized {cloud.n_points} points, "
          f"corr(X1, X2) targeted at {spec.target_correlation}")

    cover = tdabm.build_cover(cloud, tdabm.CoverConfig(eps=1.5))
    graph = tdabm.build_graph(cover, y)
    layout = tdabm.spring_layout(graph, tdabm.LayoutConfig(seed=1))
    print(f"eps=1.5: {len(cover)} balls, {graph.n_edges} edges")

    # Same graph, three looks.
    for name in ("reds", "rainbow"):
        config = tdabm.RenderConfig(
            "Y", cmap=tdabm.get_colormap(name), colorbar_label="mean Y"
        )
        path = OUT / f"synthetic_{name}.svg"
        path.write_text(tdabm.render_svg(graph, layout, config), encoding="utf-8")
        print(f"  {name:<8} -> {path}")

    map_path = OUT / "split.json"
    map_path.write_text(json.dumps(SPLIT_MAP), encoding="utf-8")
    split = tdabm.load_colormap(map_path)
    config = tdabm.RenderConfig(
        "Y", cmap=split, vmin=-1.0, vmax=1.0,
        colorbar_label="mean Y (blue < 0 < red)",
    )
    path = OUT / "synthetic_split.svg"
    path.write_text(tdabm.render_svg(graph, layout, config), encoding="utf-8")
    print(f"  {split.name:<8} -> {path}  (custom map from {map_path.name})")

    # Graphviz: render with e.g. `neato -Tpng synthetic.dot -o synthetic.png`.
    dot_path = OUT / "synthetic.dot"
    dot_path.write_text(tdabm.export_dot(graph, config), encoding="utf-8")
    print(f"\nGraphviz source -> {dot_path}")

    # JSON round-trip: everything (graph, memberships, layout) survives.
    text = tdabm.export_json(graph, cover, layout)
    json_path = OUT / "synthetic.json"
    json_path.write_text(text, encoding="utf-8")
    graph2, cover2, layout2 = tdabm.import_json(text)
    assert (graph2, cover2, layout2) == (graph, cover, layout)
    print(f"graph JSON -> {json_path} "
          f"(round-trips losslessly, {len(text)} bytes)")


if __name__ == "__main__":
    main()
