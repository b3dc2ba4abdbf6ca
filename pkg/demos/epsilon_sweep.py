"""Choosing eps: sweep the radius and compare plots on a fixed color scale.

There is no single right eps — small radii shatter the cloud into many
tiny balls, large radii blur everything into one — so the working method
is to try several values and watch how the picture coarsens. This script
sweeps eps over the bundled dataset, prints how the cover and graph
respond, and renders one SVG per eps.

Two details make the plots comparable across the sweep:

* the color window is locked to the eps=1.5 window (vmin/vmax), so a
  given shade means the same mean-Y everywhere;
* each graph gets its own layout (node sets differ), but the same layout
  seed, so the arrangement style is consistent.

Run from the repository root:

    python3 demos/epsilon_sweep.py
"""
from pathlib import Path

import tdabm

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"

SWEEP = [0.75, 1.0, 1.5, 2.0, 2.5, 3.0]


def main() -> None:
    OUT.mkdir(exist_ok=True)
    cloud, y = tdabm.load_csv(
        HERE.parent / "fixtures" / "dataset1.csv", ["X1", "X2"], "Y"
    )

    # Lock the color scale to the reference radius so shades are
    # comparable across the whole sweep.
    reference = tdabm.build_graph(
        tdabm.build_cover(cloud, tdabm.CoverConfig(eps=1.5)), y
    )
    vmin, vmax = tdabm.color_window(
        [n.colorings["Y"] for n in reference.nodes], None, None
    )
    print(f"color window locked to eps=1.5: [{vmin:.3f}, {vmax:.3f}]\n")
    print(f"{'eps':>5} {'balls':>6} {'edges':>6} {'largest':>8} {'mean-Y range':>22}")

    for eps in SWEEP:
        cover = tdabm.build_cover(cloud, tdabm.CoverConfig(eps=eps))
        graph = tdabm.build_graph(cover, y)
        means = [n.colorings["Y"] for n in graph.nodes]
        print(f"{eps:>5} {len(cover):>6} {graph.n_edges:>6} "
              f"{max(cover.sizes()):>8} "
              f"{f'[{min(means):+.3f}, {max(means):+.3f}]':>22}")

        layout = tdabm.spring_layout(graph, tdabm.LayoutConfig(seed=3))
        config = tdabm.RenderConfig(
            "Y", vmin=vmin, vmax=vmax, colorbar_label="mean Y per ball"
        )
        path = OUT / f"dataset1_eps{eps}.svg"
        path.write_text(tdabm.render_svg(graph, layout, config), encoding="utf-8")

    print(f"\nplots -> {OUT}/dataset1_eps*.svg")
    print("Coarser covers have fewer, larger balls; the mean-Y range "
          "shrinks toward 0 as averaging washes the signal out.")


if __name__ == "__main__":
    main()
