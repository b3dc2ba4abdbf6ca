"""End-to-end walkthrough: cover, graph, summaries, filtering, and a plot.

Builds the eps=1.5 cover of the bundled two-axis dataset, inspects the
resulting balls and their intersection graph, summarizes each ball against
the outcome variable Y, keeps only the balls with positive mean outcome,
and writes SVG plots of both the full and the filtered graph.

Run from the repository root:

    python3 demos/walkthrough.py

Outputs land in demos/out/. The CLI equivalent of the core pipeline is:

    tdabm build --input fixtures/dataset1.csv --axes X1,X2 --color Y \
        --eps 1.5 --no-standardize --out graph.json
"""
from pathlib import Path

import tdabm

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"


def main() -> None:
    OUT.mkdir(exist_ok=True)

    # The fixture ships pre-standardized, so load it as-is.
    cloud, y = tdabm.load_csv(
        HERE.parent / "fixtures" / "dataset1.csv", ["X1", "X2"], "Y"
    )
    print(f"loaded {cloud.n_points} points, axes {list(cloud.columns)}, "
          f"outcome {y.name}")

    # Cover the cloud with closed eps-balls. The sequential policy walks the
    # rows in order and opens a ball on every point not yet covered, so the
    # result is fully determined by the row order.
    cover = tdabm.build_cover(cloud, tdabm.CoverConfig(eps=1.5))
    print(f"\neps=1.5 cover: {len(cover)} balls, sizes {cover.sizes()}")
    for ball in cover:
        x1, x2 = cloud.values[ball.landmark]
        print(f"  ball {ball.id}: landmark row {ball.landmark} "
              f"({x1:+.3f}, {x2:+.3f}), {ball.size} members")

    # One node per ball, one edge per non-empty pairwise intersection; each
    # node carries the mean of the coloring variable over its members.
    graph = tdabm.build_graph(cover, y)
    print(f"\ngraph: {graph.n_nodes} nodes, {graph.n_edges} edges")
    for edge in graph.edges:
        print(f"  {edge.a} -- {edge.b}  (shares {edge.intersection_size} points)")

    # Per-ball descriptive statistics of every axis plus the outcome.
    summary = tdabm.ball_summary(cover, cloud, [y])
    summary.to_csv(OUT / "ball_summary.csv")
    print(f"\nper-ball summary -> {OUT / 'ball_summary.csv'}")
    for ball_id, row in summary.as_dict().items():
        print(f"  ball {ball_id}: mean Y {row['Y_mean']:+.3f} "
              f"over {row['obs']} points")

    # Filtering keeps ball ids stable, so "ball 2" means the same region
    # before and after.
    positive = tdabm.filter_by(graph, lambda n: n.colorings["Y"] > 0)
    print(f"\nballs with positive mean Y: {positive.node_ids()}")

    # Deterministic layout + SVG. The same seed always gives the same
    # picture; reusing the full graph's layout for the filtered plot keeps
    # the surviving balls in place.
    layout = tdabm.spring_layout(graph, tdabm.LayoutConfig(seed=3))
    config = tdabm.RenderConfig("Y", colorbar_label="mean Y per ball")
    (OUT / "dataset1.svg").write_text(
        tdabm.render_svg(graph, layout, config), encoding="utf-8"
    )
    kept = {n for n in positive.node_ids()}
    sub_layout = tdabm.Layout(
        {i: layout[i] for i in kept}
    )
    (OUT / "dataset1_positive.svg").write_text(
        tdabm.render_svg(positive, sub_layout, config), encoding="utf-8"
    )
    print(f"plots -> {OUT / 'dataset1.svg'}, {OUT / 'dataset1_positive.svg'}")

    # The membership table has one row per (point, ball) pair — longer than
    # the dataset wherever balls overlap — and merges ball ids back onto
    # the source rows.
    membership = tdabm.points_and_balls(cover)
    membership.to_csv(OUT / "points_and_balls.csv")
    print(f"\nmembership table: {len(membership)} rows for "
          f"{cloud.n_points} points -> {OUT / 'points_and_balls.csv'}")


if __name__ == "__main__":
    main()
