"""Ball mapper: epsilon-ball covers, intersection graphs, and analytics.

The pipeline: ingest a point cloud (``load_csv`` / ``synthesize``), cover
it with epsilon-balls (``build_cover``), turn ball intersections into a
colored graph (``build_graph``), embed it (``spring_layout``), and render
or persist it (``render_svg`` / ``export_json`` / ``export_dot``).
``ball_summary`` and ``points_and_balls`` interrogate membership;
``run_stability`` checks inferences under row reordering.
"""
from ._version import VERSION as __version__
from .cover import (
    POLICIES,
    Ball,
    Cover,
    CoverConfig,
    CoverDiagnostics,
    assert_cover_valid,
    build_cover,
    points_covered_by_landmarks,
)
from .errors import TdabmError, ValidationError
from .graph import (
    BallGraph,
    BallNode,
    Edge,
    PointsAndBalls,
    add_coloring,
    ball_summary,
    build_graph,
    color_by_variable,
    filter_by,
    intersection_edges,
    points_and_balls,
)
from .ingest import (
    ColoringVariable,
    DatasetSpec,
    PointCloud,
    load_csv,
    load_csv_text,
    permute,
    standardize,
    summary_stats,
    synthesize,
)
from .layout import Layout, LayoutConfig, default_spring_k, layout_stress, spring_layout
from .render import (
    BUILTIN_COLORMAPS,
    RAINBOW,
    REDS,
    ColorMap,
    RenderConfig,
    color_window,
    eval_colormap,
    export_dot,
    export_json,
    get_colormap,
    import_json,
    load_colormap,
    render_svg,
)
from .stability import (
    Claim,
    StabilityReport,
    ball_count_distribution,
    claim_balls_at_least,
    claim_corr,
    claim_share_ball,
    report_to_csv_text,
    report_to_json,
    run_stability,
)
from .tables import Table

__all__ = [
    "__version__",
    "POLICIES",
    "Ball",
    "BallGraph",
    "BallNode",
    "BUILTIN_COLORMAPS",
    "Claim",
    "ColorMap",
    "ColoringVariable",
    "Cover",
    "CoverConfig",
    "CoverDiagnostics",
    "DatasetSpec",
    "Edge",
    "Layout",
    "LayoutConfig",
    "PointCloud",
    "PointsAndBalls",
    "RAINBOW",
    "REDS",
    "RenderConfig",
    "StabilityReport",
    "Table",
    "TdabmError",
    "ValidationError",
    "add_coloring",
    "assert_cover_valid",
    "ball_count_distribution",
    "ball_summary",
    "build_cover",
    "build_graph",
    "claim_balls_at_least",
    "claim_corr",
    "claim_share_ball",
    "color_window",
    "color_by_variable",
    "default_spring_k",
    "eval_colormap",
    "export_dot",
    "export_json",
    "filter_by",
    "get_colormap",
    "import_json",
    "intersection_edges",
    "layout_stress",
    "load_colormap",
    "load_csv",
    "load_csv_text",
    "permute",
    "points_and_balls",
    "points_covered_by_landmarks",
    "render_svg",
    "report_to_csv_text",
    "report_to_json",
    "run_stability",
    "spring_layout",
    "standardize",
    "summary_stats",
    "synthesize",
]
