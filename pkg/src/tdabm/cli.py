"""Command line interface: build, plot, summary, stability, synth, serve.

Every command that writes an artifact also writes a ``<out>.manifest.json``
sidecar recording the command, flags, seeds, input digests, and tool
version; together with the deterministic libraries underneath, the
manifest is enough to reproduce the artifact byte-for-byte.

Exit codes: 0 success, 1 validation failure (including bad flags),
2 I/O failure. Set TDABM_LOG=INFO (or DEBUG) for progress logging.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from ._version import VERSION
from .cover import POLICIES, CoverConfig, build_cover
from .errors import TdabmError, ValidationError
from .graph import ball_summary, build_graph
from .ingest import (
    DatasetSpec,
    PointCloud,
    load_csv,
    read_numeric_columns,
    standardize,
    synthesize,
)
from .layout import LayoutConfig, spring_layout
from .render import RenderConfig, export_json, get_colormap, import_json, render_svg
from .stability import claim_corr, report_to_csv_text, report_to_json, run_stability
from .tables import Table

log = logging.getLogger("tdabm")


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting, so flag misuse maps to exit code 1."""

    def error(self, message):
        raise ValidationError(message)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out: Path, command: str, args: argparse.Namespace,
                    inputs: list[Path]) -> None:
    flags = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in sorted(vars(args).items())
        if k != "func" and v is not None
    }
    doc = {
        "tool": "tdabm",
        "version": VERSION,
        "command": command,
        "flags": flags,
        "inputs": {str(p): _sha256(p) for p in inputs},
    }
    sidecar = Path(str(out) + ".manifest.json")
    sidecar.write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def _axes_list(raw: str) -> list[str]:
    axes = [a.strip() for a in raw.split(",") if a.strip()]
    if not axes:
        raise ValidationError(f"--axes got no column names in {raw!r}")
    return axes


def _load_inputs(args: argparse.Namespace):
    cloud, coloring = load_csv(args.input, _axes_list(args.axes), args.color)
    if args.standardize:
        cloud = standardize(cloud)
    return cloud, coloring


def _add_shared_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, type=Path, help="CSV file")
    p.add_argument("--axes", required=True,
                   help="comma-separated axis column names")
    p.add_argument("--color", required=True, help="coloring column name")
    p.add_argument("--eps", required=True, type=float, help="ball radius")
    p.add_argument("--policy", choices=POLICIES, default="sequential")
    p.add_argument("--seed", type=int, default=0,
                   help="landmark seed (random policy)")
    p.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                   default=True, help="standardize axes before covering")


def _add_layout_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--layout-seed", type=int, default=None)
    p.add_argument("--spring-k", type=float, default=None)
    p.add_argument("--iterations", type=int, default=None)


def _layout_config(args: argparse.Namespace) -> LayoutConfig:
    return LayoutConfig(
        k=args.spring_k,
        seed=args.layout_seed if args.layout_seed is not None else 0,
        iterations=args.iterations if args.iterations is not None else 50,
    )


def cmd_build(args: argparse.Namespace) -> int:
    cloud, coloring = _load_inputs(args)
    cover = build_cover(cloud, CoverConfig(args.eps, args.policy, args.seed))
    graph = build_graph(cover, coloring)
    layout = spring_layout(graph, _layout_config(args))
    args.out.write_text(export_json(graph, cover, layout), encoding="utf-8")
    _write_manifest(args.out, "build", args, [args.input])
    print(f"balls={len(cover)} edges={graph.n_edges} -> {args.out}")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    graph, _, stored = import_json(args.graph.read_text(encoding="utf-8"))
    explicit_layout = (
        args.layout_seed is not None
        or args.spring_k is not None
        or args.iterations is not None
    )
    if stored is None or explicit_layout:
        layout = spring_layout(graph, _layout_config(args))
    else:
        layout = stored
    config = RenderConfig(
        coloring_variable=args.coloring,
        cmap=get_colormap(args.cmap),
        colorbar=args.colorbar,
        colorbar_label=args.colorbar_label,
        vmin=args.vmin,
        vmax=args.vmax,
    )
    svg = render_svg(graph, layout, config)
    args.out.write_text(svg, encoding="utf-8")
    inputs = [args.graph]
    if Path(args.cmap).exists():
        inputs.append(Path(args.cmap))
    _write_manifest(args.out, "plot", args, inputs)
    print(f"nodes={graph.n_nodes} coloring={args.coloring} -> {args.out}")
    return 0


def _load_raw_cloud(path: Path) -> PointCloud:
    """Every numeric column of the file, unstandardized, file order."""
    text = path.read_text(encoding="utf-8")
    try:
        header = next(csv.reader(io.StringIO(text)))
    except StopIteration:
        raise ValidationError(f"{path}: empty file") from None
    names = [h.strip() for h in header]
    columns = read_numeric_columns(text, names, source=str(path))
    return PointCloud(
        np.column_stack([columns[n] for n in names]), tuple(names)
    )


def cmd_summary(args: argparse.Namespace) -> int:
    _, cover, _ = import_json(args.graph.read_text(encoding="utf-8"))
    cloud = _load_raw_cloud(args.input)
    table = ball_summary(cover, cloud)
    if args.out is not None:
        table.to_csv(args.out)
        _write_manifest(args.out, "summary", args, [args.graph, args.input])
        print(f"balls={len(cover)} -> {args.out}")
    else:
        sys.stdout.write(table.to_csv_text())
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    cloud, coloring = _load_inputs(args)
    claims = []
    for axis in cloud.columns:
        r = float(np.corrcoef(cloud.column(axis), coloring.values)[0, 1])
        positive = r >= 0.0
        sign = ">" if positive else "<"
        claims.append(
            claim_corr(
                f"corr({axis},{coloring.name}){sign}0",
                cloud.column(axis),
                coloring.values,
                positive=positive,
            )
        )
    report = run_stability(
        cloud, coloring, args.eps, args.reps, args.seed, claims, jobs=args.jobs
    )
    if args.out is not None:
        if args.out.suffix == ".json":
            args.out.write_text(report_to_json(report), encoding="utf-8")
        else:
            args.out.write_text(report_to_csv_text(report), encoding="utf-8")
        _write_manifest(args.out, "stability", args, [args.input])
        for name in sorted(report.aggregate):
            print(f"{name}: {report.aggregate[name]:.3f}")
        print(f"reps={report.reps} -> {args.out}")
    else:
        sys.stdout.write(report_to_csv_text(report))
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    spec = DatasetSpec(args.n, args.seed, args.rho, args.standardize)
    cloud, coloring = synthesize(spec)
    rows = tuple(
        (float(a), float(b), float(c))
        for a, b, c in zip(
            cloud.column("X1"), cloud.column("X2"), coloring.values
        )
    )
    Table(("X1", "X2", "Y"), rows).to_csv(args.out)
    _write_manifest(args.out, "synth", args, [])
    print(f"rows={args.n} -> {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(fixtures_dir=args.fixtures, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="tdabm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="cover a CSV and write graph JSON")
    _add_shared_flags(p)
    _add_layout_flags(p)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("plot", help="render graph JSON to SVG")
    p.add_argument("--graph", required=True, type=Path)
    p.add_argument("--coloring", required=True)
    p.add_argument("--cmap", default="reds",
                   help="reds, rainbow, or a JSON stop-list file")
    p.add_argument("--vmin", type=float, default=None)
    p.add_argument("--vmax", type=float, default=None)
    p.add_argument("--colorbar", action=argparse.BooleanOptionalAction,
                   default=True)
    p.add_argument("--colorbar-label", default=None)
    _add_layout_flags(p)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("summary", help="per-ball summary of raw columns")
    p.add_argument("--graph", required=True, type=Path)
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("stability", help="reordering-consistency report")
    _add_shared_flags(p)
    p.add_argument("--reps", required=True, type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("synth", help="generate a synthetic dataset CSV")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                   default=True)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--fixtures", type=Path, default=None,
                   help="directory of CSV fixtures to expose by name")
    p.add_argument("--static", type=Path, default=None,
                   help="directory of built explorer assets to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("TDABM_LOG")
    if level:
        logging.basicConfig(level=level.upper())
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TdabmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def entry() -> int:
    return main(sys.argv[1:])
