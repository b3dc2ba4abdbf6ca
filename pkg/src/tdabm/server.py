"""Local HTTP service exposing cover building, recoloring, and membership.

Sessions hold an ingested cloud in memory; covers, graphs, layouts, and
serialized response bodies are cached per session keyed by the query
parameters that affect them, so identical queries return byte-identical
bodies. All cached objects are immutable; cache insertion is atomic
get-or-compute, and because construction is deterministic a duplicate
computation can never install a divergent value.

Sessions are memory-only. Persistence is the exported JSON document; the
service is stateless across restarts by design.
"""
from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .cover import Cover, CoverConfig, build_cover
from .errors import ValidationError
from .graph import BallGraph, add_coloring, build_graph
from .ingest import ColoringVariable, PointCloud, load_csv_text, standardize
from .layout import Layout, LayoutConfig, spring_layout
from .render import export_json

Policy = Literal["sequential", "random"]


class SessionRequest(BaseModel):
    """Body for POST /sessions: exactly one of a fixture name or CSV text."""

    fixture: str | None = None
    csv: str | None = None
    axes: list[str]
    color: str
    standardize: bool = True


@dataclass
class Session:
    """One loaded dataset plus caches of everything derived from it."""

    id: str
    raw_cloud: PointCloud
    cloud: PointCloud
    coloring: ColoringVariable
    covers: dict = field(default_factory=dict)
    layouts: dict = field(default_factory=dict)
    bodies: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def cover_and_graph(
        self, eps: float, policy: str, seed: int
    ) -> tuple[Cover, BallGraph]:
        key = (eps, policy, seed)
        with self.lock:
            hit = self.covers.get(key)
        if hit is None:
            cover = build_cover(self.cloud, CoverConfig(eps, policy, seed))
            graph = build_graph(cover, self.coloring)
            for axis in self.cloud.columns:
                if axis == self.coloring.name:
                    continue
                graph = add_coloring(
                    graph, cover, ColoringVariable(axis, self.cloud.column(axis))
                )
            with self.lock:
                hit = self.covers.setdefault(key, (cover, graph))
        return hit

    def layout_for(
        self,
        eps: float,
        policy: str,
        seed: int,
        layout_seed: int,
        k: float | None,
        iterations: int,
    ) -> Layout:
        key = (eps, policy, seed, layout_seed, k, iterations)
        with self.lock:
            hit = self.layouts.get(key)
        if hit is None:
            _, graph = self.cover_and_graph(eps, policy, seed)
            layout = spring_layout(
                graph, LayoutConfig(k=k, seed=layout_seed, iterations=iterations)
            )
            with self.lock:
                hit = self.layouts.setdefault(key, layout)
        return hit

    def cached_body(self, key: tuple, compute) -> bytes:
        with self.lock:
            hit = self.bodies.get(key)
        if hit is None:
            body = compute()
            with self.lock:
                hit = self.bodies.setdefault(key, body)
        return hit


def _load_fixture(fixtures_dir: Path | None, name: str) -> str:
    if fixtures_dir is None:
        raise HTTPException(404, detail="no fixtures directory configured")
    candidate = Path(name)
    if candidate.suffix != ".csv":
        candidate = candidate.with_suffix(".csv")
    path = fixtures_dir / candidate.name
    if not path.is_file():
        raise HTTPException(404, detail=f"unknown fixture {name!r}")
    return path.read_text(encoding="utf-8")


def create_app(
    fixtures_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    fixtures_dir = Path(fixtures_dir) if fixtures_dir is not None else None
    app = FastAPI(title="tdabm", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()

    def get_session(sid: str) -> Session:
        with sessions_lock:
            session = sessions.get(sid)
        if session is None:
            raise HTTPException(404, detail=f"unknown session {sid!r}")
        return session

    @app.get("/fixtures")
    def list_fixtures():
        if fixtures_dir is None:
            return {"fixtures": []}
        return {
            "fixtures": sorted(p.stem for p in fixtures_dir.glob("*.csv"))
        }

    @app.post("/sessions", status_code=201)
    def create_session(req: SessionRequest):
        if (req.fixture is None) == (req.csv is None):
            raise HTTPException(
                400, detail="provide exactly one of 'fixture' or 'csv'"
            )
        if req.fixture is not None:
            text = _load_fixture(fixtures_dir, req.fixture)
            source = req.fixture
        else:
            text = req.csv
            source = "<upload>"
        try:
            raw_cloud, coloring = load_csv_text(
                text, req.axes, req.color, source=source
            )
            cloud = standardize(raw_cloud) if req.standardize else raw_cloud
        except ValidationError as exc:
            raise HTTPException(400, detail=str(exc)) from None
        sid = secrets.token_hex(8)
        session = Session(sid, raw_cloud, cloud, coloring)
        with sessions_lock:
            sessions[sid] = session
        return {
            "session": sid,
            "n": cloud.n_points,
            "k": cloud.n_axes,
            "axes": list(cloud.columns),
            "color": coloring.name,
            "colorings": list(dict.fromkeys([coloring.name, *cloud.columns])),
        }

    @app.get("/sessions/{sid}/graph")
    def get_graph(
        sid: str,
        eps: float = Query(gt=0),
        policy: Policy = "sequential",
        seed: int = 0,
        coloring: str | None = None,
        layout_seed: int = 0,
        k: float | None = Query(None, gt=0),
        iterations: int = Query(50, ge=0),
    ):
        session = get_session(sid)
        _, graph = session.cover_and_graph(eps, policy, seed)
        if coloring is not None and coloring not in graph.coloring_names():
            raise HTTPException(
                422,
                detail=f"unknown coloring {coloring!r}; "
                f"available: {graph.coloring_names()}",
            )
        key = ("graph", eps, policy, seed, layout_seed, k, iterations)

        def compute() -> bytes:
            cover, g = session.cover_and_graph(eps, policy, seed)
            layout = session.layout_for(
                eps, policy, seed, layout_seed, k, iterations
            )
            return export_json(g, cover, layout).encode("utf-8")

        body = session.cached_body(key, compute)
        return Response(content=body, media_type="application/json")

    @app.get("/sessions/{sid}/balls/{ball}/members")
    def get_members(
        sid: str,
        ball: int,
        eps: float = Query(gt=0),
        policy: Policy = "sequential",
        seed: int = 0,
    ):
        session = get_session(sid)
        cover, _ = session.cover_and_graph(eps, policy, seed)
        if not 0 <= ball < len(cover.balls):
            raise HTTPException(404, detail=f"unknown ball {ball}")
        key = ("members", eps, policy, seed, ball)

        def compute() -> bytes:
            b = cover.balls[ball]
            columns = list(
                dict.fromkeys(
                    [*session.raw_cloud.columns, session.coloring.name]
                )
            )
            rows = []
            for point in b.members.tolist():
                row = {"point": point}
                for name in columns:
                    if name == session.coloring.name:
                        row[name] = float(session.coloring.values[point])
                    else:
                        row[name] = float(session.raw_cloud.column(name)[point])
                rows.append(row)
            doc = {
                "ball": b.id,
                "landmark": int(b.landmark),
                "eps": eps,
                "columns": ["point", *columns],
                "rows": rows,
            }
            return (
                json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
            ).encode("utf-8")

        body = session.cached_body(key, compute)
        return Response(content=body, media_type="application/json")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount(
            "/", StaticFiles(directory=str(static_dir), html=True), name="static"
        )
    return app
