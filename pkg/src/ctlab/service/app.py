"""FastAPI application wiring the store, aggregation, and diagnostic model.

Configuration (constructor arguments override environment):

* ``CTLAB_DATA_DIR``: directory for the append-only report log.
* ``CTLAB_MODEL_PATH``: diagnostic model file; defaults to the packaged one.
* ``CTLAB_UI_DIR``: static web bundle served at ``/ui`` when present.
"""

from __future__ import annotations

import os
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.staticfiles import StaticFiles

from ..bn import BNError, most_informative_features
from ..covid import AlertPolicy, CaseInput, assess, load_model
from ..surv import (
    InvalidWindow,
    ReportStore,
    SurveillanceReport,
    Window,
    detect_outbreaks,
    export_heatmap,
    trajectory,
)
from ..surv.aggregate import DEFAULT_CELL_SIZE_DEG, DEFAULT_HIGH_RISK_TAU
from ..surv.store import AGE_GROUPS
from . import schemas

__all__ = ["create_app", "default_ui_dir"]

DEFAULT_DATA_DIR = "ctlab-data"


def default_ui_dir() -> Path:
    # repo layout: src/ctlab/service/app.py -> repo root / frontend / dist
    return Path(__file__).resolve().parents[3] / "frontend" / "dist"


def create_app(
    data_dir: str | Path | None = None,
    model_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    data_dir = Path(data_dir or os.environ.get("CTLAB_DATA_DIR", DEFAULT_DATA_DIR))
    model_path = model_path or os.environ.get("CTLAB_MODEL_PATH")
    ui_dir = Path(ui_dir or os.environ.get("CTLAB_UI_DIR", default_ui_dir()))

    store = ReportStore(data_dir)
    model = load_model(model_path)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        store.close()

    app = FastAPI(title="ctlab", lifespan=lifespan)
    app.state.store = store
    app.state.model = model

    def parse_window(start: float, end: float) -> Window:
        try:
            return Window(start, end)
        except InvalidWindow as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/report", status_code=202, response_model=schemas.ReportAck)
    def post_report(body: schemas.ReportIn) -> schemas.ReportAck:
        report = SurveillanceReport(
            p_covid=body.p_covid,
            latitude=body.latitude,
            longitude=body.longitude,
            age_group=body.age_group,
            timestamp=body.timestamp,
            app_uid=body.app_uid,
        )
        result = store.ingest(report)
        if not result.accepted:
            raise HTTPException(status_code=400, detail=result.reason)
        return schemas.ReportAck(duplicate=result.duplicate)

    @app.get("/heatmap")
    def get_heatmap(
        start: float,
        end: float,
        cell: float = Query(DEFAULT_CELL_SIZE_DEG, gt=0),
        tau: float = Query(DEFAULT_HIGH_RISK_TAU, ge=0, le=1),
        age: str | None = Query(None),
    ) -> Response:
        window = parse_window(start, end)
        if age is not None and age not in AGE_GROUPS:
            raise HTTPException(status_code=400, detail="bad age group")
        reports = store.snapshot()
        if age is not None:
            reports = tuple(r for r in reports if r.age_group == age)
        body = export_heatmap(reports, window, cell, tau)
        return Response(content=body, media_type="application/geo+json")

    @app.get("/outbreaks", response_model=list[schemas.OutbreakFlagOut])
    def get_outbreaks(
        start: float,
        end: float,
        min_reports: int = Query(5, ge=1),
        delta: float = Query(0.2, ge=0),
        cell: float = Query(DEFAULT_CELL_SIZE_DEG, gt=0),
        tau: float = Query(DEFAULT_HIGH_RISK_TAU, ge=0, le=1),
    ) -> list[schemas.OutbreakFlagOut]:
        current = parse_window(start, end)
        previous = parse_window(start - current.length, start)
        flags = detect_outbreaks(
            store.snapshot(), current, previous, min_reports, delta, cell, tau
        )
        return [
            schemas.OutbreakFlagOut(
                cell=f.cell,
                window=(f.window.start, f.window.end),
                count=f.count,
                mean_p=f.mean_p,
                baseline_mean_p=f.baseline_mean_p,
                min_reports=f.min_reports,
                delta=f.delta,
            )
            for f in flags
        ]

    @app.get("/trajectory/{uid}", response_model=schemas.TrajectoryOut)
    def get_trajectory(uid: str) -> schemas.TrajectoryOut:
        reports = trajectory(store.snapshot(), uid)
        return schemas.TrajectoryOut(
            uid=uid,
            reports=[
                schemas.ReportOut(
                    p_covid=r.p_covid,
                    latitude=r.latitude,
                    longitude=r.longitude,
                    age_group=r.age_group,
                    timestamp=r.timestamp,
                    app_uid=r.app_uid,
                )
                for r in reports
            ],
        )

    @app.post("/assess", response_model=schemas.AssessOut)
    def post_assess(body: schemas.AssessIn) -> schemas.AssessOut:
        try:
            case = CaseInput(
                evidence=body.evidence,
                symptom_duration_days=body.symptom_duration_days,
                improving=body.improving,
            )
            policy = AlertPolicy(
                alert_threshold=body.alert_threshold,
                hosp_threshold=body.hosp_threshold,
            )
            report = assess(model, case, policy)
        except (BNError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        posterior = report.posterior.as_dict() if report.posterior is not None else {}
        return schemas.AssessOut(
            posterior=posterior,
            p_covid=report.p_covid if report.p_covid is not None else 0.0,
            covid_alert=report.covid_alert,
            hospitalization_alert=report.hospitalization_alert,
            next_questions=[
                schemas.NextQuestionOut(feature=f, expected_entropy_reduction=g)
                for f, g in report.next_questions
            ],
            contradiction=report.contradiction,
        )

    @app.post("/voi", response_model=schemas.VoiOut)
    def post_voi(body: schemas.VoiIn) -> schemas.VoiOut:
        try:
            candidates = body.candidates
            if candidates is None:
                observed = set(body.evidence) | {body.target}
                candidates = [n for n in model.network.node_ids if n not in observed]
            ranking = most_informative_features(
                model.network, body.evidence, body.target, candidates
            )
        except (BNError, KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return schemas.VoiOut(
            target=body.target,
            ranking=[
                schemas.NextQuestionOut(feature=f, expected_entropy_reduction=g)
                for f, g in ranking
            ],
        )

    if ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
