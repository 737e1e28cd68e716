"""Request/response bodies for the HTTP API.

Range checks on report fields are deliberately not expressed as pydantic
validators: the contract wants a 400 with the store's rejection reason,
not a 422, so those are applied by the endpoint via validate_report.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

DEFAULT_VOI_TARGET = "covid_status"


class ReportIn(BaseModel):
    p_covid: float
    latitude: float
    longitude: float
    age_group: str
    timestamp: float
    app_uid: str | None = None


class ReportAck(BaseModel):
    status: str = "accepted"
    duplicate: bool = False


class ReportOut(BaseModel):
    p_covid: float
    latitude: float
    longitude: float
    age_group: str
    timestamp: float
    app_uid: str | None = None


class TrajectoryOut(BaseModel):
    uid: str
    reports: list[ReportOut]


class OutbreakFlagOut(BaseModel):
    cell: tuple[int, int]
    window: tuple[float, float]
    count: int
    mean_p: float
    baseline_mean_p: float
    min_reports: int
    delta: float


class AssessIn(BaseModel):
    evidence: dict[str, str] = Field(default_factory=dict)
    symptom_duration_days: float = 0.0
    improving: str = "unknown"
    alert_threshold: float = 0.5
    hosp_threshold: float = 0.5


class NextQuestionOut(BaseModel):
    feature: str
    expected_entropy_reduction: float


class AssessOut(BaseModel):
    posterior: dict[str, float]
    p_covid: float
    covid_alert: bool
    hospitalization_alert: bool
    next_questions: list[NextQuestionOut]
    contradiction: str | None = None


class VoiIn(BaseModel):
    evidence: dict[str, str] = Field(default_factory=dict)
    target: str = DEFAULT_VOI_TARGET
    candidates: list[str] | None = None


class VoiOut(BaseModel):
    target: str
    ranking: list[NextQuestionOut]
