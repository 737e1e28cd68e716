"""Case assessment: posterior, alerts, and next-best questions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..bn import (
    Distribution,
    EmptyCandidateSet,
    ImpossibleEvidence,
    entropy,
    most_informative_features,
    posterior_marginal,
)
from ..bn.network import check_evidence
from .model import BACKGROUND_NODES, CovidModel, SYMPTOM_NODES

IMPROVING_VALUES = ("yes", "no", "unknown")


@dataclass(frozen=True)
class CaseInput:
    evidence: Mapping[str, str] = field(default_factory=dict)
    symptom_duration_days: float = 0.0
    improving: str = "unknown"

    def __post_init__(self):
        if self.symptom_duration_days < 0:
            raise ValueError("symptom_duration_days must be >= 0")
        if self.improving not in IMPROVING_VALUES:
            raise ValueError(f"improving must be one of {IMPROVING_VALUES}")


@dataclass(frozen=True)
class AlertPolicy:
    alert_threshold: float = 0.5
    hosp_threshold: float = 0.5
    hosp_min_duration_days: float = 7.0
    hosp_requires_not_improving: bool = True

    def __post_init__(self):
        for name in ("alert_threshold", "hosp_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.hosp_min_duration_days < 0:
            raise ValueError("hosp_min_duration_days must be >= 0")


@dataclass(frozen=True)
class RiskReport:
    posterior: Distribution | None
    p_covid: float | None
    covid_alert: bool
    hospitalization_alert: bool
    next_questions: tuple[tuple[str, float], ...]
    policy: AlertPolicy
    contradiction: str | None = None


def _next_questions(model: CovidModel, evidence: Mapping[str, str], k: int):
    candidates = [
        nid for nid in model.network.node_ids
        if nid != "covid_status" and nid not in evidence
    ]
    if not candidates:
        return ()
    try:
        ranking = most_informative_features(
            model.network, evidence, "covid_status", candidates
        )
    except EmptyCandidateSet:
        return ()
    return tuple(ranking[:k])


def assess(
    model: CovidModel,
    case: CaseInput,
    policy: AlertPolicy | None = None,
    top_k_questions: int = 3,
) -> RiskReport:
    """Posterior over covid_status plus alert decisions.

    Contradictory evidence (P(ev) = 0) is reported in the contradiction
    field rather than raised, so callers can display it.
    """
    policy = policy or AlertPolicy()
    check_evidence(model.network, case.evidence)
    try:
        posterior = posterior_marginal(model.network, case.evidence, "covid_status")
    except ImpossibleEvidence as exc:
        return RiskReport(
            posterior=None,
            p_covid=None,
            covid_alert=False,
            hospitalization_alert=False,
            next_questions=(),
            policy=policy,
            contradiction=f"evidence is self-contradictory under the model ({exc})",
        )

    p_covid = posterior["mild"] + posterior["severe"]
    covid_alert = p_covid >= policy.alert_threshold
    hosp = posterior["severe"] >= policy.hosp_threshold
    hosp = hosp and case.symptom_duration_days >= policy.hosp_min_duration_days
    if policy.hosp_requires_not_improving:
        hosp = hosp and case.improving == "no"

    return RiskReport(
        posterior=posterior,
        p_covid=p_covid,
        covid_alert=covid_alert,
        hospitalization_alert=hosp,
        next_questions=_next_questions(model, case.evidence, top_k_questions),
        policy=policy,
    )


def default_backward_evidence() -> dict[str, str]:
    """All six symptoms present plus recent contact."""
    evidence = {s: "present" for s in SYMPTOM_NODES}
    evidence["recent_contact"] = "yes"
    return evidence


def backward_inference_check(
    model: CovidModel,
    evidence: Mapping[str, str] | None = None,
) -> dict[str, tuple[Distribution, Distribution]]:
    """Prior vs posterior for the background nodes under symptom evidence."""
    evidence = dict(evidence) if evidence is not None else default_backward_evidence()
    out: dict[str, tuple[Distribution, Distribution]] = {}
    for nid in BACKGROUND_NODES:
        if nid in evidence:
            continue
        prior = posterior_marginal(model.network, {}, nid)
        post = posterior_marginal(model.network, evidence, nid)
        out[nid] = (prior, post)
    return out
