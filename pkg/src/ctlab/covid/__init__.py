"""COVID-19 diagnostic network: model loading, assessment, alert policy."""

from .model import (
    AssumptionViolated,
    CovidModel,
    MissingRequiredNode,
    REQUIRED_ROSTER,
    default_model_path,
    load_model,
)
from .assess import (
    AlertPolicy,
    CaseInput,
    RiskReport,
    assess,
    backward_inference_check,
)
from .defaults import build_default_model

__all__ = [
    "AlertPolicy",
    "AssumptionViolated",
    "CaseInput",
    "CovidModel",
    "MissingRequiredNode",
    "REQUIRED_ROSTER",
    "RiskReport",
    "assess",
    "backward_inference_check",
    "build_default_model",
    "default_model_path",
    "load_model",
]
