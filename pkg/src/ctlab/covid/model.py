"""Diagnostic model wrapper: roster requirements and structural assumptions.

A covid model file is a bn-core network file whose nodes carry two extra
annotations: roster_role (documentation of the node's clinical role) and
provenance ("huang2020" or "estimated") on every CPT.  Loading verifies the
roster and, numerically, the two structural assumptions:

  no contact  =>  P(covid_status = none) = 1
  perfect test =>  P(test_result = positive | covid_status = none) = 0
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..bn import BayesianNetwork, BNError, load_network, validate_network
from ..bn.network import parent_combinations

PROVENANCE_VALUES = {"huang2020", "estimated"}

# node id -> states that must be present (order pinned only for covid_status)
REQUIRED_ROSTER: dict[str, tuple[str, ...]] = {
    "covid_status": ("none", "mild", "severe"),
    "recent_contact": ("no", "yes"),
    "test_result": ("not_tested", "negative", "positive"),
    "fever": ("absent", "present"),
    "cough": ("absent", "present"),
    "fatigue": ("absent", "present"),
    "dyspnoea": ("absent", "present"),
    "myalgia": ("absent", "present"),
    "headache": ("absent", "present"),
    "body_temperature": (),  # discretized bands; labels free
    "oxygen_saturation": (),
    "sex": ("male", "female"),
    "age_group": ("under65", "over65"),
    "obesity": ("no", "yes"),
    "other_condition": ("none", "copd", "flu"),
}

SYMPTOM_NODES = ("fever", "cough", "fatigue", "dyspnoea", "myalgia", "headache")
BACKGROUND_NODES = ("sex", "age_group", "obesity")

ASSUMPTION_TOL = 1e-9


class MissingRequiredNode(BNError):
    pass


class AssumptionViolated(BNError):
    def __init__(self, name: str, detail: str):
        super().__init__(f"{name}: {detail}")
        self.name = name
        self.detail = detail


@dataclass(frozen=True)
class CovidModel:
    """A validated diagnostic network plus its roster metadata."""

    network: BayesianNetwork

    @property
    def covid_states(self) -> tuple[str, ...]:
        return self.network.node("covid_status").states

    def roster_ids(self) -> tuple[str, ...]:
        return self.network.node_ids

    def provenance(self, node_id: str) -> str:
        return str(self.network.node(node_id).annotations.get("provenance", ""))


def _check_roster(net: BayesianNetwork) -> None:
    for nid, states in REQUIRED_ROSTER.items():
        if nid not in net:
            raise MissingRequiredNode(f"model lacks required node {nid!r}")
        node = net.node(nid)
        if nid == "covid_status":
            if node.states != states:
                raise AssumptionViolated(
                    "covid_status states",
                    f"must be {states} in order, got {node.states}",
                )
        elif states and not set(states) <= set(node.states):
            raise MissingRequiredNode(
                f"node {nid!r} missing states {sorted(set(states) - set(node.states))}"
            )
        if len(node.states) < 2:
            raise MissingRequiredNode(f"node {nid!r} needs at least 2 states")
    for nid in REQUIRED_ROSTER:
        prov = net.node(nid).annotations.get("provenance")
        if prov not in PROVENANCE_VALUES:
            raise AssumptionViolated(
                "provenance flag", f"node {nid!r} has provenance {prov!r}"
            )


def _check_assumptions(net: BayesianNetwork) -> None:
    covid = net.node("covid_status")
    if "recent_contact" not in covid.parents:
        raise AssumptionViolated(
            "no contact implies none", "recent_contact is not a parent of covid_status"
        )
    none_idx = covid.states.index("none")
    contact_axis = covid.parents.index("recent_contact")
    for row, combo in zip(covid.cpt, parent_combinations(net, covid)):
        if combo[contact_axis] == "no" and abs(row[none_idx] - 1.0) > ASSUMPTION_TOL:
            raise AssumptionViolated(
                "no contact implies none",
                f"covid_status row {combo} has P(none) = {row[none_idx]:.6g}",
            )

    test = net.node("test_result")
    if test.parents != ("covid_status",):
        raise AssumptionViolated(
            "perfect test", f"test_result parents must be (covid_status,), got {test.parents}"
        )
    pos_idx = test.states.index("positive")
    for row, combo in zip(test.cpt, parent_combinations(net, test)):
        if combo[0] == "none" and row[pos_idx] > ASSUMPTION_TOL:
            raise AssumptionViolated(
                "perfect test", f"P(positive | none) = {row[pos_idx]:.6g}"
            )


def validate_model(net: BayesianNetwork) -> CovidModel:
    report = validate_network(net)
    if not report.ok:
        raise BNError("invalid network: " + "; ".join(report.violations))
    _check_roster(net)
    _check_assumptions(net)
    return CovidModel(network=net)


def load_model(path: str | Path | None = None) -> CovidModel:
    """Load and validate a model file; None means the shipped default."""
    return validate_model(load_network(path if path is not None else default_model_path()))


def default_model_path() -> Path:
    """Path of the shipped model file."""
    return Path(resources.files("ctlab.covid").joinpath("data/covid_model.json"))
