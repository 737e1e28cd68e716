"""Construction of the shipped default diagnostic network.

Numbers marked huang2020 follow the hospitalized-cohort symptom frequencies
that the severe state represents (fever 98%, cough 76%, dyspnoea 55%,
fatigue 44%, myalgia 44%, headache 8%).  Everything else is an estimate and
flagged as such; the model file is data and can be replaced wholesale.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..bn import BayesianNetwork
from ..bn.network import Node

TEMP_BANDS = ("lt_37_5", "b_37_5_38_5", "gt_38_5")
SPO2_BANDS = ("ge_95", "b_92_94", "lt_92")

# P(symptom present | covid_status), covid axis of the noisy-OR combination
_COVID_SYMPTOM = {
    "fever": (0.02, 0.80, 0.98),
    "cough": (0.05, 0.60, 0.76),
    "dyspnoea": (0.01, 0.15, 0.55),
    "fatigue": (0.10, 0.35, 0.44),
    "myalgia": (0.05, 0.30, 0.44),
    "headache": (0.04, 0.10, 0.08),
}

# P(symptom present | other_condition) for the shared-symptom confounders
_OTHER_SYMPTOM = {
    "fever": (0.0, 0.10, 0.80),
    "cough": (0.0, 0.70, 0.50),
    "dyspnoea": (0.0, 0.60, 0.05),
}

_SHARED = ("fever", "cough", "dyspnoea")  # other_condition is a parent
_COVID_ONLY = ("fatigue", "myalgia", "headache")

P_CONTACT = 0.30
P_MALE = 0.49
P_OVER65 = 0.16
P_OBESE = 0.10  # prior quoted in the backward-inference discussion
P_OTHER = (0.90, 0.04, 0.06)  # none, copd, flu

P_INFECTED_GIVEN_CONTACT = 0.35
SEVERE_BASE = 0.10
SEVERE_OVER65 = 0.18
SEVERE_OBESE = 0.12
SEVERE_MALE = 0.05


def _binary(p_present: float) -> list[float]:
    return [1.0 - p_present, p_present]


def _noisy_or(p_covid: float, p_other: float) -> float:
    return 1.0 - (1.0 - p_covid) * (1.0 - p_other)


def _covid_status_cpt() -> np.ndarray:
    # parent order: recent_contact, sex, age_group, obesity
    rows = []
    combos = itertools.product(("no", "yes"), ("male", "female"),
                               ("under65", "over65"), ("no", "yes"))
    for contact, sex, age, obese in combos:
        if contact == "no":
            rows.append([1.0, 0.0, 0.0])
            continue
        s = SEVERE_BASE
        s += SEVERE_OVER65 if age == "over65" else 0.0
        s += SEVERE_OBESE if obese == "yes" else 0.0
        s += SEVERE_MALE if sex == "male" else 0.0
        p = P_INFECTED_GIVEN_CONTACT
        rows.append([1.0 - p, p * (1.0 - s), p * s])
    return np.array(rows)


def build_default_model() -> BayesianNetwork:
    nodes: list[Node] = [
        Node("recent_contact", ("no", "yes"), (),
             np.array([_binary(P_CONTACT)]),
             {"roster_role": "exposure", "provenance": "estimated"}),
        Node("sex", ("male", "female"), (),
             np.array([[P_MALE, 1.0 - P_MALE]]),
             {"roster_role": "background", "provenance": "estimated"}),
        Node("age_group", ("under65", "over65"), (),
             np.array([[1.0 - P_OVER65, P_OVER65]]),
             {"roster_role": "background", "provenance": "estimated"}),
        Node("obesity", ("no", "yes"), (),
             np.array([_binary(P_OBESE)]),
             {"roster_role": "background", "provenance": "estimated"}),
        Node("other_condition", ("none", "copd", "flu"), (),
             np.array([list(P_OTHER)]),
             {"roster_role": "confounder", "provenance": "estimated"}),
        Node("covid_status", ("none", "mild", "severe"),
             ("recent_contact", "sex", "age_group", "obesity"),
             _covid_status_cpt(),
             {"roster_role": "target", "provenance": "estimated"}),
        Node("test_result", ("not_tested", "negative", "positive"),
             ("covid_status",),
             np.array([
                 [0.9, 0.1, 0.0],   # none: no false positives
                 [0.7, 0.0, 0.3],   # mild: no false negatives
                 [0.4, 0.0, 0.6],
             ]),
             {"roster_role": "test", "provenance": "estimated"}),
    ]

    for symptom in _SHARED:
        c = _COVID_SYMPTOM[symptom]
        o = _OTHER_SYMPTOM[symptom]
        rows = []
        for ci, oi in itertools.product(range(3), range(3)):
            rows.append(_binary(_noisy_or(c[ci], o[oi])))
        nodes.append(
            Node(symptom, ("absent", "present"),
                 ("covid_status", "other_condition"), np.array(rows),
                 {"roster_role": "symptom", "provenance": "huang2020"})
        )
    for symptom in _COVID_ONLY:
        c = _COVID_SYMPTOM[symptom]
        rows = [_binary(c[i]) for i in range(3)]
        nodes.append(
            Node(symptom, ("absent", "present"), ("covid_status",),
                 np.array(rows),
                 {"roster_role": "symptom", "provenance": "huang2020"})
        )

    nodes.append(
        Node("body_temperature", TEMP_BANDS, ("fever",),
             np.array([
                 [0.92, 0.07, 0.01],
                 [0.05, 0.55, 0.40],
             ]),
             {
                 "roster_role": "measurement",
                 "provenance": "estimated",
                 "unit": "celsius",
                 "bands": {"lt_37_5": [None, 37.5],
                           "b_37_5_38_5": [37.5, 38.5],
                           "gt_38_5": [38.5, None]},
             })
    )
    nodes.append(
        Node("oxygen_saturation", SPO2_BANDS, ("covid_status",),
             np.array([
                 [0.97, 0.025, 0.005],
                 [0.90, 0.08, 0.02],
                 [0.35, 0.40, 0.25],
             ]),
             {
                 "roster_role": "measurement",
                 "provenance": "estimated",
                 "unit": "percent",
                 "bands": {"ge_95": [95.0, None],
                           "b_92_94": [92.0, 95.0],
                           "lt_92": [None, 92.0]},
             })
    )
    return BayesianNetwork(nodes)
