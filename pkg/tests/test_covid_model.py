"""Diagnostic model: roster, provenance, structural assumptions, backward inference."""

import numpy as np
import pytest

from ctlab.bn import BayesianNetwork, Node, network_to_dict, posterior_marginal
from ctlab.bn.network import parent_combinations
from ctlab.covid import (
    REQUIRED_ROSTER,
    AssumptionViolated,
    MissingRequiredNode,
    backward_inference_check,
    build_default_model,
    default_model_path,
    load_model,
)
from ctlab.covid.model import validate_model


@pytest.fixture(scope="module")
def model():
    return load_model()


def test_roster_complete(model):
    for nid in REQUIRED_ROSTER:
        assert nid in model.network


def test_covid_states_order_pinned(model):
    assert model.covid_states == ("none", "mild", "severe")


def test_provenance_values(model):
    for nid in model.roster_ids():
        assert model.provenance(nid) in {"huang2020", "estimated"}


def test_every_node_has_roster_role(model):
    for node in model.network:
        assert node.annotations.get("roster_role"), node.id


def test_shipped_file_matches_builder(model):
    """The packaged JSON must stay in sync with the programmatic builder."""
    built = network_to_dict(build_default_model())
    shipped = network_to_dict(model.network)
    assert built == shipped


def test_shipped_file_exists():
    assert default_model_path().is_file()


def test_no_contact_implies_no_covid(model):
    post = posterior_marginal(model.network, {"recent_contact": "no"}, "covid_status")
    assert post["none"] == pytest.approx(1.0, abs=1e-9)
    assert post["mild"] == pytest.approx(0.0, abs=1e-9)
    assert post["severe"] == pytest.approx(0.0, abs=1e-9)


def test_no_contact_beats_symptoms(model):
    ev = {"recent_contact": "no", "fever": "present", "cough": "present"}
    post = posterior_marginal(model.network, ev, "covid_status")
    assert post["none"] == pytest.approx(1.0, abs=1e-9)


def test_positive_test_excludes_none(model):
    post = posterior_marginal(model.network, {"test_result": "positive"}, "covid_status")
    assert post["none"] == pytest.approx(0.0, abs=1e-9)
    assert post["mild"] + post["severe"] == pytest.approx(1.0, abs=1e-9)


def _with_imperfect_test(net: BayesianNetwork) -> BayesianNetwork:
    nodes = []
    for node in net:
        if node.id == "test_result":
            cpt = np.array(node.cpt, copy=True)
            none_row = list(parent_combinations(net, node)).index(("none",))
            pos = node.states.index("positive")
            cpt[none_row][pos] = 0.01
            cpt[none_row] = cpt[none_row] / cpt[none_row].sum()
            node = Node(node.id, node.states, node.parents, cpt, node.annotations)
        nodes.append(node)
    return BayesianNetwork(nodes)


def test_imperfect_test_model_rejected():
    bad = _with_imperfect_test(build_default_model())
    with pytest.raises(AssumptionViolated, match="perfect test"):
        validate_model(bad)


def test_contact_leak_model_rejected():
    net = build_default_model()
    nodes = []
    for node in net:
        if node.id == "covid_status":
            cpt = np.array(node.cpt, copy=True)
            axis = node.parents.index("recent_contact")
            for r, combo in enumerate(parent_combinations(net, node)):
                if combo[axis] == "no":
                    cpt[r] = [0.98, 0.01, 0.01]
            node = Node(node.id, node.states, node.parents, cpt, node.annotations)
        nodes.append(node)
    with pytest.raises(AssumptionViolated, match="no contact"):
        validate_model(BayesianNetwork(nodes))


def test_missing_required_node_rejected():
    net = build_default_model()
    pruned = BayesianNetwork([n for n in net if n.id != "oxygen_saturation"])
    with pytest.raises(MissingRequiredNode, match="oxygen_saturation"):
        validate_model(pruned)


def test_missing_provenance_rejected():
    net = build_default_model()
    nodes = []
    for node in net:
        if node.id == "fever":
            ann = {k: v for k, v in node.annotations.items() if k != "provenance"}
            node = Node(node.id, node.states, node.parents, node.cpt, ann)
        nodes.append(node)
    with pytest.raises(AssumptionViolated, match="provenance"):
        validate_model(BayesianNetwork(nodes))


def test_backward_inference_raises_risk_factors(model):
    """Symptomatic-contact evidence should raise obesity and over-65 posteriors."""
    checks = backward_inference_check(model)
    for nid, risky_state in [("obesity", "yes"), ("age_group", "over65")]:
        prior, post = checks[nid]
        assert post[risky_state] > prior[risky_state]


def test_backward_inference_skips_observed_nodes(model):
    checks = backward_inference_check(model, {"obesity": "yes", "fever": "present"})
    assert "obesity" not in checks
    assert "age_group" in checks


def test_single_symptom_raises_p_covid(model):
    prior = posterior_marginal(model.network, {"recent_contact": "yes"}, "covid_status")
    p0 = prior["mild"] + prior["severe"]
    for symptom in ("fever", "cough", "fatigue", "dyspnoea", "myalgia", "headache"):
        ev = {"recent_contact": "yes", symptom: "present"}
        post = posterior_marginal(model.network, ev, "covid_status")
        assert post["mild"] + post["severe"] > p0, symptom


def test_severe_shifts_oxygen_down(model):
    mild = posterior_marginal(model.network, {"covid_status": "mild"}, "oxygen_saturation")
    severe = posterior_marginal(
        model.network, {"covid_status": "severe"}, "oxygen_saturation"
    )
    assert severe["lt_92"] > mild["lt_92"]


def test_loaded_model_is_fully_valid(model):
    # validate_model re-run on the already-loaded network must be a no-op
    validate_model(model.network)
