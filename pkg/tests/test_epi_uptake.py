"""Install-base arithmetic for population-level alerting targets."""

import pytest

from ctlab.epi import Infeasible, required_install_fraction


def test_baseline_scenario():
    r = required_install_fraction(0.60, 0.79)
    assert r.owners_install_fraction == pytest.approx(0.60 / 0.79, abs=1e-9)
    assert r.owners_install_fraction == pytest.approx(0.759, abs=5e-4)


def test_dropout_scenario():
    r = required_install_fraction(0.60, 0.79, dropout=0.06)
    assert r.owners_install_fraction == pytest.approx(
        0.60 / (0.79 * 0.94), abs=1e-9
    )
    assert r.owners_install_fraction == pytest.approx(0.808, abs=5e-4)


def test_discrepancy_note_present_for_quoted_scenario():
    r = required_install_fraction(0.60, 0.79, dropout=0.06)
    assert any("82%" in note for note in r.notes)


def test_population_fraction_is_owners_times_penetration():
    r = required_install_fraction(0.5, 0.8, dropout=0.1)
    assert r.population_install_fraction == pytest.approx(
        r.owners_install_fraction * 0.8, abs=1e-12
    )


def test_infeasible_when_target_exceeds_penetration():
    with pytest.raises(Infeasible):
        required_install_fraction(0.85, 0.79)


def test_infeasible_when_dropout_eats_the_margin():
    required_install_fraction(0.75, 0.79)  # fine without dropout
    with pytest.raises(Infeasible):
        required_install_fraction(0.75, 0.79, dropout=0.10)


def test_zero_dropout_has_no_dropout_note():
    r = required_install_fraction(0.5, 0.8)
    assert not any("dropout" in note.lower() for note in r.notes)


def test_exact_full_coverage_allowed():
    r = required_install_fraction(0.79, 0.79)
    assert r.owners_install_fraction == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "args",
    [
        (-0.1, 0.8, 0.0),
        (1.1, 0.8, 0.0),
        (0.5, 0.0, 0.0),
        (0.5, 1.1, 0.0),
        (0.5, 0.8, -0.2),
        (0.5, 0.8, 1.0),
    ],
)
def test_bad_inputs_rejected(args):
    with pytest.raises(ValueError):
        required_install_fraction(*args)


def test_monotone_in_target():
    prev = 0.0
    for target in [0.1, 0.3, 0.5, 0.7]:
        r = required_install_fraction(target, 0.79)
        assert r.owners_install_fraction >= prev
        prev = r.owners_install_fraction
