"""Synthetic proximity-event graphs."""

import pytest

from ctlab.epi import ContactEvent, ContactGraph, Individual, InfectionEdge, generate_contact_graph


def test_same_seed_same_graph():
    a = generate_contact_graph(200, seed=42)
    b = generate_contact_graph(200, seed=42)
    assert a.events == b.events
    assert a.individuals == b.individuals


def test_different_seed_different_graph():
    a = generate_contact_graph(200, seed=1)
    b = generate_contact_graph(200, seed=2)
    assert a.events != b.events


def test_single_individual_has_no_events():
    g = generate_contact_graph(1, seed=0)
    assert g.events == ()


def test_mean_close_contacts_near_configured_rate():
    g = generate_contact_graph(10_000, mean_close_contacts=36.0, seed=7)
    assert g.mean_close_contacts_per_window() == pytest.approx(36.0, abs=1.0)


def test_close_threshold_is_two_metres():
    near = ContactEvent(0, 1, 1.0, 2.0)
    far = ContactEvent(0, 1, 1.0, 2.1)
    assert near.close
    assert not far.close


def test_far_events_not_returned_as_close_contacts():
    g = generate_contact_graph(500, seed=3)
    far_pairs = {
        (e.a, e.b, e.time_day) for e in g.events if not e.close
    }
    for uid in range(50):
        for t, other in g.close_contacts_of(uid, 0.0, g.horizon_days + 1):
            assert (uid, other, t) not in far_pairs
            assert (other, uid, t) not in far_pairs


def test_close_contacts_window_is_half_open():
    events = (
        ContactEvent(0, 1, 2.0, 1.0),
        ContactEvent(0, 2, 4.0, 1.0),
    )
    inds = tuple(Individual(i, True, 6.0, False) for i in range(3))
    g = ContactGraph(inds, events, horizon_days=14.0, seed=0)
    assert [c for _, c in g.close_contacts_of(0, 2.0, 4.0)] == [1]
    assert [c for _, c in g.close_contacts_of(0, 2.0, 4.5)] == [1, 2]
    assert g.close_contacts_of(0, 4.0, 4.0) == []


def test_close_contacts_symmetric():
    events = (ContactEvent(3, 7, 1.0, 0.5),)
    inds = tuple(Individual(i, True, 6.0, False) for i in range(8))
    g = ContactGraph(inds, events, horizon_days=14.0, seed=0)
    assert [c for _, c in g.close_contacts_of(3, 0.0, 14.0)] == [7]
    assert [c for _, c in g.close_contacts_of(7, 0.0, 14.0)] == [3]


def test_events_sorted_by_time():
    g = generate_contact_graph(300, seed=11)
    times = [e.time_day for e in g.events]
    assert times == sorted(times)


def test_event_times_on_half_day_grid():
    g = generate_contact_graph(300, seed=11)
    for e in g.events:
        assert (e.time_day / 0.5) == pytest.approx(round(e.time_day / 0.5), abs=1e-9)
        assert 0.0 <= e.time_day <= g.horizon_days


def test_no_self_contacts():
    g = generate_contact_graph(300, seed=5)
    for e in g.events:
        assert e.a != e.b


def test_onset_days_inside_window():
    g = generate_contact_graph(1000, onset_window=(5.5, 11.5), seed=9)
    for ind in g.individuals:
        assert 5.5 <= ind.symptomatic_onset_day <= 11.5


def test_app_fraction_close_to_request():
    g = generate_contact_graph(10_000, app_fraction=0.6, seed=13)
    frac = sum(1 for i in g.individuals if i.has_app) / g.n
    assert frac == pytest.approx(0.6, abs=0.02)


def test_asymptomatic_fraction_close_to_request():
    g = generate_contact_graph(10_000, asymptomatic_fraction=0.3, seed=13)
    frac = sum(1 for i in g.individuals if i.asymptomatic) / g.n
    assert frac == pytest.approx(0.3, abs=0.02)


def test_with_infection_edges_is_nondestructive():
    g = generate_contact_graph(100, seed=21)
    edge = InfectionEdge(0, 1, 3.0)
    g2 = g.with_infection_edges((edge,))
    assert g.infection_edges == ()
    assert g2.infection_edges == (edge,)
    assert g2.events == g.events
    assert g2.close_contacts_of(0, 0.0, 14.0) == g.close_contacts_of(0, 0.0, 14.0)


def test_bad_generator_inputs_rejected():
    with pytest.raises(ValueError):
        generate_contact_graph(0)
    with pytest.raises(ValueError):
        generate_contact_graph(10, app_fraction=1.5)
    with pytest.raises(ValueError):
        generate_contact_graph(10, mean_close_contacts=-1.0)
