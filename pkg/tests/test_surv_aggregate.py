"""Grid aggregation, outbreak flags, heatmap export, narrowcast, trajectories."""

import json
import math
import random

import pytest

from ctlab.surv import (
    InvalidWindow,
    SurveillanceReport,
    Window,
    aggregate_grid,
    cell_of,
    detect_outbreaks,
    export_heatmap,
    select_narrowcast,
    trajectory,
)

T0 = 1_700_000_000.0
WIN = Window(T0, T0 + 3600)


def _report(p=0.5, lat=51.505, lon=-0.115, age="under65", ts=T0 + 10, uid=None):
    return SurveillanceReport(p, lat, lon, age, ts, uid)


def test_window_requires_ordered_finite_bounds():
    with pytest.raises(InvalidWindow):
        Window(10.0, 10.0)
    with pytest.raises(InvalidWindow):
        Window(10.0, 5.0)
    with pytest.raises(InvalidWindow):
        Window(float("nan"), 5.0)


def test_window_contains_half_open():
    assert T0 in WIN
    assert T0 + 3599.999 in WIN
    assert T0 + 3600 not in WIN
    assert T0 - 0.001 not in WIN


def test_cell_of_floor_semantics():
    assert cell_of(51.505, -0.115) == (5150, -12)
    assert cell_of(0.0, 0.0) == (0, 0)
    assert cell_of(-0.001, 0.001) == (-1, 0)
    assert cell_of(51.505, -0.115, cell_size=0.1) == (515, -2)


def test_hand_aggregation():
    reports = [_report(p=0.2), _report(p=0.4), _report(p=0.9)]
    cells = aggregate_grid(reports, WIN)
    assert len(cells) == 1
    agg = cells[0]
    assert agg.cell == (5150, -12)
    assert agg.count == 3
    assert agg.mean_p == pytest.approx(0.5, abs=1e-12)
    assert agg.high_risk_fraction == pytest.approx(1 / 3, abs=1e-12)


def test_age_slices_partition_the_cell():
    reports = [
        _report(p=0.2, age="under65"),
        _report(p=0.8, age="over65"),
        _report(p=0.6, age="over65"),
    ]
    agg = aggregate_grid(reports, WIN)[0]
    assert agg.by_age["under65"].count == 1
    assert agg.by_age["over65"].count == 2
    assert agg.by_age["under65"].count + agg.by_age["over65"].count == agg.count
    assert agg.by_age["over65"].mean_p == pytest.approx(0.7, abs=1e-12)


def test_window_filter_half_open():
    reports = [
        _report(ts=T0 - 1),
        _report(ts=T0),
        _report(ts=T0 + 3599),
        _report(ts=T0 + 3600),
    ]
    agg = aggregate_grid(reports, WIN)
    assert agg[0].count == 2


def test_aggregation_order_independent():
    rng = random.Random(5)
    reports = [
        _report(
            p=rng.random(),
            lat=51.0 + rng.random() * 0.1,
            lon=-0.2 + rng.random() * 0.1,
            ts=T0 + rng.random() * 3000,
        )
        for _ in range(500)
    ]
    shuffled = reports[:]
    rng.shuffle(shuffled)
    assert aggregate_grid(reports, WIN) == aggregate_grid(shuffled, WIN)


def test_brute_force_cell_means():
    rng = random.Random(11)
    reports = [
        _report(
            p=rng.random(),
            lat=51.0 + rng.random() * 0.05,
            lon=rng.random() * 0.05,
            ts=T0 + rng.random() * 3000,
        )
        for _ in range(300)
    ]
    for agg in aggregate_grid(reports, WIN):
        members = [
            r
            for r in reports
            if cell_of(r.latitude, r.longitude) == agg.cell and r.timestamp in WIN
        ]
        assert agg.count == len(members)
        assert agg.mean_p == pytest.approx(
            math.fsum(r.p_covid for r in members) / len(members), abs=1e-12
        )
        assert min(r.p_covid for r in members) <= agg.mean_p <= max(
            r.p_covid for r in members
        )


def test_counts_sum_to_window_total():
    rng = random.Random(2)
    reports = [
        _report(lat=51 + rng.random(), lon=rng.random(), ts=T0 + rng.random() * 3599)
        for _ in range(200)
    ]
    cells = aggregate_grid(reports, WIN)
    assert sum(c.count for c in cells) == 200


def test_cells_sorted():
    reports = [
        _report(lat=52.0, lon=1.0),
        _report(lat=51.0, lon=-1.0),
        _report(lat=51.0, lon=-2.0),
    ]
    cells = [c.cell for c in aggregate_grid(reports, WIN)]
    assert cells == sorted(cells)


PREV = Window(T0 - 3600, T0)


def test_outbreak_flagged_when_mean_jumps():
    reports = [_report(p=0.2, ts=T0 - 1800)] + [
        _report(p=0.8, ts=T0 + i) for i in range(5)
    ]
    flags = detect_outbreaks(reports, WIN, PREV, min_reports=5, delta=0.2)
    assert len(flags) == 1
    flag = flags[0]
    assert flag.cell == (5150, -12)
    assert flag.count == 5
    assert flag.baseline_mean_p == pytest.approx(0.2, abs=1e-12)


def test_outbreak_needs_min_reports():
    reports = [_report(p=0.9, ts=T0 + i) for i in range(4)]
    assert detect_outbreaks(reports, WIN, PREV, min_reports=5) == []


def test_outbreak_needs_mean_rise():
    reports = [_report(p=0.5, ts=T0 - 1800)] + [
        _report(p=0.6, ts=T0 + i) for i in range(6)
    ]
    assert detect_outbreaks(reports, WIN, PREV, min_reports=5, delta=0.2) == []


def test_outbreak_baseline_zero_for_new_cell():
    reports = [_report(p=0.25, ts=T0 + i) for i in range(5)]
    flags = detect_outbreaks(reports, WIN, PREV, min_reports=5, delta=0.2)
    assert len(flags) == 1
    assert flags[0].baseline_mean_p == 0.0


def test_outbreak_windows_must_be_adjacent():
    with pytest.raises(InvalidWindow, match="previous window"):
        detect_outbreaks([], WIN, Window(T0 - 7200, T0 - 3600))


def test_outbreak_windows_must_match_length():
    with pytest.raises(InvalidWindow, match="equal length"):
        detect_outbreaks([], WIN, Window(T0 - 7200, T0))


def test_heatmap_is_canonical_bytes():
    rng = random.Random(3)
    reports = [
        _report(p=rng.random(), lat=51 + rng.random() * 0.03, ts=T0 + rng.random() * 100)
        for _ in range(100)
    ]
    shuffled = reports[:]
    rng.shuffle(shuffled)
    blob = export_heatmap(reports, WIN)
    assert isinstance(blob, bytes)
    assert blob == export_heatmap(shuffled, WIN)


def test_heatmap_geometry_matches_cell():
    blob = export_heatmap([_report()], WIN)
    doc = json.loads(blob)
    assert doc["type"] == "FeatureCollection"
    feature = doc["features"][0]
    assert feature["properties"]["cell"] == [5150, -12]
    ring = feature["geometry"]["coordinates"][0]
    lons = [p[0] for p in ring]
    lats = [p[1] for p in ring]
    assert min(lons) == pytest.approx(-0.12)
    assert max(lons) == pytest.approx(-0.11)
    assert min(lats) == pytest.approx(51.50)
    assert max(lats) == pytest.approx(51.51)
    assert ring[0] == ring[-1]  # closed ring
    # the report's location falls inside its cell square
    assert min(lats) <= 51.505 < max(lats)
    assert min(lons) <= -0.115 < max(lons)


def test_heatmap_carries_age_slices():
    doc = json.loads(export_heatmap([_report(age="over65")], WIN))
    props = doc["features"][0]["properties"]
    assert props["age"]["over65"]["count"] == 1
    assert props["age"]["under65"]["count"] == 0


def test_narrowcast_selects_uids_in_cells():
    reports = [
        _report(uid="charlie"),
        _report(uid="alice", ts=T0 + 20),
        _report(uid="alice", ts=T0 + 30),
        _report(uid=None, ts=T0 + 40),  # anonymous, never selected
        _report(uid="bob", lat=40.0, lon=10.0),  # other cell
    ]
    sel = select_narrowcast(reports, [(5150, -12)], WIN)
    assert sel.app_uids == ("alice", "charlie")
    assert sel.cells == ((5150, -12),)


def test_narrowcast_requires_cells():
    with pytest.raises(ValueError):
        select_narrowcast([_report()], [], WIN)


def test_narrowcast_respects_window():
    reports = [_report(uid="late", ts=T0 + 7200)]
    sel = select_narrowcast(reports, [(5150, -12)], WIN)
    assert sel.app_uids == ()


def test_trajectory_sorted_by_time():
    reports = [
        _report(uid="u", ts=T0 + 50, p=0.3),
        _report(uid="u", ts=T0 + 10, p=0.1),
        _report(uid="v", ts=T0 + 20, p=0.9),
    ]
    traj = trajectory(reports, "u")
    assert [r.timestamp for r in traj] == [T0 + 10, T0 + 50]
    assert all(r.app_uid == "u" for r in traj)


def test_trajectory_requires_uid():
    with pytest.raises(ValueError):
        trajectory([_report()], "")


def test_trajectory_empty_for_unknown_uid():
    assert trajectory([_report(uid="u")], "ghost") == []
