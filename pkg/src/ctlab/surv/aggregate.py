"""Pure aggregation over report snapshots: grid cells, outbreak flags,
heatmap export, narrowcast selection, per-uid trajectories.

Cells are (row, col) = floor(lat / size), floor(lon / size); windows are
half-open [start, end) in UTC seconds.  Everything here is a pure function
of the report sequence, so results are independent of ingestion order and
exactly reproducible from the log.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .store import AGE_GROUPS, SurveillanceReport

__all__ = [
    "AgeSlice",
    "DEFAULT_CELL_SIZE_DEG",
    "DEFAULT_HIGH_RISK_TAU",
    "GridCellAggregate",
    "InvalidWindow",
    "NarrowcastSelection",
    "OutbreakFlag",
    "Window",
    "aggregate_grid",
    "cell_of",
    "detect_outbreaks",
    "export_heatmap",
    "select_narrowcast",
    "trajectory",
]

DEFAULT_CELL_SIZE_DEG = 0.01  # roughly 1.1 km in latitude
DEFAULT_HIGH_RISK_TAU = 0.5


class InvalidWindow(ValueError):
    """Window bounds are malformed or windows do not line up."""


@dataclass(frozen=True)
class Window:
    start: float
    end: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise InvalidWindow("window bounds must be finite")
        if self.start >= self.end:
            raise InvalidWindow(f"window start {self.start} must precede end {self.end}")

    def __contains__(self, t: float) -> bool:
        return self.start <= t < self.end

    @property
    def length(self) -> float:
        return self.end - self.start


def cell_of(latitude: float, longitude: float, cell_size: float = DEFAULT_CELL_SIZE_DEG) -> tuple[int, int]:
    return (math.floor(latitude / cell_size), math.floor(longitude / cell_size))


@dataclass(frozen=True)
class AgeSlice:
    count: int
    mean_p: float
    high_risk_fraction: float


@dataclass(frozen=True)
class GridCellAggregate:
    cell: tuple[int, int]
    window: Window
    count: int
    mean_p: float
    high_risk_fraction: float
    by_age: dict[str, AgeSlice]


@dataclass(frozen=True)
class OutbreakFlag:
    cell: tuple[int, int]
    window: Window
    count: int
    mean_p: float
    baseline_mean_p: float
    min_reports: int
    delta: float


@dataclass(frozen=True)
class NarrowcastSelection:
    cells: tuple[tuple[int, int], ...]
    window: Window
    app_uids: tuple[str, ...]


def _in_window(reports: Iterable[SurveillanceReport], window: Window):
    return (r for r in reports if r.timestamp in window)


def _slice(reports: Sequence[SurveillanceReport], tau: float) -> AgeSlice:
    count = len(reports)
    if count == 0:
        return AgeSlice(0, 0.0, 0.0)
    mean = math.fsum(r.p_covid for r in reports) / count
    high = sum(1 for r in reports if r.p_covid >= tau) / count
    return AgeSlice(count, mean, high)


def aggregate_grid(
    reports: Iterable[SurveillanceReport],
    window: Window,
    cell_size: float = DEFAULT_CELL_SIZE_DEG,
    tau: float = DEFAULT_HIGH_RISK_TAU,
) -> list[GridCellAggregate]:
    """Exact aggregates for every non-empty cell, sorted by cell id."""
    if cell_size <= 0:
        raise ValueError("cell_size must be positive")
    buckets: dict[tuple[int, int], list[SurveillanceReport]] = {}
    for r in _in_window(reports, window):
        buckets.setdefault(cell_of(r.latitude, r.longitude, cell_size), []).append(r)
    out: list[GridCellAggregate] = []
    for cell in sorted(buckets):
        rs = buckets[cell]
        whole = _slice(rs, tau)
        by_age = {
            age: _slice([r for r in rs if r.age_group == age], tau) for age in AGE_GROUPS
        }
        out.append(
            GridCellAggregate(
                cell=cell,
                window=window,
                count=whole.count,
                mean_p=whole.mean_p,
                high_risk_fraction=whole.high_risk_fraction,
                by_age=by_age,
            )
        )
    return out


def detect_outbreaks(
    reports: Iterable[SurveillanceReport],
    current: Window,
    previous: Window,
    min_reports: int = 5,
    delta: float = 0.2,
    cell_size: float = DEFAULT_CELL_SIZE_DEG,
    tau: float = DEFAULT_HIGH_RISK_TAU,
) -> list[OutbreakFlag]:
    """Cells whose support and mean probability rise above their own recent
    baseline: count >= min_reports and mean_p >= previous mean_p + delta.

    The two windows must be adjacent and equally long; cells with no
    reports in the previous window use baseline 0.
    """
    if abs(previous.end - current.start) > 1e-9:
        raise InvalidWindow("previous window must end where the current one starts")
    if abs(previous.length - current.length) > 1e-9:
        raise InvalidWindow("windows must have equal length")
    reports = list(reports)
    now = aggregate_grid(reports, current, cell_size, tau)
    base = {a.cell: a.mean_p for a in aggregate_grid(reports, previous, cell_size, tau)}
    flags = []
    for agg in now:
        baseline = base.get(agg.cell, 0.0)
        if agg.count >= min_reports and agg.mean_p >= baseline + delta:
            flags.append(
                OutbreakFlag(
                    cell=agg.cell,
                    window=current,
                    count=agg.count,
                    mean_p=agg.mean_p,
                    baseline_mean_p=baseline,
                    min_reports=min_reports,
                    delta=delta,
                )
            )
    return flags


def _age_properties(s: AgeSlice) -> dict:
    return {"count": s.count, "mean_p": s.mean_p, "high_risk_fraction": s.high_risk_fraction}


def export_heatmap(
    reports: Iterable[SurveillanceReport],
    window: Window,
    cell_size: float = DEFAULT_CELL_SIZE_DEG,
    tau: float = DEFAULT_HIGH_RISK_TAU,
) -> bytes:
    """GeoJSON FeatureCollection, one square polygon per non-empty cell.

    Output is canonical (cells sorted, keys sorted, fixed separators), so a
    fixed report set always exports byte-identical documents.
    """
    features = []
    for agg in aggregate_grid(reports, window, cell_size, tau):
        row, col = agg.cell
        lat0, lat1 = row * cell_size, (row + 1) * cell_size
        lon0, lon1 = col * cell_size, (col + 1) * cell_size
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Polygon",
                    "coordinates": [
                        [[lon0, lat0], [lon1, lat0], [lon1, lat1], [lon0, lat1], [lon0, lat0]]
                    ],
                },
                "properties": {
                    "cell": [row, col],
                    "count": agg.count,
                    "mean_p": agg.mean_p,
                    "high_risk_fraction": agg.high_risk_fraction,
                    "age": {age: _age_properties(s) for age, s in agg.by_age.items()},
                },
            }
        )
    doc = {"type": "FeatureCollection", "features": features}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def select_narrowcast(
    reports: Iterable[SurveillanceReport],
    cells: Iterable[tuple[int, int]],
    window: Window,
    cell_size: float = DEFAULT_CELL_SIZE_DEG,
) -> NarrowcastSelection:
    """Sorted, deduplicated uids seen in the given cells during the window.

    Anonymous reports are never selected; nothing beyond the ingested
    triples is consulted.
    """
    cells = tuple(sorted(set(cells)))
    if not cells:
        raise ValueError("cells must be non-empty")
    wanted = set(cells)
    uids = {
        r.app_uid
        for r in _in_window(reports, window)
        if r.app_uid is not None and cell_of(r.latitude, r.longitude, cell_size) in wanted
    }
    return NarrowcastSelection(cells=cells, window=window, app_uids=tuple(sorted(uids)))


def trajectory(reports: Iterable[SurveillanceReport], uid: str) -> list[SurveillanceReport]:
    """All reports of one uid, ascending timestamp (stable for ties)."""
    if not uid:
        raise ValueError("uid must be non-empty")
    return sorted(
        (r for r in reports if r.app_uid == uid), key=lambda r: r.timestamp
    )
