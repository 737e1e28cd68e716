"""Minimal-privacy surveillance: ingest (probability, location, age) triples,
persist them in an append-only log, aggregate on a geographic grid."""

from .store import (
    CorruptLog,
    IngestResult,
    ReportStore,
    SurveillanceReport,
    validate_report,
)
from .aggregate import (
    AgeSlice,
    GridCellAggregate,
    InvalidWindow,
    NarrowcastSelection,
    OutbreakFlag,
    Window,
    aggregate_grid,
    cell_of,
    detect_outbreaks,
    export_heatmap,
    select_narrowcast,
    trajectory,
)

__all__ = [
    "AgeSlice",
    "CorruptLog",
    "GridCellAggregate",
    "IngestResult",
    "InvalidWindow",
    "NarrowcastSelection",
    "OutbreakFlag",
    "ReportStore",
    "SurveillanceReport",
    "Window",
    "aggregate_grid",
    "cell_of",
    "detect_outbreaks",
    "export_heatmap",
    "select_narrowcast",
    "trajectory",
    "validate_report",
]
