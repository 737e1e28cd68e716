"""Durable append-only report log with in-memory index.

One JSON object per line, each line schema-versioned, so the whole state is
exactly recomputable by replay.  Appends are serialized by a lock (single
writer); readers take an immutable snapshot and never block ingestion for
long.  Reports carrying a uid are deduplicated on (uid, timestamp);
anonymous reports have no stable key and are never deduplicated.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "AGE_GROUPS",
    "CorruptLog",
    "IngestResult",
    "LINE_VERSION",
    "MAX_UID_LEN",
    "MAX_FUTURE_SKEW_SECONDS",
    "ReportStore",
    "SurveillanceReport",
    "validate_report",
]

AGE_GROUPS = ("under65", "over65")
MAX_UID_LEN = 64
MAX_FUTURE_SKEW_SECONDS = 24 * 3600.0
LINE_VERSION = 1


class CorruptLog(RuntimeError):
    """A non-final log line failed to parse during replay."""


@dataclass(frozen=True)
class SurveillanceReport:
    """The minimal per-report triple plus timestamp and optional uid."""

    p_covid: float
    latitude: float
    longitude: float
    age_group: str
    timestamp: float  # UTC seconds
    app_uid: str | None = None


def validate_report(report: SurveillanceReport, now: float | None = None) -> str | None:
    """Rejection reason for an invalid report, or None when acceptable."""
    if not isinstance(report.p_covid, (int, float)) or not 0.0 <= report.p_covid <= 1.0:
        return "probability out of range"
    if not -90.0 <= report.latitude <= 90.0 or not -180.0 <= report.longitude <= 180.0:
        return "bad coordinates"
    now = time.time() if now is None else now
    if report.timestamp > now + MAX_FUTURE_SKEW_SECONDS:
        return "future timestamp"
    if report.age_group not in AGE_GROUPS:
        return "bad age group"
    if report.app_uid is not None and (
        not report.app_uid or len(report.app_uid) > MAX_UID_LEN
    ):
        return "bad uid"
    return None


@dataclass(frozen=True)
class IngestResult:
    accepted: bool
    reason: str | None = None
    duplicate: bool = False


def _to_line(report: SurveillanceReport) -> str:
    record = {
        "v": LINE_VERSION,
        "p": report.p_covid,
        "lat": report.latitude,
        "lon": report.longitude,
        "age": report.age_group,
        "ts": report.timestamp,
    }
    if report.app_uid is not None:
        record["uid"] = report.app_uid
    return json.dumps(record, separators=(",", ":"), sort_keys=True)


def _from_record(record: dict) -> SurveillanceReport:
    if record.get("v") != LINE_VERSION:
        raise CorruptLog(f"unsupported log line version {record.get('v')!r}")
    return SurveillanceReport(
        p_covid=record["p"],
        latitude=record["lat"],
        longitude=record["lon"],
        age_group=record["age"],
        timestamp=record["ts"],
        app_uid=record.get("uid"),
    )


class ReportStore:
    """Append-only JSONL log plus an in-memory list of accepted reports.

    Opening the store replays the log; a truncated final line (torn write
    after a crash) is dropped, anything else malformed raises CorruptLog.
    """

    def __init__(self, data_dir: str | Path, filename: str = "reports.jsonl") -> None:
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.path = self.data_dir / filename
        self._lock = threading.Lock()
        self._reports: list[SurveillanceReport] = []
        self._seen: set[tuple[str, float]] = set()
        self._replay()
        self._fh = open(self.path, "a", encoding="utf-8")

    def _replay(self) -> None:
        if not self.path.exists():
            return
        lines = self.path.read_text(encoding="utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        for i, line in enumerate(lines):
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                if i == len(lines) - 1:
                    break  # torn final write; the report was never acknowledged
                raise CorruptLog(f"malformed log line {i + 1}") from None
            report = _from_record(record)
            self._index(report)

    def _index(self, report: SurveillanceReport) -> None:
        if report.app_uid is not None:
            self._seen.add((report.app_uid, report.timestamp))
        self._reports.append(report)

    def ingest(self, report: SurveillanceReport, now: float | None = None) -> IngestResult:
        """Validate, deduplicate, append durably, index. Thread-safe."""
        reason = validate_report(report, now=now)
        if reason is not None:
            return IngestResult(accepted=False, reason=reason)
        with self._lock:
            if report.app_uid is not None:
                key = (report.app_uid, report.timestamp)
                if key in self._seen:
                    return IngestResult(accepted=True, duplicate=True)
            self._fh.write(_to_line(report) + "\n")
            self._fh.flush()
            self._index(report)
        return IngestResult(accepted=True)

    def snapshot(self) -> tuple[SurveillanceReport, ...]:
        """Immutable view of all accepted reports, in ingestion order."""
        with self._lock:
            return tuple(self._reports)

    def __len__(self) -> int:
        with self._lock:
            return len(self._reports)

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.close()

    def __enter__(self) -> "ReportStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
