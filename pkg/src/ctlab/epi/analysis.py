"""Headline analyses on top of the cohort recursion.

``table1`` reproduces the adoption-sweep table: for each app install
fraction and each milestone day it reports three views of epidemic
pressure.  ``sweet_spot_search`` finds the smallest install fraction whose
run satisfies a containment criterion, by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .cohort import CohortParams, CohortTimeSeries, run_cohort

__all__ = [
    "CRITERIA",
    "CriterionNeverSatisfied",
    "CriterionNotMonotone",
    "Table1Row",
    "default_sweet_spot_template",
    "sweet_spot_search",
    "table1",
    "windowed_series",
]

DEFAULT_ADOPTIONS = (0.80, 0.90, 0.95)
DEFAULT_DAYS = (12.0, 14.0, 16.0, 18.0, 20.0)
DEFAULT_WINDOW = 2.0


class CriterionNeverSatisfied(RuntimeError):
    """The criterion fails even at full adoption."""


class CriterionNotMonotone(RuntimeError):
    """Sampled satisfaction flips back to False as adoption grows."""


@dataclass(frozen=True)
class Table1Row:
    """One (adoption, day) cell of the sweep table.

    * ``direct_cumulative``: exposures created by the index case itself
      (first generation only), cumulative to ``day``.
    * ``windowed_new``: all-generations new exposures in ``(day - w, day]``.
    * ``windowed_per_isolation``: ``windowed_new`` divided by the number of
      individuals entering isolation in the same window; None while nobody
      isolates yet.
    """

    adoption: float
    day: float
    direct_cumulative: float
    windowed_new: float
    windowed_per_isolation: float | None


def table1(
    template: CohortParams | None = None,
    adoptions: Sequence[float] = DEFAULT_ADOPTIONS,
    days: Sequence[float] = DEFAULT_DAYS,
    window_days: float = DEFAULT_WINDOW,
) -> list[Table1Row]:
    """Sweep adoption levels and milestone days; one row per combination."""
    template = template or CohortParams()
    rows: list[Table1Row] = []
    for p in adoptions:
        ts = run_cohort(template.with_adoption(p))
        for day in days:
            w = ts.windowed_new_exposures(day, window_days)
            isolated = ts.windowed_isolations(day, window_days)
            rows.append(
                Table1Row(
                    adoption=p,
                    day=day,
                    direct_cumulative=ts.generation_cumulative_at(1, day),
                    windowed_new=w,
                    windowed_per_isolation=(w / isolated) if isolated > 0 else None,
                )
            )
    return rows


def windowed_series(
    ts: CohortTimeSeries, start_day: float, width_days: float = DEFAULT_WINDOW
) -> list[tuple[float, float]]:
    """(day, windowed new exposures) at every grid mark from start to horizon."""
    return [
        (t, ts.windowed_new_exposures(t, width_days))
        for t in ts.times
        if t >= start_day - 1e-9
    ]


def _peak_bounded(ts: CohortTimeSeries, start_day: float, width_days: float) -> bool:
    """After ``start_day`` no window may exceed the pre-``start_day`` peak."""
    pre = [ts.windowed_new_exposures(t, width_days) for t in ts.times if t <= start_day + 1e-9]
    peak = max(pre) if pre else 0.0
    tol = 1e-9 * max(1.0, peak)
    return all(w <= peak + tol for _, w in windowed_series(ts, start_day, width_days))


def _monotone_windows(ts: CohortTimeSeries, start_day: float, width_days: float) -> bool:
    """Windowed new exposures never increase from ``start_day`` onwards."""
    series = windowed_series(ts, start_day, width_days)
    tol = 1e-9 * max(1.0, max((w for _, w in series), default=0.0))
    return all(b <= a + tol for (_, a), (_, b) in zip(series, series[1:]))


def _extinguished(ts: CohortTimeSeries, start_day: float, width_days: float) -> bool:
    """No new exposures at all after ``start_day``."""
    return all(w <= 1e-9 for _, w in windowed_series(ts, start_day, width_days)[1:])


CRITERIA: dict[str, Callable[[CohortTimeSeries, float, float], bool]] = {
    "peak_bounded": _peak_bounded,
    "monotone_windows": _monotone_windows,
    "extinguished": _extinguished,
}

DEFAULT_CRITERION = "peak_bounded"


def default_sweet_spot_template() -> CohortParams:
    """Template used by the sweet-spot search when none is given.

    Reporting is universal here (``contact_needs_app``): when only
    app-to-app pairs can be alerted, the chain no-app parent -> app child
    -> no-app grandchild stays supercritical until adoption approaches 1,
    so no interesting threshold exists below ~0.96.
    """
    return CohortParams(link_model="contact_needs_app")


def sweet_spot_search(
    template: CohortParams | None = None,
    criterion: str | Callable[[CohortTimeSeries], bool] = DEFAULT_CRITERION,
    start_day: float = 14.0,
    window_days: float = DEFAULT_WINDOW,
    resolution: float = 0.001,
    monotonicity_samples: int = 11,
) -> float:
    """Least adoption p in [0, 1] whose cohort run satisfies ``criterion``.

    ``criterion`` is a registry name from :data:`CRITERIA` or any predicate
    on a :class:`CohortTimeSeries`.  Bisection to ``resolution``; the
    assumed monotonicity (once satisfied, satisfied for every larger p) is
    spot-checked on an even sample grid and violations raise
    :class:`CriterionNotMonotone`.
    """
    if not 0 < resolution <= 0.5:
        raise ValueError("resolution must be in (0, 0.5]")
    template = template or default_sweet_spot_template()
    if callable(criterion):
        check = lambda ts, _s, _w: criterion(ts)
    elif criterion in CRITERIA:
        check = CRITERIA[criterion]
    else:
        raise KeyError(f"unknown criterion {criterion!r}; known: {sorted(CRITERIA)}")

    def ok(p: float) -> bool:
        return check(run_cohort(template.with_adoption(p)), start_day, window_days)

    if not ok(1.0):
        raise CriterionNeverSatisfied(
            f"criterion {criterion!r} fails even at adoption 1.0"
        )
    if ok(0.0):
        return 0.0

    lo, hi = 0.0, 1.0  # invariant: not ok(lo), ok(hi)
    while hi - lo > resolution:
        mid = (lo + hi) / 2.0
        if ok(mid):
            hi = mid
        else:
            lo = mid

    if monotonicity_samples > 1:
        seen_ok = False
        for i in range(monotonicity_samples):
            p = i / (monotonicity_samples - 1)
            sat = ok(p)
            if seen_ok and not sat:
                raise CriterionNotMonotone(
                    f"criterion {criterion!r} satisfied below p={p} but not at it"
                )
            seen_ok = seen_ok or sat
    return hi
