"""Deterministic expected-value cohort recursion on a half-day grid.

The population is tracked as cohorts keyed by (exposure step, app ownership,
alert step, generation, kind).  Each cohort is a non-negative mass of
individuals sharing an identical future, so the recursion is exact in
expectation: no sampling, no variance.

Timeline for one individual exposed at day ``e`` (defaults):

* infectious (and creating new exposures) over ``[e + 5, e + 13)`` -- symptoms
  are universal by ``e + 12`` but the case keeps shedding through the one-day
  reporting delay,
* at ``e + 13`` it self-isolates and simultaneously reports through the app,
* an app report immediately alerts eligible contacts, who isolate at once
  (shedding windows are half-open, so an alert at t blocks contact at t),
  and the alert cascades further down the infection tree.

Whether an alert travels a link depends on ``link_model``:

* ``both_need_app``: a report requires the reporter's app and an alert
  requires the recipient's app.
* ``contact_needs_app``: every case reports (say, via a clinician who feeds
  the system) and only the recipient needs the app.

Two rarer kinds extend shedding: asymptomatic individuals never report and
shed until ``e + 21`` unless alerted; long shedders report on schedule but
keep shedding until ``e + 21`` unless alerted.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field, replace

__all__ = [
    "CohortParams",
    "CohortTimeSeries",
    "InvalidParams",
    "LINK_MODELS",
    "KIND_NORMAL",
    "KIND_ASYMPTOMATIC",
    "KIND_LONG_SHEDDER",
    "run_cohort",
]

LINK_MODELS = ("both_need_app", "contact_needs_app")

KIND_NORMAL = "normal"
KIND_ASYMPTOMATIC = "asymptomatic"
KIND_LONG_SHEDDER = "long_shedder"
_KINDS = (KIND_NORMAL, KIND_ASYMPTOMATIC, KIND_LONG_SHEDDER)

_GRID_TOL = 1e-9


class InvalidParams(ValueError):
    """Raised when cohort parameters are inconsistent."""


def _on_grid(value: float, step: float) -> bool:
    return abs(value / step - round(value / step)) <= _GRID_TOL


@dataclass(frozen=True)
class CohortParams:
    """Parameters of the cohort recursion.

    ``adoption`` is the app install fraction p.  ``contacts_per_window``
    over ``window_days`` sets the close-contact rate; with the defaults
    (36 over 14 days) an unimpeded case creates 36/14 exposures per day
    while infectious, so exactly 18 within its first 7 shedding days
    (days 5 through 12 post-exposure).
    """

    adoption: float = 0.6
    contacts_per_window: float = 36.0
    window_days: float = 14.0
    latent_days: float = 5.0
    symptomatic_window: tuple[float, float] = (5.5, 11.5)
    universal_symptomatic_day: float = 12.0
    isolation_day: float = 13.0
    report_delay_days: float = 1.0
    link_model: str = "both_need_app"
    horizon_days: float = 20.0
    step_days: float = 0.5
    asymptomatic_fraction: float = 0.0
    long_shedder_fraction: float = 0.0
    extended_shedding_day: float = 21.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.adoption <= 1.0:
            raise InvalidParams(f"adoption must be in [0, 1], got {self.adoption}")
        if self.contacts_per_window <= 0 or self.window_days <= 0:
            raise InvalidParams("contact rate must be positive")
        if self.step_days <= 0:
            raise InvalidParams("step_days must be positive")
        lo, hi = self.symptomatic_window
        if not (0 < self.latent_days < lo <= hi <= self.universal_symptomatic_day):
            raise InvalidParams(
                "need 0 < latent_days < symptomatic window <= universal_symptomatic_day"
            )
        if self.universal_symptomatic_day >= self.isolation_day:
            raise InvalidParams("isolation_day must come after universal_symptomatic_day")
        if self.report_delay_days < 0:
            raise InvalidParams("report_delay_days must be non-negative")
        if self.horizon_days < self.isolation_day:
            raise InvalidParams("horizon_days must reach at least isolation_day")
        if self.link_model not in LINK_MODELS:
            raise InvalidParams(f"link_model must be one of {LINK_MODELS}")
        for frac, name in (
            (self.asymptomatic_fraction, "asymptomatic_fraction"),
            (self.long_shedder_fraction, "long_shedder_fraction"),
        ):
            if not 0.0 <= frac <= 1.0:
                raise InvalidParams(f"{name} must be in [0, 1]")
        if self.asymptomatic_fraction + self.long_shedder_fraction > 1.0 + _GRID_TOL:
            raise InvalidParams("kind fractions must sum to at most 1")
        if self.extended_shedding_day < self.isolation_day:
            raise InvalidParams("extended_shedding_day must not precede isolation_day")
        # every day landmark must sit on the grid, otherwise cohorts would
        # straddle marks and the recursion would no longer be exact
        for value, name in (
            (self.latent_days, "latent_days"),
            (self.universal_symptomatic_day, "universal_symptomatic_day"),
            (self.isolation_day, "isolation_day"),
            (self.report_delay_days, "report_delay_days"),
            (self.horizon_days, "horizon_days"),
            (self.extended_shedding_day, "extended_shedding_day"),
        ):
            if not _on_grid(value, self.step_days):
                raise InvalidParams(f"{name}={value} is not a multiple of step_days={self.step_days}")

    @property
    def beta(self) -> float:
        """Close-contact exposures created per infectious day."""
        return self.contacts_per_window / self.window_days

    def with_adoption(self, adoption: float) -> "CohortParams":
        return replace(self, adoption=adoption)


@dataclass(frozen=True)
class CohortTimeSeries:
    """Grid-aligned output of :func:`run_cohort`.

    All series share ``times``; ``new_exposures[k]`` is the expected mass
    of individuals first exposed exactly at ``times[k]``.
    """

    params: CohortParams
    times: tuple[float, ...]
    new_exposures: tuple[float, ...]
    cumulative_exposures: tuple[float, ...]
    actively_shedding: tuple[float, ...]
    newly_isolated: tuple[float, ...]
    new_exposures_by_generation: dict[int, tuple[float, ...]] = field(repr=False)
    app_fraction_by_generation: dict[int, float] = field(repr=False)

    def _index_at_or_before(self, day: float) -> int:
        # rightmost grid index with times[i] <= day (+tolerance)
        i = bisect_right(self.times, day + _GRID_TOL) - 1
        if i < 0:
            raise ValueError(f"day {day} precedes the grid")
        return i

    def _index_before(self, day: float) -> int:
        # number of grid marks with times[i] < day
        return bisect_left(self.times, day - _GRID_TOL)

    def cumulative_at(self, day: float) -> float:
        """Exposures created strictly before ``day``.

        This is the shedding-days reading: by day 12 the index case has shed
        for exactly 7 days, so ``cumulative_at(12.0)`` is beta * 7 = 18.0.
        The stored ``cumulative_exposures[k]`` series instead includes the
        mark at ``times[k]``.
        """
        hi = self._index_before(day)
        return self.cumulative_exposures[hi - 1] if hi > 0 else 0.0

    def generation_cumulative_at(self, generation: int, day: float) -> float:
        """Exposures of one generation created strictly before ``day``."""
        series = self.new_exposures_by_generation.get(generation)
        if series is None:
            return 0.0
        return math.fsum(series[: self._index_before(day)])

    def windowed_new_exposures(self, day: float, width_days: float = 2.0) -> float:
        """New exposures in the half-open window ``(day - width, day]``."""
        hi = self._index_at_or_before(day) + 1
        lo = bisect_left(self.times, day - width_days + _GRID_TOL)
        return math.fsum(self.new_exposures[lo:hi])

    def windowed_isolations(self, day: float, width_days: float = 2.0) -> float:
        """Individuals entering isolation in ``(day - width, day]``."""
        hi = self._index_at_or_before(day) + 1
        lo = bisect_left(self.times, day - width_days + _GRID_TOL)
        return math.fsum(self.newly_isolated[lo:hi])


def _kind_fractions(params: CohortParams) -> tuple[tuple[str, float], ...]:
    a, l = params.asymptomatic_fraction, params.long_shedder_fraction
    out = [(KIND_NORMAL, 1.0 - a - l), (KIND_ASYMPTOMATIC, a), (KIND_LONG_SHEDDER, l)]
    return tuple((k, f) for k, f in out if f > 0.0)


def run_cohort(params: CohortParams | None = None, **overrides) -> CohortTimeSeries:
    """Run the expected-value recursion for a single index case exposed at day 0.

    Keyword overrides are applied on top of ``params`` (or the defaults), so
    ``run_cohort(adoption=0.9)`` works.  Returns the full grid time series;
    with the default rate the index case alone creates 18.0 exposures
    (36/14 per day for 7 days) strictly before day 12.
    """
    if params is None:
        params = CohortParams(**overrides)
    elif overrides:
        params = replace(params, **overrides)

    step = params.step_days
    n_steps = round(params.horizon_days / step)
    times = tuple(k * step for k in range(n_steps + 1))
    p = params.adoption
    both = params.link_model == "both_need_app"

    latent_k = round(params.latent_days / step)
    natural_stop = {
        KIND_NORMAL: round(params.isolation_day / step),
        KIND_ASYMPTOMATIC: round(params.extended_shedding_day / step),
        KIND_LONG_SHEDDER: round(params.extended_shedding_day / step),
    }
    report_k = round((params.universal_symptomatic_day + params.report_delay_days) / step)
    iso_k = round(params.isolation_day / step)
    per_step = params.beta * step

    kinds = _kind_fractions(params)
    app_split = tuple(x for x in ((True, p), (False, 1.0 - p)) if x[1] > 0.0)

    def shed_window(e_k: int, anchor_k, kind: str) -> tuple[int, int]:
        stop = e_k + natural_stop[kind]
        if anchor_k is not None:
            stop = min(stop, anchor_k)
        return e_k + latent_k, min(stop, n_steps + 1)

    def emit_step(e_k: int, app: bool, anchor_k, kind: str):
        """Step at which this cohort's report reaches its contacts, if ever."""
        if kind == KIND_ASYMPTOMATIC or (both and not app):
            return anchor_k
        rep = e_k + report_k
        return rep if anchor_k is None else min(rep, anchor_k)

    def isolation_step(e_k: int, anchor_k, kind: str):
        """Step at which this cohort enters isolation, or None."""
        if kind == KIND_ASYMPTOMATIC:
            return anchor_k  # only an alert isolates them
        own = e_k + iso_k
        return own if anchor_k is None else min(own, anchor_k)

    # cohort key: (exposure step, has app, alert step or None, generation, kind)
    cohorts: dict[tuple, float] = {}
    for kind, kf in kinds:
        for app, af in app_split:
            cohorts[(0, app, None, 0, kind)] = kf * af

    frontier = dict(cohorts)
    while frontier:
        births: dict[tuple, float] = {}
        for (e_k, app, anchor_k, gen, kind), mass in frontier.items():
            start, stop = shed_window(e_k, anchor_k, kind)
            emit = emit_step(e_k, app, anchor_k, kind)
            for k in range(start, stop):
                born = mass * per_step
                for x_app, af in app_split:
                    alerted = (app and x_app) if both else x_app
                    child_anchor = emit if alerted else None
                    for x_kind, kf in kinds:
                        key = (k, x_app, child_anchor, gen + 1, x_kind)
                        births[key] = births.get(key, 0.0) + born * af * kf
        for key, mass in births.items():
            cohorts[key] = cohorts.get(key, 0.0) + mass
        # a cohort only matters further if its shedding window intersects the grid
        frontier = {k: m for k, m in births.items() if k[0] + latent_k <= n_steps and m > 0.0}

    new = [0.0] * (n_steps + 1)
    iso = [0.0] * (n_steps + 1)
    shedding = [0.0] * (n_steps + 1)
    new_by_gen: dict[int, list[float]] = {}
    app_mass_by_gen: dict[int, float] = {}
    total_mass_by_gen: dict[int, float] = {}

    for (e_k, app, anchor_k, gen, kind), mass in cohorts.items():
        if gen > 0:
            new[e_k] += mass
            new_by_gen.setdefault(gen, [0.0] * (n_steps + 1))[e_k] += mass
        total_mass_by_gen[gen] = total_mass_by_gen.get(gen, 0.0) + mass
        if app:
            app_mass_by_gen[gen] = app_mass_by_gen.get(gen, 0.0) + mass
        s = isolation_step(e_k, anchor_k, kind)
        if s is not None and s <= n_steps:
            iso[s] += mass
        start, stop = shed_window(e_k, anchor_k, kind)
        for k in range(start, stop):
            shedding[k] += mass

    cum: list[float] = []
    running = 0.0
    for v in new:
        running += v
        cum.append(running)

    app_fraction = {
        g: (app_mass_by_gen.get(g, 0.0) / t if t > 0 else 0.0)
        for g, t in total_mass_by_gen.items()
    }

    return CohortTimeSeries(
        params=params,
        times=times,
        new_exposures=tuple(new),
        cumulative_exposures=tuple(cum),
        actively_shedding=tuple(shedding),
        newly_isolated=tuple(iso),
        new_exposures_by_generation={g: tuple(s) for g, s in new_by_gen.items()},
        app_fraction_by_generation=app_fraction,
    )
