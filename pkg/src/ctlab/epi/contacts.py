"""Synthetic contact graphs: who met whom, when, and how closely.

Events are placed on the same half-day grid the cohort recursion uses, so
the two models are directly comparable.  Close contacts (<= 2 m) drive
transmission; far contacts are decoys that tracing must ignore.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CLOSE_CONTACT_METRES",
    "ContactEvent",
    "ContactGraph",
    "Individual",
    "InfectionEdge",
    "generate_contact_graph",
]

CLOSE_CONTACT_METRES = 2.0


@dataclass(frozen=True)
class Individual:
    id: int
    has_app: bool
    symptomatic_onset_day: float  # days after own exposure; symptoms start then
    asymptomatic: bool = False


@dataclass(frozen=True)
class ContactEvent:
    a: int
    b: int
    time_day: float
    proximity_metres: float

    @property
    def close(self) -> bool:
        return self.proximity_metres <= CLOSE_CONTACT_METRES


@dataclass(frozen=True)
class InfectionEdge:
    infector: int
    infectee: int
    exposure_day: float


@dataclass(frozen=True)
class ContactGraph:
    individuals: tuple[Individual, ...]
    events: tuple[ContactEvent, ...]  # sorted by (time, a, b)
    horizon_days: float
    seed: int
    infection_edges: tuple[InfectionEdge, ...] = ()
    _close_by_individual: dict[int, list[tuple[float, int]]] = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self._close_by_individual is None:
            by: dict[int, list[tuple[float, int]]] = {ind.id: [] for ind in self.individuals}
            for ev in self.events:
                if ev.close:
                    by[ev.a].append((ev.time_day, ev.b))
                    by[ev.b].append((ev.time_day, ev.a))
            for lst in by.values():
                lst.sort()
            object.__setattr__(self, "_close_by_individual", by)

    @property
    def n(self) -> int:
        return len(self.individuals)

    def close_contacts_of(
        self, uid: int, start_day: float = 0.0, end_day: float | None = None
    ) -> list[tuple[float, int]]:
        """Time-sorted (day, partner) close contacts of ``uid`` in [start, end)."""
        lst = self._close_by_individual[uid]
        lo = bisect_left(lst, (start_day - 1e-12, -1))
        hi = len(lst) if end_day is None else bisect_left(lst, (end_day - 1e-12, -1))
        return lst[lo:hi]

    def with_infection_edges(self, edges: tuple[InfectionEdge, ...]) -> "ContactGraph":
        return ContactGraph(
            individuals=self.individuals,
            events=self.events,
            horizon_days=self.horizon_days,
            seed=self.seed,
            infection_edges=edges,
            _close_by_individual=self._close_by_individual,
        )

    def mean_close_contacts_per_window(self, window_days: float = 14.0) -> float:
        """Empirical mean close contacts per person, scaled to the window."""
        close = sum(1 for ev in self.events if ev.close)
        return 2.0 * close / self.n * (window_days / self.horizon_days)


def generate_contact_graph(
    n: int,
    *,
    mean_close_contacts: float = 36.0,
    window_days: float = 14.0,
    horizon_days: float = 14.0,
    app_fraction: float = 0.6,
    far_rate_per_day: float = 0.5,
    asymptomatic_fraction: float = 0.0,
    onset_window: tuple[float, float] = (5.5, 11.5),
    step_days: float = 0.5,
    seed: int = 0,
) -> ContactGraph:
    """Sample a population and its contact events, deterministically by seed.

    Close-event counts per half-day are Poisson with mean
    ``n * rate * step / 2`` (each event pairs two people), so each person
    averages ``mean_close_contacts`` close contacts per ``window_days``.
    Far events (2-30 m) are generated at ``far_rate_per_day`` per person.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= app_fraction <= 1.0:
        raise ValueError("app_fraction must be in [0, 1]")
    rng = np.random.default_rng(seed)

    onsets = rng.uniform(onset_window[0], onset_window[1], size=n)
    has_app = rng.random(n) < app_fraction
    asymp = rng.random(n) < asymptomatic_fraction
    individuals = tuple(
        Individual(i, bool(has_app[i]), float(onsets[i]), bool(asymp[i])) for i in range(n)
    )

    events: list[ContactEvent] = []
    if n >= 2:
        close_rate = mean_close_contacts / window_days
        n_bins = round(horizon_days / step_days)
        for k in range(n_bins):
            t = k * step_days
            for rate, lo, hi in (
                (close_rate, 0.1, CLOSE_CONTACT_METRES),
                (far_rate_per_day, CLOSE_CONTACT_METRES + 0.1, 30.0),
            ):
                count = rng.poisson(n * rate * step_days / 2.0)
                if count == 0:
                    continue
                a = rng.integers(0, n, size=count)
                b = rng.integers(0, n - 1, size=count)
                b = np.where(b >= a, b + 1, b)  # uniform over partners != a
                prox = rng.uniform(lo, hi, size=count)
                events.extend(
                    ContactEvent(int(x), int(y), t, float(d))
                    for x, y, d in zip(a, b, prox)
                )
    events.sort(key=lambda ev: (ev.time_day, ev.a, ev.b))

    return ContactGraph(
        individuals=individuals,
        events=tuple(events),
        horizon_days=horizon_days,
        seed=seed,
    )
