"""Four escalating contact-tracing strategies on an explicit contact graph.

All strategies start from known index cases and only ever follow close
(<= 2 m) contact events recorded up to ``as_of_day``:

* FIRST_ORDER stops at the direct contacts of the index cases.
* SINGLE_STEP also expands from traced contacts once they are confirmed
  infected, which here means symptomatic by ``as_of_day``; asymptomatic or
  not-yet-symptomatic carriers are dead ends.
* ITERATIVE tests traced contacts, so every infected contact expands,
  including pre-symptomatic and asymptomatic ones.
* RETROSPECTIVE additionally walks infection edges upstream from every
  known case to find who infected them, then traces the infector forward.

Infection status comes from ``graph.infection_edges``; individuals never
appearing there are healthy and never expand.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .contacts import ContactGraph

__all__ = ["TraceResult", "TraceStrategy", "UnknownIndexCase", "trace_contacts"]


class UnknownIndexCase(KeyError):
    """An index case id is not part of the graph."""


class TraceStrategy(Enum):
    FIRST_ORDER = "first_order"
    SINGLE_STEP = "single_step"
    ITERATIVE = "iterative"
    RETROSPECTIVE = "retrospective"


@dataclass(frozen=True)
class TraceResult:
    strategy: TraceStrategy
    index_cases: tuple[int, ...]
    traced: frozenset[int]
    notification_order: tuple[int, ...]

    def __contains__(self, uid: int) -> bool:
        return uid in self.traced


def trace_contacts(
    graph: ContactGraph,
    strategy: TraceStrategy,
    index_cases: tuple[int, ...] | list[int] | set[int],
    as_of_day: float,
) -> TraceResult:
    """Run one strategy; returns the traced set and a deterministic order.

    The notification order is breadth-first from the index cases; within a
    round, newly traced ids are notified in ascending order.  Index cases
    themselves are not part of the traced set.
    """
    known = {ind.id for ind in graph.individuals}
    index = sorted(set(index_cases))
    for uid in index:
        if uid not in known:
            raise UnknownIndexCase(f"index case {uid} not in graph")

    exposure_day: dict[int, float] = {}
    infector_of: dict[int, int] = {}
    for edge in graph.infection_edges:
        exposure_day[edge.infectee] = edge.exposure_day
        infector_of[edge.infectee] = edge.infector
        exposure_day.setdefault(edge.infector, 0.0)
    infected = set(exposure_day)
    by_id = {ind.id: ind for ind in graph.individuals}

    def symptomatic_by_now(uid: int) -> bool:
        ind = by_id[uid]
        if ind.asymptomatic:
            return False
        return exposure_day[uid] + ind.symptomatic_onset_day <= as_of_day

    def expands(uid: int) -> bool:
        if strategy is TraceStrategy.FIRST_ORDER:
            return False
        if uid not in infected:
            return False
        if strategy is TraceStrategy.SINGLE_STEP:
            return symptomatic_by_now(uid)
        return True  # iterative and retrospective: testing confirms any carrier

    traced: set[int] = set()
    order: list[int] = []
    index_set = set(index)
    frontier = list(index)
    seen_sources = set(index)

    while frontier:
        found: set[int] = set()
        next_sources: list[int] = []
        for src in frontier:
            for _, other in graph.close_contacts_of(src, 0.0, as_of_day + 1e-9):
                if other not in traced and other not in index_set:
                    found.add(other)
            if strategy is TraceStrategy.RETROSPECTIVE and src in infector_of:
                up = infector_of[src]
                if up not in traced and up not in index_set:
                    found.add(up)
        for uid in sorted(found):
            traced.add(uid)
            order.append(uid)
            if expands(uid) and uid not in seen_sources:
                seen_sources.add(uid)
                next_sources.append(uid)
        frontier = next_sources

    return TraceResult(
        strategy=strategy,
        index_cases=tuple(index),
        traced=frozenset(traced),
        notification_order=tuple(order),
    )
