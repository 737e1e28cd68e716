"""Stochastic agent-mode simulator over explicit contact graphs.

Mirrors the cohort recursion's best-case rules: every close contact during
a shedding window transmits; a case sheds over [e+5, e+13) and reports at
e+13; an alert isolates its recipient at the instant the report fires
(half-open windows, so a contact at the alert instant no longer transmits).

How far an alert travels is the strategy:

* FIRST_ORDER: only the reporter's direct infectees are alerted.
* SINGLE_STEP: alerted infectees that are already symptomatic pass the
  alert on to their own infectees.
* ITERATIVE (default): alerts cascade down the whole infection subtree;
  this is the agent analogue of the cohort recursion.
* RETROSPECTIVE: iterative, plus the alert walks infection edges upstream
  so the reporter's infector (and its other descendants) are reached.

Alert eligibility per link: under ``both_need_app`` only app users report
and only app users can be alerted; under ``contact_needs_app`` everyone
reports and only the recipient needs the app.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .cohort import CohortParams, KIND_ASYMPTOMATIC, KIND_LONG_SHEDDER, KIND_NORMAL
from .contacts import ContactGraph, InfectionEdge
from .tracing import TraceStrategy

__all__ = ["AgentRunResult", "realize_outbreak", "run_agent_sim"]

_REPORT = 0  # heap priority: reports beat contacts at the same instant
_CONTACT = 1


@dataclass(frozen=True)
class AgentRunResult:
    """Per-replicate outcomes plus summary statistics.

    ``outbreak_sizes[r]`` counts infections excluding the index case at the
    graph horizon.  ``snapshots[day][r]`` counts infections (excluding the
    index) whose exposure happened strictly before ``day``, matching
    ``CohortTimeSeries.cumulative_at``.
    """

    params: CohortParams
    strategy: TraceStrategy
    seed: int
    replicates: int
    outbreak_sizes: tuple[int, ...]
    snapshots: dict[float, tuple[int, ...]]
    mean_serial_interval: float | None
    first_replicate: dict | None = None  # index case + infection edges, if collected

    @property
    def mean_outbreak(self) -> float:
        return float(np.mean(self.outbreak_sizes))

    @property
    def std_outbreak(self) -> float:
        return float(np.std(self.outbreak_sizes, ddof=1)) if self.replicates > 1 else 0.0

    def snapshot_mean(self, day: float) -> float:
        return float(np.mean(self.snapshots[day]))

    def snapshot_std(self, day: float) -> float:
        vals = self.snapshots[day]
        return float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0


def run_agent_sim(
    graph: ContactGraph,
    params: CohortParams | None = None,
    strategy: TraceStrategy = TraceStrategy.ITERATIVE,
    seed: int = 0,
    replicates: int = 1,
    snapshot_days: tuple[float, ...] = (12.0, 14.0),
    index_case: int | None = None,
    collect_edges: bool = False,
) -> AgentRunResult:
    """Run seeded replicates of one outbreak on ``graph``.

    Replicate ``r`` uses an independent generator seeded ``seed + r``, so
    results are reproducible and order-independent.  App membership is
    resampled each replicate from ``params.adoption`` (adoption sweeps do
    not need fresh graphs); when ``index_case`` is None the index is drawn
    uniformly per replicate.
    """
    params = params or CohortParams()
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    n = graph.n
    both = params.link_model == "both_need_app"
    latent = params.latent_days
    natural = {
        KIND_NORMAL: params.isolation_day,
        KIND_ASYMPTOMATIC: params.extended_shedding_day,
        KIND_LONG_SHEDDER: params.extended_shedding_day,
    }
    report_at = params.universal_symptomatic_day + params.report_delay_days
    a_frac, l_frac = params.asymptomatic_fraction, params.long_shedder_fraction

    onset = {ind.id: ind.symptomatic_onset_day for ind in graph.individuals}

    sizes: list[int] = []
    snaps: dict[float, list[int]] = {d: [] for d in snapshot_days}
    si_sum = 0.0
    si_count = 0
    first_replicate: dict | None = None

    for r in range(replicates):
        rng = np.random.default_rng(seed + r)
        has_app = rng.random(n) < params.adoption
        if a_frac > 0 or l_frac > 0:
            u = rng.random(n)
            kind = np.where(u < a_frac, 0, np.where(u < a_frac + l_frac, 1, 2))
            kinds = {0: KIND_ASYMPTOMATIC, 1: KIND_LONG_SHEDDER, 2: KIND_NORMAL}
            kind_of = lambda i: kinds[int(kind[i])]
        else:
            kind_of = lambda i: KIND_NORMAL

        idx = int(rng.integers(0, n)) if index_case is None else index_case
        exposure: dict[int, float] = {}
        anchor: dict[int, float] = {}
        infectees: dict[int, list[int]] = {}
        infector: dict[int, int] = {}
        heap: list[tuple[float, int, int, int]] = []
        seq = 0

        def can_alert(target: int) -> bool:
            return bool(has_app[target])

        def alert(x: int, t: float, downward: bool) -> None:
            """Deliver an alert to x at time t and cascade per strategy."""
            if anchor.get(x, math.inf) <= t:
                return
            anchor[x] = t
            if strategy is TraceStrategy.FIRST_ORDER:
                return
            if strategy is TraceStrategy.SINGLE_STEP:
                sympt = (
                    kind_of(x) != KIND_ASYMPTOMATIC
                    and exposure[x] + onset[x] <= t
                )
                if not sympt:
                    return
            for child in infectees.get(x, ()):
                if can_alert(child):
                    alert(child, t, True)
            if strategy is TraceStrategy.RETROSPECTIVE and not downward:
                up = infector.get(x)
                if up is not None and can_alert(up):
                    alert(up, t, False)

        def expose(x: int, t: float, source: int | None) -> None:
            nonlocal seq
            exposure[x] = t
            if source is not None:
                infectees.setdefault(source, []).append(x)
                infector[x] = source
            k = kind_of(x)
            stop = t + natural[k]
            for ev_t, _ in graph.close_contacts_of(x, t + latent, stop):
                heapq.heappush(heap, (ev_t, _CONTACT, seq, x))
                seq += 1
            reports = k != KIND_ASYMPTOMATIC and (not both or has_app[x])
            if reports:
                heapq.heappush(heap, (t + report_at, _REPORT, seq, x))
                seq += 1

        expose(idx, 0.0, None)
        while heap:
            t, prio, _, x = heapq.heappop(heap)
            if prio == _REPORT:
                for child in infectees.get(x, ()):
                    ok = (has_app[x] and has_app[child]) if both else has_app[child]
                    if ok:
                        alert(child, t, True)
                if strategy is TraceStrategy.RETROSPECTIVE:
                    up = infector.get(x)
                    if up is not None:
                        ok = (has_app[x] and has_app[up]) if both else has_app[up]
                        if ok:
                            alert(up, t, False)
                continue
            if anchor.get(x, math.inf) <= t:
                continue
            # x is shedding: every close partner at this instant is exposed
            for ev_t, other in graph.close_contacts_of(x, t, t + 1e-9):
                if other not in exposure:
                    expose(other, t, x)

        sizes.append(len(exposure) - 1)
        for d in snapshot_days:
            snaps[d].append(sum(1 for i, e in exposure.items() if i != idx and e < d - 1e-9))
        for x, src in infector.items():
            si_sum += (exposure[x] + onset[x]) - (exposure[src] + onset[src])
            si_count += 1
        if collect_edges and r == 0:
            first_replicate = {
                "index_case": idx,
                "edges": tuple(
                    InfectionEdge(infector=src, infectee=x, exposure_day=exposure[x])
                    for x, src in sorted(infector.items())
                ),
            }

    return AgentRunResult(
        params=params,
        strategy=strategy,
        seed=seed,
        replicates=replicates,
        outbreak_sizes=tuple(sizes),
        snapshots={d: tuple(v) for d, v in snaps.items()},
        mean_serial_interval=(si_sum / si_count) if si_count else None,
        first_replicate=first_replicate,
    )


def realize_outbreak(
    graph: ContactGraph,
    params: CohortParams | None = None,
    seed: int = 0,
    index_case: int | None = None,
) -> tuple[ContactGraph, int]:
    """One seeded outbreak realized onto the graph as infection edges.

    Returns the graph copy carrying the edges plus the index case id; this
    is the substrate the tracing strategies operate on.
    """
    res = run_agent_sim(
        graph, params, seed=seed, replicates=1, snapshot_days=(), index_case=index_case,
        collect_edges=True,
    )
    info = res.first_replicate or {"index_case": index_case or 0, "edges": ()}
    return graph.with_infection_edges(tuple(info["edges"])), int(info["index_case"])
