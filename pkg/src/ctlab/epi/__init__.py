"""Epidemic laboratory: cohort recursion, agent simulation, tracing, uptake."""

from .cohort import CohortParams, CohortTimeSeries, InvalidParams, run_cohort
from .analysis import (
    CriterionNeverSatisfied,
    CriterionNotMonotone,
    CRITERIA,
    Table1Row,
    default_sweet_spot_template,
    sweet_spot_search,
    table1,
)
from .uptake import Infeasible, UptakeInputs, UptakeResult, required_install_fraction
from .contacts import ContactEvent, ContactGraph, Individual, InfectionEdge, generate_contact_graph
from .tracing import TraceResult, TraceStrategy, UnknownIndexCase, trace_contacts
from .agents import AgentRunResult, realize_outbreak, run_agent_sim

__all__ = [
    "AgentRunResult",
    "CRITERIA",
    "CohortParams",
    "CohortTimeSeries",
    "ContactEvent",
    "ContactGraph",
    "CriterionNeverSatisfied",
    "CriterionNotMonotone",
    "Individual",
    "InfectionEdge",
    "Infeasible",
    "InvalidParams",
    "Table1Row",
    "TraceResult",
    "TraceStrategy",
    "UnknownIndexCase",
    "UptakeInputs",
    "UptakeResult",
    "default_sweet_spot_template",
    "generate_contact_graph",
    "realize_outbreak",
    "required_install_fraction",
    "run_agent_sim",
    "run_cohort",
    "sweet_spot_search",
    "table1",
    "trace_contacts",
]
