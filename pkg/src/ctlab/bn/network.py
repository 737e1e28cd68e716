"""Network representation and structural validation.

Nodes are immutable; a network is a mapping id -> Node whose parent relation
must be acyclic.  CPTs are stored row-major over the Cartesian product of
parent states in declared parent order (itertools.product order), one
probability vector per row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

ROW_SUM_TOL = 1e-9
IMPOSSIBLE_TOL = 1e-12


class BNError(Exception):
    """Base class for Bayesian-network errors."""


class InvalidTarget(BNError):
    pass


class InvalidEvidence(BNError):
    pass


class InvalidCandidate(BNError):
    pass


class ImpossibleEvidence(BNError):
    """Raised when P(evidence) = 0 within IMPOSSIBLE_TOL."""


class StateSpaceTooLarge(BNError):
    pass


class InvalidNetworkFile(BNError):
    pass


@dataclass(frozen=True)
class Node:
    """One discrete variable: states, parents, and its CPT.

    cpt[r][k] = P(state k | r-th parent combination), rows enumerated in
    itertools.product order over the parents' state lists.
    """

    id: str
    states: tuple[str, ...]
    parents: tuple[str, ...] = ()
    cpt: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))
    annotations: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        arr = np.asarray(self.cpt, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        object.__setattr__(self, "cpt", arr)
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "parents", tuple(self.parents))

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise InvalidEvidence(f"node {self.id!r} has no state {state!r}") from None


class BayesianNetwork:
    """Immutable-by-convention collection of nodes keyed by id."""

    def __init__(self, nodes: Sequence[Node]):
        self._nodes: dict[str, Node] = {}
        for node in nodes:
            if node.id in self._nodes:
                raise BNError(f"duplicate node id {node.id!r}")
            self._nodes[node.id] = node

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __iter__(self) -> Iterator[Node]:
        return iter(self._nodes.values())

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(self._nodes)

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise InvalidTarget(f"unknown node {node_id!r}") from None

    def topological_order(self) -> list[str]:
        """Parents-before-children order; raises BNError on cycles."""
        state: dict[str, int] = {}  # 0 visiting, 1 done
        order: list[str] = []

        def visit(nid: str, trail: tuple[str, ...]):
            mark = state.get(nid)
            if mark == 1:
                return
            if mark == 0:
                cycle = "→".join(trail[trail.index(nid):] + (nid,))
                raise BNError(f"cycle: {cycle}")
            state[nid] = 0
            for parent in self._nodes[nid].parents:
                if parent in self._nodes:
                    visit(parent, trail + (nid,))
            state[nid] = 1
            order.append(nid)

        for nid in self._nodes:
            visit(nid, ())
        return order


@dataclass(frozen=True)
class Distribution:
    """Posterior or prior over one node's states."""

    node: str
    states: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))

    def __getitem__(self, state: str) -> float:
        return self.probs[self.states.index(state)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.states, self.probs))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def expected_row_count(net: BayesianNetwork, node: Node) -> int:
    count = 1
    for parent in node.parents:
        if parent not in net:
            return -1  # dangling parent; reported separately
        count *= len(net.node(parent).states)
    return count


def parent_combinations(net: BayesianNetwork, node: Node):
    """Rows of the node's CPT in storage order."""
    return itertools.product(*(net.node(p).states for p in node.parents))


def validate_network(net: BayesianNetwork) -> ValidationReport:
    """Collect every invariant violation; violations are data, not faults."""
    violations: list[str] = []
    if len(net) == 0:
        violations.append("network has no nodes")

    for node in net:
        if len(node.states) < 2:
            violations.append(f"node {node.id}: fewer than 2 states")
        if len(set(node.states)) != len(node.states):
            violations.append(f"node {node.id}: duplicate state labels")
        for parent in node.parents:
            if parent not in net:
                violations.append(f"node {node.id}: dangling parent {parent!r}")

        rows = expected_row_count(net, node)
        if rows >= 0 and node.cpt.shape != (rows, len(node.states)):
            violations.append(
                f"node {node.id}: cpt shape {node.cpt.shape} != "
                f"({rows}, {len(node.states)})"
            )
            continue
        for r, row in enumerate(node.cpt):
            if np.any(row < -ROW_SUM_TOL) or np.any(row > 1 + ROW_SUM_TOL):
                violations.append(f"node {node.id}: row {r} has entries outside [0,1]")
            total = float(row.sum())
            if abs(total - 1.0) > ROW_SUM_TOL:
                violations.append(f"node {node.id}: row {r} sum {total:.12g} ≠ 1")

    try:
        net.topological_order()
    except BNError as exc:
        violations.append(str(exc))

    return ValidationReport(ok=not violations, violations=tuple(violations))


def check_evidence(net: BayesianNetwork, evidence: Mapping[str, str]) -> None:
    for nid, state in evidence.items():
        if nid not in net:
            raise InvalidEvidence(f"unknown node {nid!r} in evidence")
        net.node(nid).state_index(state)
