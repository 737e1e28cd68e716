"""Exact inference: variable elimination and a full-joint enumeration oracle.

Variable elimination uses the min-fill heuristic with ascending-id tie-breaks
so identical inputs always produce bit-identical outputs.  The enumeration
oracle materializes the factorized joint (capped) and exists to cross-check
the elimination engine at 1e-9.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .network import (
    BayesianNetwork,
    Distribution,
    ImpossibleEvidence,
    InvalidTarget,
    Node,
    StateSpaceTooLarge,
    check_evidence,
    IMPOSSIBLE_TOL,
)

DEFAULT_ENUM_CAP = 2 ** 24


class _Factor:
    """A nonnegative table over an ordered tuple of variables."""

    __slots__ = ("vars", "table")

    def __init__(self, vars: tuple[str, ...], table: np.ndarray):
        self.vars = vars
        self.table = table

    @classmethod
    def from_node(cls, net: BayesianNetwork, node: Node) -> "_Factor":
        shape = tuple(len(net.node(p).states) for p in node.parents)
        shape += (len(node.states),)
        table = node.cpt.reshape(shape)
        return cls(node.parents + (node.id,), table)

    def reduce(self, var: str, index: int) -> "_Factor":
        axis = self.vars.index(var)
        table = np.take(self.table, index, axis=axis)
        vars = self.vars[:axis] + self.vars[axis + 1:]
        return _Factor(vars, table)

    def multiply(self, other: "_Factor") -> "_Factor":
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        a = _expand(self, vars)
        b = _expand(other, vars)
        return _Factor(vars, a * b)

    def sum_out(self, var: str) -> "_Factor":
        axis = self.vars.index(var)
        table = self.table.sum(axis=axis)
        vars = self.vars[:axis] + self.vars[axis + 1:]
        return _Factor(vars, table)


def _expand(factor: _Factor, vars: tuple[str, ...]) -> np.ndarray:
    """Broadcast factor.table onto the axis layout given by vars."""
    table = factor.table
    src = list(factor.vars)
    perm = sorted(range(len(src)), key=lambda i: vars.index(src[i]))
    table = np.transpose(table, perm)
    dims = dict(zip((src[i] for i in perm), table.shape))
    return table.reshape(tuple(dims.get(v, 1) for v in vars))


def _reduced_factors(net: BayesianNetwork, evidence: Mapping[str, str]) -> list[_Factor]:
    ev_idx = {nid: net.node(nid).state_index(s) for nid, s in evidence.items()}
    factors = []
    for node in net:
        f = _Factor.from_node(net, node)
        for var in sorted(set(f.vars) & set(ev_idx), key=f.vars.index):
            f = f.reduce(var, ev_idx[var])
        factors.append(f)
    return factors


def _min_fill_order(factors: list[_Factor], keep: set[str]) -> list[str]:
    """Elimination order over all factor vars not in `keep`."""
    neighbors: dict[str, set[str]] = {}
    for f in factors:
        for v in f.vars:
            neighbors.setdefault(v, set()).update(f.vars)
    for v, ns in neighbors.items():
        ns.discard(v)

    to_eliminate = set(neighbors) - keep
    order: list[str] = []
    while to_eliminate:
        best = None
        best_fill = None
        for v in sorted(to_eliminate):
            ns = sorted(neighbors[v] & set(neighbors))
            fill = 0
            for i, a in enumerate(ns):
                for b in ns[i + 1:]:
                    if b not in neighbors[a]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        ns = neighbors[best] & set(neighbors)
        for a in ns:
            neighbors[a].update(ns)
            neighbors[a].discard(a)
            neighbors[a].discard(best)
        del neighbors[best]
        to_eliminate.discard(best)
        order.append(best)
    return order


def _eliminate(factors: list[_Factor], order: list[str]) -> list[_Factor]:
    factors = list(factors)
    for var in order:
        related = [f for f in factors if var in f.vars]
        if not related:
            continue
        factors = [f for f in factors if var not in f.vars]
        related.sort(key=lambda f: f.vars)  # deterministic product order
        product = related[0]
        for f in related[1:]:
            product = product.multiply(f)
        factors.append(product.sum_out(var))
    return factors


def posterior_marginal(
    net: BayesianNetwork,
    evidence: Mapping[str, str],
    target: str,
) -> Distribution:
    """Exact P(target | evidence) by variable elimination."""
    if target not in net:
        raise InvalidTarget(f"unknown target {target!r}")
    check_evidence(net, evidence)
    target_node = net.node(target)

    factors = _reduced_factors(net, evidence)
    keep = set() if target in evidence else {target}
    order = _min_fill_order(factors, keep)
    remaining = _eliminate(factors, order)

    if target in evidence:
        # All axes are eliminated; the residue is P(evidence).
        z = 1.0
        for f in remaining:
            z *= float(f.table.sum()) if f.vars == () else float(f.table)
        if z <= IMPOSSIBLE_TOL:
            raise ImpossibleEvidence(f"P(evidence) = {z:.3g}")
        probs = [0.0] * len(target_node.states)
        probs[target_node.state_index(evidence[target])] = 1.0
        return Distribution(target, target_node.states, probs)

    result = None
    for f in remaining:
        result = f if result is None else result.multiply(f)
    table = result.table if result.vars == (target,) else result.table.reshape(-1)
    z = float(table.sum())
    if z <= IMPOSSIBLE_TOL:
        raise ImpossibleEvidence(f"P(evidence) = {z:.3g}")
    return Distribution(target, target_node.states, (table / z).tolist())


def joint_enumeration(
    net: BayesianNetwork,
    evidence: Mapping[str, str],
    target: str,
    cap: int = DEFAULT_ENUM_CAP,
) -> Distribution:
    """Posterior by summing the materialized factorized joint (test oracle)."""
    if target not in net:
        raise InvalidTarget(f"unknown target {target!r}")
    check_evidence(net, evidence)
    target_node = net.node(target)

    size = 1
    for node in net:
        size *= len(node.states)
        if size > cap:
            raise StateSpaceTooLarge(f"joint size exceeds cap {cap}")

    vars = net.node_ids
    joint = np.ones(tuple(len(net.node(v).states) for v in vars))
    for node in net:
        f = _Factor.from_node(net, node)
        joint = joint * _expand(f, vars)

    for nid, state in evidence.items():
        axis = vars.index(nid)
        idx = net.node(nid).state_index(state)
        mask_shape = [1] * len(vars)
        mask_shape[axis] = len(net.node(nid).states)
        mask = np.zeros(mask_shape)
        np.put_along_axis(mask, np.full(mask_shape, idx, dtype=int), 1.0, axis=axis)
        joint = joint * mask

    axis = vars.index(target)
    other_axes = tuple(i for i in range(len(vars)) if i != axis)
    marginal = joint.sum(axis=other_axes)
    z = float(marginal.sum())
    if z <= IMPOSSIBLE_TOL:
        raise ImpossibleEvidence(f"P(evidence) = {z:.3g}")
    return Distribution(target, target_node.states, (marginal / z).tolist())
