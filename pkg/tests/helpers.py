"""Shared fixtures: hand-built networks and a seeded random-network generator."""

from __future__ import annotations

import itertools

import numpy as np

from ctlab.bn import BayesianNetwork, Node

# Classic cloudy/sprinkler/rain/wet-grass network.  The frozen oracle value
# P(rain=t | wet=t) = 509/719 was derived by hand from these CPTs:
#   numerator   0.5*0.5*0.2*0.9 + 0.5*0.5*0.2*0.99
#             + 0.5*0.9*0.8*0.9 + 0.5*0.1*0.8*0.99          = 0.4581
#   denominator adds the rain=f wet=t mass 0.18 + 0.009      = 0.6471
#   0.4581 / 0.6471 = 509/719
SPRINKLER_RAIN_GIVEN_WET = 509.0 / 719.0


def sprinkler_network() -> BayesianNetwork:
    return BayesianNetwork(
        [
            Node("cloudy", ("f", "t"), (), [[0.5, 0.5]]),
            Node(
                "sprinkler",
                ("f", "t"),
                ("cloudy",),
                [[0.5, 0.5], [0.9, 0.1]],
            ),
            Node(
                "rain",
                ("f", "t"),
                ("cloudy",),
                [[0.8, 0.2], [0.2, 0.8]],
            ),
            Node(
                "wet",
                ("f", "t"),
                ("sprinkler", "rain"),
                [[1.0, 0.0], [0.1, 0.9], [0.1, 0.9], [0.01, 0.99]],
            ),
        ]
    )


def two_node_network(p_a: float, p_b_given_a: tuple[float, float]) -> BayesianNetwork:
    """A -> B, both binary (states f/t)."""
    return BayesianNetwork(
        [
            Node("a", ("f", "t"), (), [[1 - p_a, p_a]]),
            Node(
                "b",
                ("f", "t"),
                ("a",),
                [
                    [1 - p_b_given_a[0], p_b_given_a[0]],
                    [1 - p_b_given_a[1], p_b_given_a[1]],
                ],
            ),
        ]
    )


def random_binary_network(rng: np.random.Generator, n_nodes: int | None = None) -> BayesianNetwork:
    """Random DAG of binary nodes; parents drawn from earlier ids (acyclic by construction)."""
    if n_nodes is None:
        n_nodes = int(rng.integers(2, 13))
    nodes = []
    for i in range(n_nodes):
        n_parents = int(rng.integers(0, min(i, 3) + 1))
        parents = tuple(
            f"n{j}" for j in sorted(rng.choice(i, size=n_parents, replace=False))
        ) if n_parents else ()
        rows = 2 ** len(parents)
        raw = rng.uniform(0.05, 0.95, size=(rows, 2))
        cpt = raw / raw.sum(axis=1, keepdims=True)
        nodes.append(Node(f"n{i}", ("f", "t"), parents, cpt))
    return BayesianNetwork(nodes)


def random_evidence(
    rng: np.random.Generator, net: BayesianNetwork, exclude: str | None = None
) -> dict[str, str]:
    ids = [nid for nid in net.node_ids if nid != exclude]
    k = int(rng.integers(0, len(ids) + 1))
    picked = rng.choice(len(ids), size=k, replace=False) if k else []
    evidence = {}
    for idx in picked:
        node = net.node(ids[int(idx)])
        evidence[node.id] = node.states[int(rng.integers(0, len(node.states)))]
    return evidence


def brute_force_marginal(
    net: BayesianNetwork, evidence: dict[str, str], target: str
) -> list[float]:
    """Full joint enumeration, written independently of the library internals."""
    order = net.topological_order()
    target_node = net.node(target)
    totals = [0.0] * len(target_node.states)
    state_lists = [net.node(nid).states for nid in order]
    for combo in itertools.product(*state_lists):
        assignment = dict(zip(order, combo))
        if any(assignment[k] != v for k, v in evidence.items()):
            continue
        p = 1.0
        for nid in order:
            node = net.node(nid)
            row = 0
            for parent in node.parents:
                row = row * len(net.node(parent).states) + net.node(
                    parent
                ).states.index(assignment[parent])
            p *= float(node.cpt[row][node.states.index(assignment[nid])])
        totals[target_node.states.index(assignment[target])] += p
    z = sum(totals)
    if z <= 0:
        raise ValueError("evidence has zero probability")
    return [t / z for t in totals]
