"""Network definition files: UTF-8 JSON, format 1.

Layout: {"format": 1, "nodes": [{"id", "states", "parents", "cpt", ...}]}
where cpt is a flat row-major array of probability vectors.  Unknown
top-level fields are rejected; extra per-node fields (e.g. roster_role,
provenance) are preserved as annotations.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .network import BayesianNetwork, InvalidNetworkFile, Node

FORMAT_VERSION = 1
TOP_LEVEL_FIELDS = {"format", "nodes"}
NODE_FIELDS = {"id", "states", "parents", "cpt"}


def network_from_dict(data: dict) -> BayesianNetwork:
    if not isinstance(data, dict):
        raise InvalidNetworkFile("top level must be an object")
    unknown = set(data) - TOP_LEVEL_FIELDS
    if unknown:
        raise InvalidNetworkFile(f"unknown top-level fields: {sorted(unknown)}")
    if data.get("format") != FORMAT_VERSION:
        raise InvalidNetworkFile(f"format must be {FORMAT_VERSION}")
    if not isinstance(data.get("nodes"), list):
        raise InvalidNetworkFile("nodes must be a list")

    nodes = []
    for raw in data["nodes"]:
        if not isinstance(raw, dict):
            raise InvalidNetworkFile("each node must be an object")
        missing = NODE_FIELDS - set(raw)
        if missing:
            raise InvalidNetworkFile(f"node missing fields: {sorted(missing)}")
        annotations = {k: raw[k] for k in raw if k not in NODE_FIELDS}
        try:
            cpt = np.asarray(raw["cpt"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidNetworkFile(f"node {raw.get('id')!r}: bad cpt: {exc}") from None
        nodes.append(
            Node(
                id=str(raw["id"]),
                states=tuple(str(s) for s in raw["states"]),
                parents=tuple(str(p) for p in raw["parents"]),
                cpt=cpt,
                annotations=annotations,
            )
        )
    return BayesianNetwork(nodes)


def network_to_dict(net: BayesianNetwork) -> dict:
    nodes = []
    for node in net:
        entry: dict = {
            "id": node.id,
            "states": list(node.states),
            "parents": list(node.parents),
            "cpt": [[float(p) for p in row] for row in node.cpt],
        }
        entry.update(node.annotations)
        nodes.append(entry)
    return {"format": FORMAT_VERSION, "nodes": nodes}


def load_network(path: str | Path) -> BayesianNetwork:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidNetworkFile(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidNetworkFile(f"invalid JSON in {path}: {exc}") from None
    return network_from_dict(data)


def save_network(net: BayesianNetwork, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(network_to_dict(net), indent=2, sort_keys=False) + "\n",
        encoding="utf-8",
    )
