"""Entropy and expected-information-gain feature ranking."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .network import (
    BayesianNetwork,
    BNError,
    Distribution,
    InvalidCandidate,
    check_evidence,
)
from .inference import posterior_marginal

GAIN_CLAMP_TOL = 1e-9
STATE_PROB_FLOOR = 1e-12


class EmptyCandidateSet(BNError):
    pass


def entropy(dist: Distribution | Sequence[float]) -> float:
    """Shannon entropy in bits; 0*log0 = 0."""
    probs = np.asarray(dist.probs if isinstance(dist, Distribution) else dist, float)
    positive = probs[probs > 0]
    h = float(-(positive * np.log2(positive)).sum())
    return h if h > 0 else 0.0


def most_informative_features(
    net: BayesianNetwork,
    evidence: Mapping[str, str],
    target: str,
    candidates: Iterable[str],
) -> list[tuple[str, float]]:
    """Rank candidates by expected entropy reduction of the target.

    gain(F) = H(target|ev) - sum_f P(F=f|ev) * H(target|ev, F=f), clamped at 0.
    Sorted descending by gain, ties by ascending node id.
    """
    candidates = sorted(set(candidates))
    if not candidates:
        raise EmptyCandidateSet("no candidate features")
    check_evidence(net, evidence)
    for c in candidates:
        if c == target:
            raise InvalidCandidate(f"candidate {c!r} is the target")
        if c in evidence:
            raise InvalidCandidate(f"candidate {c!r} is already observed")
        if c not in net:
            raise InvalidCandidate(f"unknown candidate {c!r}")

    base = entropy(posterior_marginal(net, evidence, target))
    ranking: list[tuple[str, float]] = []
    for c in candidates:
        c_post = posterior_marginal(net, evidence, c)
        expected = 0.0
        for state, p in zip(c_post.states, c_post.probs):
            if p <= STATE_PROB_FLOOR:
                continue
            ev = dict(evidence)
            ev[c] = state
            expected += p * entropy(posterior_marginal(net, ev, target))
        gain = base - expected
        if gain < -1e-6:
            # beyond floating residue; indicates a numeric fault
            raise BNError(f"negative gain {gain:.3g} for {c!r}")
        ranking.append((c, max(gain, 0.0)))

    ranking.sort(key=lambda item: (-item[1], item[0]))
    return ranking
