"""Discrete Bayesian networks with exact inference and VOI ranking."""

from .network import (
    BNError,
    BayesianNetwork,
    Distribution,
    ImpossibleEvidence,
    InvalidCandidate,
    InvalidEvidence,
    InvalidNetworkFile,
    InvalidTarget,
    Node,
    StateSpaceTooLarge,
    ValidationReport,
    validate_network,
)
from .inference import joint_enumeration, posterior_marginal
from .voi import EmptyCandidateSet, entropy, most_informative_features
from .io import load_network, network_from_dict, network_to_dict, save_network

__all__ = [
    "BNError",
    "BayesianNetwork",
    "Distribution",
    "EmptyCandidateSet",
    "ImpossibleEvidence",
    "InvalidCandidate",
    "InvalidEvidence",
    "InvalidNetworkFile",
    "InvalidTarget",
    "Node",
    "StateSpaceTooLarge",
    "ValidationReport",
    "entropy",
    "joint_enumeration",
    "load_network",
    "most_informative_features",
    "network_from_dict",
    "network_to_dict",
    "posterior_marginal",
    "save_network",
    "validate_network",
]
