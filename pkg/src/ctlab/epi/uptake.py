"""Install-base arithmetic: how many people must install the app.

If only a fraction of the population owns a suitable smartphone, and a
fraction of installers stops using the app, the share of *owners* who must
install is target / (penetration * (1 - dropout)).
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Infeasible", "UptakeInputs", "UptakeResult", "required_install_fraction"]


class Infeasible(ValueError):
    """The target cannot be reached even if every owner installs."""


@dataclass(frozen=True)
class UptakeInputs:
    target_adoption: float
    smartphone_penetration: float
    dropout: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.target_adoption <= 1.0:
            raise ValueError("target_adoption must be in (0, 1]")
        if not 0.0 < self.smartphone_penetration <= 1.0:
            raise ValueError("smartphone_penetration must be in (0, 1]")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")


@dataclass(frozen=True)
class UptakeResult:
    inputs: UptakeInputs
    owners_install_fraction: float
    population_install_fraction: float
    notes: tuple[str, ...]


def required_install_fraction(
    target_adoption: float,
    smartphone_penetration: float,
    dropout: float = 0.0,
) -> UptakeResult:
    """Owner install share needed so that active users reach the target.

    Example: a 60% target with 79% penetration needs 0.60/0.79 = 75.9% of
    owners; with 6% dropout, 0.60/(0.79*0.94) = 80.8%.
    """
    inputs = UptakeInputs(target_adoption, smartphone_penetration, dropout)
    retained = smartphone_penetration * (1.0 - dropout)
    owners = target_adoption / retained
    if owners > 1.0 + 1e-12:
        raise Infeasible(
            f"target {target_adoption:.3f} needs {owners:.3f} of owners to install; "
            f"even full uptake reaches only {retained:.3f} of the population"
        )
    notes: list[str] = []
    if dropout > 0.0:
        notes.append(
            "Dropout is modelled multiplicatively: installers who stop using the "
            "app still count toward installs, so the owner share is "
            "target / (penetration * (1 - dropout))."
        )
        if abs(target_adoption - 0.60) < 1e-9 and abs(smartphone_penetration - 0.79) < 1e-9:
            notes.append(
                "Commonly quoted figure for this scenario is 'more than 82%'; that "
                "matches adding the dropout share in percentage points "
                "(75.9% + 6 = 81.9%), while the multiplicative formula gives 80.8%."
            )
    return UptakeResult(
        inputs=inputs,
        owners_install_fraction=owners,
        population_install_fraction=min(1.0, owners) * smartphone_penetration,
        notes=tuple(notes),
    )
