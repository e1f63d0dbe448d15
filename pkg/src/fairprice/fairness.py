"""Fairness function, belief rule, and their (super)elasticities.

These are the primitives every other module consumes: a linear fairness
factor F that penalizes perceived markups above a fair anchor, and a
subproportional belief rule that infers marginal cost from price.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol


class DomainError(ValueError):
    """Input outside the admissible domain of a fairness primitive."""


class FairnessFamily(Protocol):
    """Contract for a fairness function: F, its elasticity, superelasticity.

    Only the linear family ships; other positive-superelasticity families
    can implement this protocol and plug into the same solvers.
    """

    def factor(self, m_p: float) -> float: ...
    def elasticity(self, m_p: float) -> float: ...
    def superelasticity(self, m_p: float) -> float: ...


@dataclass(frozen=True)
class FairnessSpec:
    """Linear fairness family F(Mp) = 1 - theta*(Mp - Mf).

    m_high is stored, not recomputed, and validated at construction so that
    domain violations surface before any solver iterates near the boundary.
    """

    theta: float
    epsilon: float
    fair_markup: float
    chi: float = 0.0
    m_high: float = field(default=math.nan)

    def __post_init__(self) -> None:
        if self.theta < 0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if self.epsilon <= 1:
            raise ValueError(f"epsilon must be > 1, got {self.epsilon}")
        if self.fair_markup <= 1:
            raise ValueError(f"fair_markup must be > 1, got {self.fair_markup}")
        if not 0 <= self.chi <= 1:
            raise ValueError(f"chi must be in [0, 1], got {self.chi}")
        if self.theta == 0:
            # No fairness: F is identically 1, no upper domain bound.
            object.__setattr__(self, "m_high", math.inf)
        else:
            mh = self.fair_markup + 1.0 / self.theta
            if not math.isnan(self.m_high) and abs(self.m_high - mh) > 1e-12 * mh:
                raise ValueError(
                    f"m_high {self.m_high} inconsistent with anchor and theta ({mh})"
                )
            object.__setattr__(self, "m_high", mh)
            if mh <= self.epsilon / (self.epsilon - 1):
                raise ValueError(
                    "m_high must exceed epsilon/(epsilon-1): "
                    f"{mh} <= {self.epsilon / (self.epsilon - 1)}"
                )

    @staticmethod
    def anchored(theta: float, epsilon: float, chi: float = 0.0) -> "FairnessSpec":
        """Spec with the fair markup at the frictionless level eps/(eps-1)."""
        return FairnessSpec(theta=theta, epsilon=epsilon,
                            fair_markup=epsilon / (epsilon - 1), chi=chi)

    # FairnessFamily protocol
    def factor(self, m_p: float) -> float:
        return fairness_factor(m_p, self)

    def elasticity(self, m_p: float) -> float:
        return fairness_elasticity(m_p, self)

    def superelasticity(self, m_p: float) -> float:
        return fairness_superelasticity(m_p, self)


@dataclass(frozen=True)
class BeliefSpec:
    """Subproportional cost inference: Cp = Cb^gamma * ((eps-1)P/eps)^(1-gamma)."""

    gamma: float
    prior_cost: float
    epsilon: float

    def __post_init__(self) -> None:
        if not 0 <= self.gamma <= 1:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")
        if self.prior_cost <= 0:
            raise ValueError(f"prior_cost must be > 0, got {self.prior_cost}")
        if self.epsilon <= 1:
            raise ValueError(f"epsilon must be > 1, got {self.epsilon}")


def fairness_factor(m_p: float, spec: FairnessSpec) -> float:
    """F(Mp) = 1 - theta*(Mp - Mf); strictly positive on [0, m_high)."""
    if m_p < 0 or m_p >= spec.m_high:
        raise DomainError(
            f"perceived markup {m_p} outside [0, m_high={spec.m_high})"
        )
    return 1.0 - spec.theta * (m_p - spec.fair_markup)


def fairness_elasticity(m_p: float, spec: FairnessSpec) -> float:
    """phi = theta*Mp/F(Mp); strictly increasing, diverging at m_high."""
    if m_p <= 0 or m_p >= spec.m_high:
        raise DomainError(
            f"perceived markup {m_p} outside (0, m_high={spec.m_high})"
        )
    return spec.theta * m_p / fairness_factor(m_p, spec)


def fairness_superelasticity(m_p: float, spec: FairnessSpec) -> float:
    """sigma = 1 + phi(Mp) for the linear family."""
    return 1.0 + fairness_elasticity(m_p, spec)


def perceived_cost(price: float, belief: BeliefSpec) -> float:
    """Inferred marginal cost; log arithmetic avoids overflow at extreme ratios."""
    if price <= 0:
        raise DomainError(f"price must be > 0, got {price}")
    g = belief.gamma
    log_cp = g * math.log(belief.prior_cost) + (1 - g) * math.log(
        (belief.epsilon - 1) * price / belief.epsilon
    )
    return math.exp(log_cp)


def perceived_markup(price: float, belief: BeliefSpec) -> float:
    """Mp = (eps/(eps-1))^(1-gamma) * (P/Cb)^gamma; strictly increasing in P."""
    if price <= 0:
        raise DomainError(f"price must be > 0, got {price}")
    g = belief.gamma
    log_mp = (1 - g) * math.log(belief.epsilon / (belief.epsilon - 1)) + g * (
        math.log(price) - math.log(belief.prior_cost)
    )
    return math.exp(log_mp)


def prior_cost_lower_bound(marginal_cost: float, belief_gamma: float,
                           epsilon: float, m_high: float) -> float:
    """Smallest admissible prior cost for a given true marginal cost.

    Below this bound the perceived markup can reach m_high at the monopoly's
    candidate prices and demand becomes undefined.
    """
    return (epsilon - 1) * m_high ** (-1.0 / belief_gamma) * marginal_cost / epsilon
