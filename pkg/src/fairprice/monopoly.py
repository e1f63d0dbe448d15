"""Static monopoly pricing under four informational regimes.

Regimes differ in what customers know about marginal cost:
- NO_FAIRNESS: fairness channel closed (theta = 0 behavior).
- OBSERVABLE_COST: customers observe cost, so the perceived markup equals
  the actual markup.
- RATIONAL_INFERENCE: customers invert the equilibrium pricing rule; the
  separating equilibrium reproduces the frictionless markup.
- SUBPROPORTIONAL: customers infer cost from price but anchor on a prior.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fairness import (
    BeliefSpec,
    DomainError,
    FairnessSpec,
    fairness_elasticity,
    fairness_factor,
    fairness_superelasticity,
    perceived_markup,
    prior_cost_lower_bound,
)

_BISECT_LO_PAD = 1e-9
_BISECT_TOL = 1e-13
_BISECT_MAX_ITER = 200


class Regime(enum.Enum):
    NO_FAIRNESS = "NoFairness"
    OBSERVABLE_COST = "ObservableCost"
    RATIONAL_INFERENCE = "RationalInference"
    SUBPROPORTIONAL = "Subproportional"


class InfeasibleScenario(ValueError):
    """Bisection bracket does not straddle the fixed point.

    Signals a violated prior-cost lower bound or otherwise inadmissible
    scenario rather than a solver failure.
    """


@dataclass(frozen=True)
class MonopolyScenario:
    marginal_cost: float
    fairness: FairnessSpec
    belief: BeliefSpec
    regime: Regime

    def __post_init__(self) -> None:
        if self.marginal_cost <= 0:
            raise ValueError(f"marginal_cost must be > 0, got {self.marginal_cost}")
        if self.regime is Regime.SUBPROPORTIONAL and self.fairness.theta > 0:
            lb = prior_cost_lower_bound(
                self.marginal_cost, self.belief.gamma,
                self.belief.epsilon, self.fairness.m_high,
            )
            if self.belief.prior_cost <= lb:
                raise InfeasibleScenario(
                    f"prior_cost {self.belief.prior_cost} at or below the "
                    f"admissibility bound {lb} for marginal cost "
                    f"{self.marginal_cost}"
                )


@dataclass(frozen=True)
class MonopolyOutcome:
    markup: float
    price: float
    perceived_markup: float
    elasticity: float
    passthrough: float


def _perceived_at_price(price: float, scenario: MonopolyScenario) -> float:
    """Perceived markup at a posted price, per regime."""
    if scenario.regime is Regime.OBSERVABLE_COST:
        return price / scenario.marginal_cost
    if scenario.regime in (Regime.NO_FAIRNESS, Regime.RATIONAL_INFERENCE):
        # Inference (or its absence) pins the perceived markup at the
        # frictionless level on the equilibrium path.
        eps = scenario.fairness.epsilon
        return eps / (eps - 1)
    return perceived_markup(price, scenario.belief)


def demand(price: float, scenario: MonopolyScenario) -> float:
    """Yd = P^(-eps) * F(Mp(P))^(eps-1)."""
    if price <= 0:
        raise DomainError(f"price must be > 0, got {price}")
    eps = scenario.fairness.epsilon
    if scenario.regime is Regime.NO_FAIRNESS or scenario.fairness.theta == 0:
        return price ** (-eps)
    m_p = _perceived_at_price(price, scenario)
    f = fairness_factor(m_p, scenario.fairness)  # raises DomainError at m_high
    return price ** (-eps) * f ** (eps - 1)


def demand_elasticity(m_p: float, scenario: MonopolyScenario) -> float:
    """E = eps + (eps-1)*g*phi(m_p), with g = 1 under observable cost and
    g = 0 under no fairness or rational inference."""
    eps = scenario.fairness.epsilon
    if scenario.regime in (Regime.NO_FAIRNESS, Regime.RATIONAL_INFERENCE):
        return eps
    if scenario.fairness.theta == 0:
        return eps
    phi = fairness_elasticity(m_p, scenario.fairness)
    g = 1.0 if scenario.regime is Regime.OBSERVABLE_COST else scenario.belief.gamma
    return eps + (eps - 1) * g * phi


def _markup_fixed_point_rhs(m: float, scenario: MonopolyScenario) -> float:
    """RHS of the markup fixed-point equation M = 1 + 1/[(eps-1)(1+g*phi)]."""
    eps = scenario.fairness.epsilon
    if scenario.regime is Regime.OBSERVABLE_COST:
        m_p = m
        g = 1.0
    else:
        m_p = perceived_markup(m * scenario.marginal_cost, scenario.belief)
        g = scenario.belief.gamma
    if m_p >= scenario.fairness.m_high:
        # Perceived markup out of domain: demand vanishes, push M down.
        return 1.0
    phi = fairness_elasticity(m_p, scenario.fairness)
    return 1.0 + 1.0 / ((eps - 1) * (1.0 + g * phi))


def solve_markup(scenario: MonopolyScenario) -> MonopolyOutcome:
    """Equilibrium markup, price, elasticity, and passthrough for a scenario.

    Frictionless regimes use the closed form M = eps/(eps-1); the others
    bisect the strictly decreasing fixed-point map on (1, eps/(eps-1)).
    """
    eps = scenario.fairness.epsilon
    m_friction_free = eps / (eps - 1)
    closed_form = (
        scenario.regime in (Regime.NO_FAIRNESS, Regime.RATIONAL_INFERENCE)
        or scenario.fairness.theta == 0  # avoids 0*inf in phi bookkeeping
    )
    if closed_form:
        m = m_friction_free
        m_p = m_friction_free
        e = eps
        beta = 1.0
    else:
        lo = 1.0 + _BISECT_LO_PAD
        hi = m_friction_free - _BISECT_LO_PAD
        f_lo = _markup_fixed_point_rhs(lo, scenario) - lo
        f_hi = _markup_fixed_point_rhs(hi, scenario) - hi
        if f_lo <= 0 or f_hi >= 0:
            raise InfeasibleScenario(
                "fixed-point bracket does not straddle a root on "
                f"({lo}, {hi}); check the prior-cost bound"
            )
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if _markup_fixed_point_rhs(mid, scenario) > mid:
                lo = mid
            else:
                hi = mid
            if hi - lo < _BISECT_TOL:
                break
        m = 0.5 * (lo + hi)
        m_p = _perceived_at_price(m * scenario.marginal_cost, scenario)
        e = demand_elasticity(m_p, scenario)
        if scenario.regime is Regime.OBSERVABLE_COST:
            beta = 1.0
        else:
            beta = _passthrough_formula(m_p, scenario)
    return MonopolyOutcome(
        markup=m,
        price=m * scenario.marginal_cost,
        perceived_markup=m_p,
        elasticity=e,
        passthrough=beta,
    )


def _passthrough_formula(m_p: float, scenario: MonopolyScenario) -> float:
    """beta = 1 / {1 + g^2*phi*sigma / [(1+g*phi)(eps+(eps-1)*g*phi)]}."""
    eps = scenario.fairness.epsilon
    g = scenario.belief.gamma
    phi = fairness_elasticity(m_p, scenario.fairness)
    sig = fairness_superelasticity(m_p, scenario.fairness)
    return 1.0 / (
        1.0 + g * g * phi * sig / ((1 + g * phi) * (eps + (eps - 1) * g * phi))
    )


def passthrough(scenario: MonopolyScenario, outcome: MonopolyOutcome) -> float:
    """Cost passthrough dlnP/dlnC at the solved equilibrium."""
    if scenario.regime is not Regime.SUBPROPORTIONAL or scenario.fairness.theta == 0:
        return 1.0
    return _passthrough_formula(outcome.perceived_markup, scenario)


def acclimated_markup(epsilon: float, theta: float, gamma: float) -> float:
    """Closed-form markup when the perceived markup sits at the fair anchor."""
    return 1.0 + 1.0 / ((1.0 + gamma * theta) * epsilon - 1.0)


def acclimated_passthrough(epsilon: float, theta: float, gamma: float) -> float:
    """Closed-form passthrough at the acclimation point."""
    if theta == 0:
        return 1.0
    num = gamma * gamma * theta * ((1 + theta) * epsilon - 1)
    den = (epsilon - 1) * (1 + gamma * theta) * ((1 + gamma * theta) * epsilon - 1)
    return 1.0 / (1.0 + num / den)


def acclimated_scenario(epsilon: float, theta: float, gamma: float,
                        marginal_cost: float = 1.0) -> MonopolyScenario:
    """Subproportional scenario whose equilibrium sits at the acclimation point.

    The prior cost is chosen so the perceived markup at the equilibrium price
    equals the fair anchor eps/(eps-1).
    """
    m = acclimated_markup(epsilon, theta, gamma)
    prior = m * marginal_cost * (epsilon - 1) / epsilon
    return MonopolyScenario(
        marginal_cost=marginal_cost,
        fairness=FairnessSpec.anchored(theta, epsilon),
        belief=BeliefSpec(gamma=gamma, prior_cost=prior, epsilon=epsilon),
        regime=Regime.SUBPROPORTIONAL,
    )


def acclimated_comparative_statics(
    epsilon_grid, theta_grid, gamma_grid
) -> list[dict[str, float]]:
    """Table of (epsilon, theta, gamma, markup, passthrough) closed forms."""
    rows = []
    for e in epsilon_grid:
        for t in theta_grid:
            for g in gamma_grid:
                rows.append({
                    "epsilon": float(e),
                    "theta": float(t),
                    "gamma": float(g),
                    "markup": acclimated_markup(e, t, g),
                    "passthrough": acclimated_passthrough(e, t, g),
                })
    return rows


def price_domain_bound(scenario: MonopolyScenario) -> float:
    """Largest price with well-defined demand for the scenario's regime."""
    eps = scenario.fairness.epsilon
    mh = scenario.fairness.m_high
    if scenario.regime is Regime.SUBPROPORTIONAL and scenario.fairness.theta > 0:
        # Invert the belief rule at m_high: the perceived markup reaches the
        # fairness-domain bound exactly at this price.
        mf = eps / (eps - 1)
        return mf * (mh / mf) ** (1.0 / scenario.belief.gamma) \
            * scenario.belief.prior_cost
    if scenario.regime is Regime.OBSERVABLE_COST and scenario.fairness.theta > 0:
        return mh * scenario.marginal_cost
    return math.inf


def profit_scan(scenario: MonopolyScenario, price_grid) -> list[tuple[float, float, int]]:
    """(P, V(P), sign of V'(P)) along a grid; V' by central differences.

    The sign pattern should show exactly one + to - change at the profit
    maximum for admissible scenarios.
    """
    grid = np.asarray(price_grid, dtype=float)
    v = np.array([
        (p - scenario.marginal_cost) * demand(p, scenario) for p in grid
    ])
    signs = np.zeros(len(grid), dtype=int)
    dv = np.gradient(v, grid)
    signs[dv > 0] = 1
    signs[dv < 0] = -1
    return list(zip(grid.tolist(), v.tolist(), signs.tolist()))
