import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fairprice.fairness import BeliefSpec, FairnessSpec
from fairprice.monopoly import (
    InfeasibleScenario,
    MonopolyScenario,
    Regime,
    acclimated_markup,
    acclimated_passthrough,
    acclimated_scenario,
    demand,
    demand_elasticity,
    price_domain_bound,
    profit_scan,
    solve_markup,
)

thetas = st.floats(min_value=0.2, max_value=15.0)
epsilons = st.floats(min_value=1.3, max_value=6.0)
gammas = st.floats(min_value=0.1, max_value=0.9)


def test_frictionless_closed_form():
    scen = acclimated_scenario(2.0, 1.0, 0.5)
    for regime in (Regime.NO_FAIRNESS, Regime.RATIONAL_INFERENCE):
        out = solve_markup(replace(scen, regime=regime))
        assert out.markup == pytest.approx(2.0)
        assert out.passthrough == 1.0
        assert out.elasticity == pytest.approx(2.0)


def test_acclimated_closed_forms_small_integers():
    # epsilon=2, theta=1, gamma=0.5: markup 1 + 1/(1.5*2 - 1) = 1.5 and
    # passthrough 1/(1 + 0.25*1*3/(1*1.5*2)) = 0.8.
    assert acclimated_markup(2.0, 1.0, 0.5) == pytest.approx(1.5)
    assert acclimated_passthrough(2.0, 1.0, 0.5) == pytest.approx(0.8)


@given(thetas, epsilons, gammas)
@settings(max_examples=60, deadline=None)
def test_bisection_matches_acclimated_closed_form(theta, epsilon, gamma):
    scen = acclimated_scenario(epsilon, theta, gamma)
    out = solve_markup(scen)
    assert out.markup == pytest.approx(acclimated_markup(epsilon, theta, gamma),
                                       abs=1e-10)
    assert out.passthrough == pytest.approx(
        acclimated_passthrough(epsilon, theta, gamma), rel=1e-9)
    # At acclimation the perceived markup is the fair anchor.
    assert out.perceived_markup == pytest.approx(epsilon / (epsilon - 1),
                                                 rel=1e-9)


def test_markup_ordering_across_regimes():
    theta, epsilon, gamma = 9.0, 2.23, 0.8
    base = acclimated_scenario(epsilon, theta, gamma)
    m = {}
    for regime in Regime:
        m[regime] = solve_markup(replace(base, regime=regime)).markup
    mf = epsilon / (epsilon - 1)
    assert m[Regime.NO_FAIRNESS] == pytest.approx(mf)
    assert m[Regime.RATIONAL_INFERENCE] == pytest.approx(mf)
    # Fairness pushes the markup below the frictionless level. With the
    # acclimated prior the perceived markup sits at the fair anchor, where
    # the fairness elasticity is largest, so the subproportional markup ends
    # up below the observable-cost one (whose equilibrium markup falls below
    # the anchor, earning a fairness bonus F > 1 and a smaller elasticity).
    assert m[Regime.SUBPROPORTIONAL] < m[Regime.OBSERVABLE_COST] < mf


def test_passthrough_below_one_only_under_subproportional():
    base = acclimated_scenario(2.23, 9.0, 0.8)
    for regime in Regime:
        out = solve_markup(replace(base, regime=regime))
        if regime is Regime.SUBPROPORTIONAL:
            assert out.passthrough < 1.0
        else:
            assert out.passthrough == pytest.approx(1.0)


def test_passthrough_matches_finite_difference():
    scen = acclimated_scenario(2.23, 9.0, 0.8)
    out = solve_markup(scen)
    h = 1e-6
    out2 = solve_markup(replace(scen, marginal_cost=1.0 + h))
    beta_fd = (math.log(out2.price) - math.log(out.price)) / math.log(1.0 + h)
    assert beta_fd == pytest.approx(out.passthrough, rel=1e-5)


def test_observable_cost_elasticity():
    theta, epsilon = 2.0, 2.23
    scen = MonopolyScenario(
        marginal_cost=1.0,
        fairness=FairnessSpec.anchored(theta, epsilon),
        belief=BeliefSpec(gamma=0.8, prior_cost=1.0, epsilon=epsilon),
        regime=Regime.OBSERVABLE_COST,
    )
    out = solve_markup(scen)
    phi = scen.fairness.elasticity(out.markup)
    assert out.elasticity == pytest.approx(epsilon + (epsilon - 1) * phi)
    # Equilibrium condition M = E/(E-1).
    assert out.markup == pytest.approx(out.elasticity / (out.elasticity - 1),
                                       abs=1e-9)


def test_demand_elasticity_limits():
    epsilon = 2.23
    base = acclimated_scenario(epsilon, 9.0, 0.8)
    mf = epsilon / (epsilon - 1)
    assert demand_elasticity(mf, replace(base, regime=Regime.NO_FAIRNESS)) \
        == pytest.approx(epsilon)
    assert demand_elasticity(mf, replace(base, regime=Regime.RATIONAL_INFERENCE)) \
        == pytest.approx(epsilon)


def test_infeasible_prior_cost_raises():
    epsilon, theta, gamma = 2.23, 9.0, 0.8
    with pytest.raises(InfeasibleScenario):
        MonopolyScenario(
            marginal_cost=1.0,
            fairness=FairnessSpec.anchored(theta, epsilon),
            belief=BeliefSpec(gamma=gamma, prior_cost=1e-6, epsilon=epsilon),
            regime=Regime.SUBPROPORTIONAL,
        )


def test_price_domain_bound_is_exact():
    scen = acclimated_scenario(2.23, 9.0, 0.8)
    pb = price_domain_bound(scen)
    # Demand is defined just inside the bound and undefined just outside.
    assert demand(pb * (1 - 1e-9), scen) > 0
    from fairprice.fairness import DomainError
    with pytest.raises(DomainError):
        demand(pb * (1 + 1e-9), scen)


def test_price_domain_bound_observable_and_frictionless():
    base = acclimated_scenario(2.23, 9.0, 0.8)
    obs = replace(base, regime=Regime.OBSERVABLE_COST)
    assert price_domain_bound(obs) == pytest.approx(
        base.fairness.m_high * base.marginal_cost)
    assert price_domain_bound(replace(base, regime=Regime.NO_FAIRNESS)) \
        == math.inf


def test_profit_scan_unimodal():
    scen = acclimated_scenario(2.23, 9.0, 0.8)
    hi = min(price_domain_bound(scen), 6.0)
    grid = np.linspace(1.0005, hi * 0.9995, 5000)
    scan = profit_scan(scen, grid)
    signs = [s for _, _, s in scan if s != 0]
    flips = sum(1 for a, b in zip(signs[:-1], signs[1:]) if a != b)
    assert flips == 1 and signs[0] == 1 and signs[-1] == -1
    # The sign change brackets the solved price.
    out = solve_markup(scen)
    last_pos = max(p for p, _, s in scan if s == 1)
    first_neg = min(p for p, _, s in scan if s == -1)
    assert last_pos <= out.price * 1.01 and first_neg >= out.price * 0.99


@given(thetas, epsilons, gammas)
@settings(max_examples=40, deadline=None)
def test_acclimated_passthrough_in_unit_interval(theta, epsilon, gamma):
    b = acclimated_passthrough(epsilon, theta, gamma)
    assert 0.0 < b < 1.0
    m = acclimated_markup(epsilon, theta, gamma)
    assert 1.0 < m < epsilon / (epsilon - 1)
