"""Steady states and the long-run inflation-employment trade-off.

All internal rates are quarterly log units. Annualization happens once, in
the emission layer (CLI/service), never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


class InadmissibleSteadyState(ValueError):
    """Fairness factor would be non-positive at the requested inflation."""


@dataclass(frozen=True)
class NKParams:
    epsilon: float = 2.23
    theta: float = 9.0
    gamma: float = 0.8
    eta: float = 1.1
    delta: float = 0.99
    alpha: float = 1.0
    psi: float = 1.5
    nu: float = 6.0  # not pinned by any reported target; used only for levels
    chi: float = 0.0
    mu_i: float = 0.75
    mu_a: float = 0.9

    def __post_init__(self) -> None:
        checks = [
            (self.epsilon > 1, "epsilon must be > 1"),
            (self.theta >= 0, "theta must be >= 0"),
            (0 < self.gamma < 1, "gamma must be in (0, 1)"),
            (self.eta > 0, "eta must be > 0"),
            (0 < self.delta < 1, "delta must be in (0, 1)"),
            (0 < self.alpha <= 1, "alpha must be in (0, 1]"),
            (self.psi > 1, "psi must be > 1"),
            (self.nu > 1, "nu must be > 1"),
            (0 <= self.chi <= 1, "chi must be in [0, 1]"),
            (0 < self.mu_i < 1, "mu_i must be in (0, 1)"),
            (0 < self.mu_a < 1, "mu_a must be in (0, 1)"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ValueError(f"{msg} (got {self})")

    @property
    def rho(self) -> float:
        """Time-preference rate, -ln(delta)."""
        return -math.log(self.delta)

    @property
    def fair_markup(self) -> float:
        return self.epsilon / (self.epsilon - 1)

    @property
    def k_discount(self) -> float:
        """Weight (1-delta)*gamma/(1-delta*gamma) on phi in the markup formula."""
        return (1 - self.delta) * self.gamma / (1 - self.delta * self.gamma)


@dataclass(frozen=True)
class SteadyState:
    pi_bar: float
    m_p_bar: float
    f_bar: float
    phi_bar: float
    sigma_bar: float
    markup_bar: float
    employment_rel: float
    employment_abs: float | None = None


def steady_inflation(i0_bar: float, params: NKParams) -> float:
    """Quarterly inflation implied by the policy intercept: (rho - i0)/(psi - 1)."""
    return (params.rho - i0_bar) / (params.psi - 1)


def i0_for_inflation(pi_bar: float, params: NKParams) -> float:
    """Policy intercept that sustains a given quarterly inflation rate."""
    return params.rho - (params.psi - 1) * pi_bar


def _markup_bar(pi_bar: float, params: NKParams) -> tuple[float, float, float, float]:
    """(m_p_bar, f_bar, phi_bar, markup_bar) at quarterly inflation pi_bar."""
    mf = params.fair_markup
    m_p = mf * math.exp(params.gamma * pi_bar / (1 - params.gamma))
    f = 1.0 - params.theta * (1 - params.chi) * (m_p - mf)
    if f <= 0:
        raise InadmissibleSteadyState(
            f"fairness factor {f} <= 0 at quarterly inflation {pi_bar} "
            f"(chi={params.chi}); steady state undefined"
        )
    phi = params.theta * m_p / f
    markup = 1.0 + 1.0 / ((params.epsilon - 1) * (1.0 + params.k_discount * phi))
    return m_p, f, phi, markup


def steady_state(pi_bar: float, params: NKParams,
                 with_level: bool = False) -> SteadyState:
    """Full steady state at a quarterly inflation rate.

    employment_rel is N(pi)/N(0); the level requires nu and is optional.
    """
    m_p, f, phi, markup = _markup_bar(pi_bar, params)
    _, _, _, markup0 = _markup_bar(0.0, params)
    rel = (markup0 / markup) ** (1.0 / (1.0 + params.eta))
    level = None
    if with_level:
        level = ((params.nu - 1) * params.alpha / params.nu / markup) ** (
            1.0 / (1.0 + params.eta)
        )
    return SteadyState(
        pi_bar=pi_bar,
        m_p_bar=m_p,
        f_bar=f,
        phi_bar=phi,
        sigma_bar=1.0 + phi,
        markup_bar=markup,
        employment_rel=rel,
        employment_abs=level,
    )


def phillips_slope_at_zero(params: NKParams) -> float:
    """Slope d(pi)/d(ln N) of the long-run inflation-employment locus at zero
    inflation; positive, and increasing in chi."""
    e, t, g, d = params.epsilon, params.theta, params.gamma, params.delta
    k = params.k_discount
    return (
        (1 + params.eta) / (1 - d)
        * (1 - g) * (1 - d * g) / (g * g)
        * (e - 1) / t
        * (1 + k * t) * ((1 + k * t) * e - 1)
        / ((1 + (1 - params.chi) * t) * e - 1)
    )


def long_run_curve(pi_annual_grid, chi_list, params: NKParams) -> list[dict]:
    """Per-chi long-run curves over an annual-inflation grid.

    Returns rows {pi_annual_pct, chi, markup, employment_dev_pct, admissible}.
    Inadmissible points are flagged, not dropped.
    """
    rows = []
    for chi in chi_list:
        p = replace(params, chi=float(chi))
        for pi_a in pi_annual_grid:
            pi_q = float(pi_a) / 100.0 / 4.0  # annual pct to quarterly log rate
            row = {
                "pi_annual_pct": float(pi_a),
                "chi": float(chi),
                "markup": math.nan,
                "employment_dev_pct": math.nan,
                "admissible": True,
            }
            try:
                ss = steady_state(pi_q, p)
                row["markup"] = ss.markup_bar
                row["employment_dev_pct"] = 100.0 * (ss.employment_rel - 1.0)
            except InadmissibleSteadyState:
                row["admissible"] = False
            rows.append(row)
    return rows
