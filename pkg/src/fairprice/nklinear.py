"""Log-linearized NK model with fairness: assembly and impulse responses.

State order is x(t) = (m_p_hat(t-1), pi_hat(t), n_hat(t)) with one
predetermined variable. The structural system is

    L E_t[x(t+1)] = R x(t) + (0, 1, 0)' w(t)

with L = [[1,0,0],[0,1,alpha],[1-dg,-dg,lambda2]] and
R = [[gamma,gamma,0],[0,psi,alpha],[0,0,lambda1]], dg = delta*gamma.
The forcing is w = i0_hat for monetary shocks and w = (1-mu_a)*a_hat for
technology shocks. Gamma and Psi are formed by a numeric solve; closed-form
expressions serve as independent oracles in the tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import lre
from .steady import NKParams, steady_state


class ShockKind(enum.Enum):
    MONETARY = "monetary"
    TECHNOLOGY = "technology"


DEFAULT_HORIZON = 24
DEFAULT_MONETARY_IMPULSE = 0.0025  # quarterly, 0.25%
DEFAULT_TECHNOLOGY_IMPULSE = 0.01  # 1%


@dataclass(frozen=True)
class LogLinSystem:
    lambda1: float
    lambda2: float
    gamma_matrix: np.ndarray
    psi_vector: np.ndarray
    shock_kind: ShockKind
    params: NKParams

    @property
    def n_pre(self) -> int:
        return 1

    @property
    def shock_persistence(self) -> float:
        return (self.params.mu_i if self.shock_kind is ShockKind.MONETARY
                else self.params.mu_a)

    def as_model(self) -> lre.LinearREModel:
        return lre.LinearREModel(
            gamma_matrix=self.gamma_matrix,
            psi_vector=self.psi_vector,
            n_pre=self.n_pre,
            shock_persistence=self.shock_persistence,
        )


@dataclass(frozen=True)
class IRFSeries:
    """Per-quarter deviations from steady state, in natural (quarterly, log)
    units; percent/annualized conversion happens at emission."""

    t: np.ndarray
    shock: np.ndarray       # i0_hat or a_hat path
    pi_hat: np.ndarray
    n_hat: np.ndarray
    m_p_hat: np.ndarray
    m_hat: np.ndarray
    y_hat: np.ndarray
    i_hat: np.ndarray
    real_wage_hat: np.ndarray
    shock_kind: ShockKind
    model_tag: str = "fairness"


def lambdas(params: NKParams,
            lambda1_override: float | None = None) -> tuple[float, float]:
    """Phillips-curve slopes at the zero-inflation steady state.

    lambda1_override exists solely for fault injection in the selfcheck.
    """
    ss = steady_state(0.0, params)
    e, g, d, eta = params.epsilon, params.gamma, params.delta, params.eta
    phi, sig = ss.phi_bar, ss.sigma_bar
    k = params.k_discount
    lam1 = (1 + eta) * (e + (e - 1) * g * phi) / (g * phi * sig) * (1 + k * phi)
    lam2 = (1 + eta) * d * (e + (e - 1) * phi) / (phi * sig) * (1 + k * phi)
    if lambda1_override is not None:
        lam1 = lambda1_override
    return lam1, lam2


def omega_coefficients(params: NKParams) -> tuple[float, float, float, float]:
    """Intermediate elasticity ratios; alternate route to the lambdas."""
    ss = steady_state(0.0, params)
    e, g, d = params.epsilon, params.gamma, params.delta
    phi, sig = ss.phi_bar, ss.sigma_bar
    k = params.k_discount
    om0 = (e - 1) * g * phi * sig / (e + (e - 1) * g * phi)
    om1 = (e - 1) * (1 + k * phi)
    om2 = (e - 1) * phi * sig / (e + (e - 1) * phi)
    om3 = d * g * (e + (e - 1) * phi) / (e + (e - 1) * g * phi)
    return om0, om1, om2, om3


def assemble(params: NKParams, shock_kind: ShockKind,
             lambda1_override: float | None = None) -> LogLinSystem:
    """Build the linear system for one shock kind."""
    lam1, lam2 = lambdas(params, lambda1_override=lambda1_override)
    g, d, al, psi = params.gamma, params.delta, params.alpha, params.psi
    dg = d * g
    lhs = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, al],
        [1.0 - dg, -dg, lam2],
    ])
    rhs = np.array([
        [g, g, 0.0],
        [0.0, psi, al],
        [0.0, 0.0, lam1],
    ])
    if abs(np.linalg.det(lhs)) < 1e-14:
        raise ValueError("singular left-hand matrix; invalid parameters")
    gamma = np.linalg.solve(lhs, rhs)
    psi_vec = np.linalg.solve(lhs, np.array([0.0, 1.0, 0.0]))
    return LogLinSystem(
        lambda1=lam1,
        lambda2=lam2,
        gamma_matrix=gamma,
        psi_vector=psi_vec,
        shock_kind=shock_kind,
        params=params,
    )


def _run_irf(system: LogLinSystem, w0: float, horizon: int) -> np.ndarray:
    rule = lre.solve(system.as_model())
    return lre.impulse_response(rule, w0, horizon)


def _series_from_paths(system: LogLinSystem, paths: np.ndarray,
                       shock_path: np.ndarray) -> IRFSeries:
    params = system.params
    mp_prev = paths[:, 0]
    pi = paths[:, 1]
    n = paths[:, 2]
    mp = params.gamma * (pi + mp_prev)
    m = -(1 + params.eta) * n
    if system.shock_kind is ShockKind.TECHNOLOGY:
        a = shock_path
        i0 = np.zeros_like(a)
    else:
        a = np.zeros_like(shock_path)
        i0 = shock_path
    y = a + params.alpha * n
    i = i0 + params.psi * pi
    real_wage = a + (params.eta + params.alpha) * n
    return IRFSeries(
        t=np.arange(len(pi)),
        shock=shock_path,
        pi_hat=pi,
        n_hat=n,
        m_p_hat=mp,
        m_hat=m,
        y_hat=y,
        i_hat=i,
        real_wage_hat=real_wage,
        shock_kind=system.shock_kind,
    )


def monetary_irf(params: NKParams, zeta0: float = DEFAULT_MONETARY_IMPULSE,
                 horizon: int = DEFAULT_HORIZON,
                 lambda1_override: float | None = None) -> IRFSeries:
    """Expansionary monetary impulse: i0_hat(0) = -zeta0, AR(1) with mu_i."""
    system = assemble(params, ShockKind.MONETARY,
                      lambda1_override=lambda1_override)
    paths = _run_irf(system, -zeta0, horizon)
    return _series_from_paths(system, paths, paths[:, 3])


def technology_irf(params: NKParams, zeta0: float = DEFAULT_TECHNOLOGY_IMPULSE,
                   horizon: int = DEFAULT_HORIZON,
                   lambda1_override: float | None = None) -> IRFSeries:
    """Technology impulse: a_hat(0) = zeta0, AR(1) with mu_a.

    The forcing in the linear system is w = (1 - mu_a) a_hat; the a_hat path
    itself is reconstructed for the derived series.
    """
    system = assemble(params, ShockKind.TECHNOLOGY,
                      lambda1_override=lambda1_override)
    w0 = (1 - params.mu_a) * zeta0
    paths = _run_irf(system, w0, horizon)
    a_path = zeta0 * params.mu_a ** np.arange(paths.shape[0])
    return _series_from_paths(system, paths, a_path)
