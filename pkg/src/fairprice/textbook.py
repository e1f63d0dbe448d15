"""Textbook sticky-price NK benchmark (Calvo pricing).

Same IS block as the fairness model; the Phillips curve is
pi(t) = delta E_t pi(t+1) + kappa n(t). There are no predetermined states:
the system in x = (pi_hat, n_hat) is solved with n_pre = 0, and perceived
and actual markups coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lre
from .nklinear import (
    DEFAULT_HORIZON,
    DEFAULT_MONETARY_IMPULSE,
    DEFAULT_TECHNOLOGY_IMPULSE,
    IRFSeries,
    ShockKind,
)
from .steady import NKParams


@dataclass(frozen=True)
class TextbookParams:
    epsilon_tb: float = 3.0
    xi: float = 0.67
    delta: float = 0.99
    eta: float = 1.1
    alpha: float = 1.0
    psi: float = 1.5
    mu_i: float = 0.75
    mu_a: float = 0.9

    def __post_init__(self) -> None:
        if not 0 < self.xi < 1:
            raise ValueError(f"xi must be in (0, 1), got {self.xi}")
        if self.epsilon_tb <= 1:
            raise ValueError(f"epsilon_tb must be > 1, got {self.epsilon_tb}")

    @staticmethod
    def from_nk(params: NKParams, epsilon_tb: float = 3.0,
                xi: float = 0.67) -> "TextbookParams":
        return TextbookParams(
            epsilon_tb=epsilon_tb, xi=xi, delta=params.delta, eta=params.eta,
            alpha=params.alpha, psi=params.psi, mu_i=params.mu_i,
            mu_a=params.mu_a,
        )


def kappa(params: TextbookParams) -> float:
    """Phillips-curve slope; with alpha = 1 the last factor is 1."""
    xi, d = params.xi, params.delta
    al, e = params.alpha, params.epsilon_tb
    return (1 + params.eta) * (1 - xi) * (1 - d * xi) / xi * al / (al + (1 - al) * e)


def _system(params: TextbookParams) -> tuple[np.ndarray, np.ndarray]:
    """Gamma, Psi for x = (pi_hat, n_hat), E_t x(t+1) = Gamma x + Psi w.

    Derived from pi = d*pi' + kap*n and the IS equation
    al*n + psi*pi + w = al*n' + pi'.
    """
    kap = kappa(params)
    d, al, psi = params.delta, params.alpha, params.psi
    gamma = np.array([
        [1 / d, -kap / d],
        [(psi - 1 / d) / al, 1 + kap / (al * d)],
    ])
    psi_vec = np.array([0.0, 1 / al])
    return gamma, psi_vec


def textbook_irf(params: TextbookParams, shock_kind: ShockKind,
                 zeta0: float | None = None,
                 horizon: int = DEFAULT_HORIZON) -> IRFSeries:
    """IRF of the textbook model; same series layout as the fairness model."""
    gamma, psi_vec = _system(params)
    if shock_kind is ShockKind.MONETARY:
        mu = params.mu_i
        z = DEFAULT_MONETARY_IMPULSE if zeta0 is None else zeta0
        w0 = -z
    else:
        mu = params.mu_a
        z = DEFAULT_TECHNOLOGY_IMPULSE if zeta0 is None else zeta0
        w0 = (1 - params.mu_a) * z
    model = lre.LinearREModel(
        gamma_matrix=gamma, psi_vector=psi_vec, n_pre=0, shock_persistence=mu,
    )
    rule = lre.solve(model)
    paths = lre.impulse_response(rule, w0, horizon)
    pi = paths[:, 0]
    n = paths[:, 1]
    w = paths[:, 2]
    if shock_kind is ShockKind.TECHNOLOGY:
        a = z * params.mu_a ** np.arange(horizon)
        i0 = np.zeros_like(a)
    else:
        a = np.zeros(horizon)
        i0 = w
    m = -(1 + params.eta) * n
    return IRFSeries(
        t=np.arange(horizon),
        shock=(i0 if shock_kind is ShockKind.MONETARY else a),
        pi_hat=pi,
        n_hat=n,
        m_p_hat=m,  # perceived and actual markups are equal here
        m_hat=m,
        y_hat=a + params.alpha * n,
        i_hat=i0 + params.psi * pi,
        real_wage_hat=a + (params.eta + params.alpha) * n,
        shock_kind=shock_kind,
        model_tag="textbook",
    )
