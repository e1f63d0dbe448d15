"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field

from . import steady


class MacroParams(BaseModel):
    """Macro parameter set; defaults are the headline calibration."""

    epsilon: float = 2.23
    theta: float = 9.0
    gamma: float = 0.8
    eta: float = 1.1
    delta: float = 0.99
    alpha: float = 1.0
    psi: float = 1.5
    nu: float = 6.0
    chi: float = 0.0
    mu_i: float = 0.75
    mu_a: float = 0.9

    def to_nk(self) -> steady.NKParams:
        return steady.NKParams(**self.model_dump())


class MonopolyRequest(BaseModel):
    params: MacroParams = MacroParams()
    marginal_cost: float = 1.0
    prior_cost: float | None = None  # default: acclimated prior


class MonopolyRow(BaseModel):
    regime: str
    markup: float
    price: float
    perceived_markup: float
    elasticity: float
    passthrough: float


class MonopolyResponse(BaseModel):
    rows: list[MonopolyRow]
    summary: dict[str, float]


class SteadyRequest(BaseModel):
    params: MacroParams = MacroParams()
    pi_annual_pct: float = 0.0


class SteadyResponse(BaseModel):
    pi_annual_pct: float
    chi: float
    markup: float
    employment_dev_pct: float
    m_p_bar: float
    f_bar: float
    phi_bar: float
    sigma_bar: float
    phillips_slope_at_zero: float


class PhillipsRequest(BaseModel):
    params: MacroParams = MacroParams()
    pi_annual_grid: list[float]
    chi_list: list[float] = Field(default_factory=lambda: [0.0, 0.3, 0.7, 1.0])


class PhillipsRow(BaseModel):
    pi_annual_pct: float
    chi: float
    markup: float
    employment_dev_pct: float
    admissible: bool


class PhillipsResponse(BaseModel):
    rows: list[PhillipsRow]


class IrfRequest(BaseModel):
    params: MacroParams = MacroParams()
    shock: str = "monetary"  # "monetary" | "technology"
    model: str = "fairness"  # "fairness" | "textbook"
    horizon: int = 24
    xi: float = 0.67
    epsilon_tb: float = 3.0


class IrfResponse(BaseModel):
    columns: list[str]
    rows: list[list[float | int | str]]
    summary: dict[str, float]


class PassthroughRequest(BaseModel):
    epsilon: float = 2.23
    theta: float = 9.0
    gamma: float = 0.8
    delta: float = 0.99
    horizon: int = 200
    cost_shock: float = 0.01
    discounting: str = "constant"


class PassthroughRow(BaseModel):
    t: int
    beta_t: float
    price_dev_pct: float
    markup: float
    perceived_markup: float


class PassthroughResponse(BaseModel):
    rows: list[PassthroughRow]
    worst_residual: float
    summary: dict[str, float]


class CalibrateRequest(BaseModel):
    markup_target: float = 1.5
    beta0_target: float = 0.4
    beta_2yr_target: float = 0.7
    delta: float = 0.99
    discounting: str = "constant"


class CalibrateResponse(BaseModel):
    theta: float
    gamma: float
    epsilon: float
    beta0: float
    beta_2yr: float
    markup_target: float
    converged: bool
    boundary: str | None = None


class SelfcheckRequest(BaseModel):
    lambda1_override: float | None = None


class CriterionReport(BaseModel):
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget_seconds: float


class SelfcheckResponse(BaseModel):
    criteria: list[CriterionReport]
    all_passed: bool
    total_seconds: float


class ErrorBody(BaseModel):
    error: str
    kind: str
