"""FastAPI service wrapping the core library.

Numerical failures map to HTTP 422 with a structured body; the CLI (the
usual client) translates them into its numeric-failure exit code.
"""

from __future__ import annotations

import time

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__, acceptance, csvio, firmpath, lre, nklinear
from .fairness import DomainError
from .monopoly import (
    InfeasibleScenario,
    MonopolyScenario,
    Regime,
    acclimated_scenario,
    solve_markup,
)
from .schemas import (
    CalibrateRequest,
    CalibrateResponse,
    CriterionReport,
    IrfRequest,
    IrfResponse,
    MonopolyRequest,
    MonopolyResponse,
    MonopolyRow,
    PassthroughRequest,
    PassthroughResponse,
    PassthroughRow,
    PhillipsRequest,
    PhillipsResponse,
    PhillipsRow,
    SelfcheckRequest,
    SelfcheckResponse,
    SteadyRequest,
    SteadyResponse,
)
from .steady import (
    InadmissibleSteadyState,
    long_run_curve,
    phillips_slope_at_zero,
    steady_state,
)
from .textbook import TextbookParams, textbook_irf

NUMERICAL_ERRORS = (
    DomainError,
    InfeasibleScenario,
    InadmissibleSteadyState,
    lre.NoSolution,
    lre.Indeterminate,
    lre.BoundaryEigenvalue,
    firmpath.NonConvergence,
    firmpath.NoRoot,
    firmpath.SearchFailure,
    ValueError,
)

app = FastAPI(title="fairprice", version=__version__)


@app.exception_handler(Exception)
async def _numerical_error_handler(_, exc: Exception):
    if isinstance(exc, NUMERICAL_ERRORS):
        body = {"error": str(exc), "kind": type(exc).__name__}
        best = getattr(exc, "best", None)
        if best is not None:
            body["best"] = {
                "theta": best.theta, "gamma": best.gamma,
                "epsilon": best.epsilon, "beta0": best.beta0,
                "beta_2yr": best.beta_2yr,
            }
        return JSONResponse(status_code=422, content=body)
    raise exc


@app.get("/api/version")
def version() -> dict:
    return {"version": __version__}


@app.post("/api/monopoly", response_model=MonopolyResponse)
def monopoly(req: MonopolyRequest) -> MonopolyResponse:
    p = req.params
    rows = []
    base = acclimated_scenario(p.epsilon, p.theta if p.theta > 0 else 1.0,
                               p.gamma, req.marginal_cost)
    for regime in (Regime.NO_FAIRNESS, Regime.OBSERVABLE_COST,
                   Regime.RATIONAL_INFERENCE, Regime.SUBPROPORTIONAL):
        if regime is Regime.SUBPROPORTIONAL and req.prior_cost is not None:
            from .fairness import BeliefSpec
            scen = MonopolyScenario(
                marginal_cost=req.marginal_cost,
                fairness=base.fairness,
                belief=BeliefSpec(gamma=p.gamma, prior_cost=req.prior_cost,
                                  epsilon=p.epsilon),
                regime=regime,
            )
        else:
            scen = MonopolyScenario(
                marginal_cost=req.marginal_cost,
                fairness=base.fairness,
                belief=base.belief,
                regime=regime,
            )
        if p.theta == 0:
            scen = MonopolyScenario(
                marginal_cost=req.marginal_cost,
                fairness=base.fairness,  # anchored spec with placeholder theta
                belief=base.belief,
                regime=Regime.NO_FAIRNESS,
            )
        out = solve_markup(scen)
        rows.append(MonopolyRow(
            regime=regime.value,
            markup=out.markup,
            price=out.price,
            perceived_markup=out.perceived_markup,
            elasticity=out.elasticity,
            passthrough=out.passthrough,
        ))
    sub = rows[-1]
    return MonopolyResponse(
        rows=rows,
        summary={"subproportional_markup": sub.markup,
                 "subproportional_passthrough": sub.passthrough},
    )


@app.post("/api/steady", response_model=SteadyResponse)
def steady(req: SteadyRequest) -> SteadyResponse:
    params = req.params.to_nk()
    pi_q = req.pi_annual_pct / 100.0 / 4.0
    ss = steady_state(pi_q, params)
    return SteadyResponse(
        pi_annual_pct=req.pi_annual_pct,
        chi=params.chi,
        markup=ss.markup_bar,
        employment_dev_pct=100.0 * (ss.employment_rel - 1.0),
        m_p_bar=ss.m_p_bar,
        f_bar=ss.f_bar,
        phi_bar=ss.phi_bar,
        sigma_bar=ss.sigma_bar,
        phillips_slope_at_zero=phillips_slope_at_zero(params),
    )


@app.post("/api/phillips", response_model=PhillipsResponse)
def phillips(req: PhillipsRequest) -> PhillipsResponse:
    params = req.params.to_nk()
    rows = long_run_curve(req.pi_annual_grid, req.chi_list, params)
    return PhillipsResponse(rows=[PhillipsRow(**row) for row in rows])


@app.post("/api/irf", response_model=IrfResponse)
def irf(req: IrfRequest) -> IrfResponse:
    kind = nklinear.ShockKind(req.shock)
    params = req.params.to_nk()
    if req.model == "textbook":
        tb = TextbookParams.from_nk(params, epsilon_tb=req.epsilon_tb,
                                    xi=req.xi)
        series = textbook_irf(tb, kind, horizon=req.horizon)
    elif req.model == "fairness":
        if kind is nklinear.ShockKind.MONETARY:
            series = nklinear.monetary_irf(params, horizon=req.horizon)
        else:
            series = nklinear.technology_irf(params, horizon=req.horizon)
    else:
        raise ValueError(f"unknown model {req.model!r}")
    rows = csvio.irf_rows(series)
    summary = {
        "peak_n_pct": 100.0 * float(series.n_hat.max()),
        "trough_n_pct": 100.0 * float(series.n_hat.min()),
        "peak_markup_pct": 100.0 * float(series.m_hat.max()),
        "trough_markup_pct": 100.0 * float(series.m_hat.min()),
        "initial_y_pct": 100.0 * float(series.y_hat[0]),
    }
    return IrfResponse(columns=csvio.irf_columns(kind), rows=rows,
                       summary=summary)


@app.post("/api/passthrough", response_model=PassthroughResponse)
def passthrough(req: PassthroughRequest) -> PassthroughResponse:
    problem = firmpath.FirmPathProblem(
        epsilon=req.epsilon, theta=req.theta, gamma=req.gamma,
        delta=req.delta, horizon=req.horizon, cost_shock=req.cost_shock,
        discounting=req.discounting,
    )
    path = firmpath.simulate_passthrough(problem)
    shock_pct = 100.0 * req.cost_shock
    rows = [
        PassthroughRow(
            t=int(path.t[j]),
            beta_t=float(path.beta[j]) / shock_pct,
            price_dev_pct=float(path.beta[j]),
            markup=float(path.markup[j]),
            perceived_markup=float(path.perceived_markup[j]),
        )
        for j in range(len(path.t))
    ]
    return PassthroughResponse(
        rows=rows,
        worst_residual=path.worst_residual,
        summary={"beta0": rows[0].beta_t, "beta_2yr": rows[8].beta_t,
                 "beta_long_run": rows[-1].beta_t},
    )


@app.post("/api/calibrate", response_model=CalibrateResponse)
def calibrate_endpoint(req: CalibrateRequest) -> CalibrateResponse:
    result = firmpath.calibrate(
        markup_target=req.markup_target,
        beta0_target=req.beta0_target,
        beta_2yr_target=req.beta_2yr_target,
        delta=req.delta,
        discounting=req.discounting,
    )
    return CalibrateResponse(
        theta=result.theta, gamma=result.gamma, epsilon=result.epsilon,
        beta0=result.beta0, beta_2yr=result.beta_2yr,
        markup_target=req.markup_target, converged=result.converged,
        boundary=result.boundary,
    )


@app.post("/api/selfcheck", response_model=SelfcheckResponse)
def selfcheck(req: SelfcheckRequest) -> SelfcheckResponse:
    t0 = time.perf_counter()
    results = acceptance.run_all(lambda1_override=req.lambda1_override)
    return SelfcheckResponse(
        criteria=[CriterionReport(
            index=r.index, name=r.name, passed=r.passed, detail=r.detail,
            seconds=r.seconds, budget_seconds=r.budget_seconds,
        ) for r in results],
        all_passed=all(r.passed for r in results),
        total_seconds=time.perf_counter() - t0,
    )
