"""Single-firm perfect-foresight passthrough experiment and moment matching.

A firm with fairness-sensitive demand faces an unexpected permanent 1% cost
increase. The perfect-foresight price path solves a four-equation nonlinear
system (pricing first-order condition, demand, markup definition, and the
perceived-markup law of motion), stacked over time and solved by a damped
Newton method with a banded finite-difference Jacobian.

The calibration search recovers (theta, gamma, epsilon) from three moments:
the steady-state markup, the impact passthrough beta(0), and the two-year
passthrough beta(8).

Discounting variants for the continuation term of the pricing condition:
- "constant": profits discounted at the fixed factor delta, which keeps the
  next period's revenue growth factor inside the expectation (the default).
- "revenue": stochastic discount factor proportional to inverse revenue,
  which cancels the growth factor (the general-equilibrium-consistent form).
The constant-discounting equation loses saddle-path stability on part of the
parameter space: its linearization around the steady state can place a
complex eigenvalue pair exactly on the 1/sqrt(delta) circle, in which case
no bounded perfect-foresight path exists and simulate_passthrough raises
NonConvergence with the offending spectrum in the message.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import eig as geig
from scipy.linalg import solve_banded

RESIDUAL_TOL = 1e-12
REQUIRED_RESIDUAL = 1e-10
MAX_NEWTON_ITER = 40
MAX_HALVINGS = 10
_FD_STEP = 1e-7


class NonConvergence(RuntimeError):
    def __init__(self, message: str, worst_residual: float = math.nan,
                 period: int = -1):
        super().__init__(message)
        self.worst_residual = worst_residual
        self.period = period


class NoRoot(ValueError):
    """Target markup unattainable on the search interval."""


class SearchFailure(RuntimeError):
    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class FirmPathProblem:
    epsilon: float
    theta: float
    gamma: float
    delta: float = 0.99
    cost_pre: float = 1.0
    cost_shock: float = 0.01  # permanent proportional cost increase
    horizon: int = 200
    discounting: str = "constant"  # "constant" | "revenue"

    def __post_init__(self) -> None:
        if self.epsilon <= 1:
            raise ValueError(f"epsilon must be > 1, got {self.epsilon}")
        if self.theta < 0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if not 0 < self.gamma < 1:
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.horizon < 16:
            raise ValueError(f"horizon must be >= 16, got {self.horizon}")
        if self.discounting not in ("constant", "revenue"):
            raise ValueError(f"unknown discounting {self.discounting!r}")

    @property
    def cost_post(self) -> float:
        return self.cost_pre * (1.0 + self.cost_shock)


@dataclass(frozen=True)
class PassthroughPath:
    t: np.ndarray
    beta: np.ndarray             # 100 * (P(t) - P_pre) / P_pre
    price: np.ndarray
    markup: np.ndarray
    perceived_markup: np.ndarray
    price_base: float
    worst_residual: float


@dataclass(frozen=True)
class CalibrationResult:
    theta: float
    gamma: float
    epsilon: float
    beta0: float
    beta_2yr: float
    markup: float
    converged: bool
    boundary: str | None = None  # e.g. "theta-lower" when pinned at theta=0


def firm_steady(epsilon: float, theta: float, gamma: float, delta: float,
                marginal_cost: float) -> tuple[float, float, float, float]:
    """(P, M, Y, Mp) in the zero-inflation steady state."""
    mf = epsilon / (epsilon - 1)
    phi = theta * epsilon / (epsilon - 1)
    k = (1 - delta) * gamma / (1 - delta * gamma)
    markup = 1.0 + 1.0 / ((epsilon - 1) * (1.0 + k * phi))
    price = markup * marginal_cost
    return price, markup, price ** (-epsilon), mf


def epsilon_from_markup(theta: float, gamma: float, markup_target: float,
                        delta: float = 0.99) -> float:
    """Substitution elasticity matching a steady-state markup, by bisection."""
    if markup_target <= 1:
        raise NoRoot(f"markup target must be > 1, got {markup_target}")
    lo, hi = 1.0 + 1e-6, 50.0

    def f(e: float) -> float:
        return firm_steady(e, theta, gamma, delta, 1.0)[1] - markup_target

    f_lo, f_hi = f(lo), f(hi)
    if f_lo * f_hi > 0:
        raise NoRoot(
            f"markup {markup_target} unattainable for theta={theta}, "
            f"gamma={gamma} on epsilon in ({lo}, {hi})"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-10:
            break
    return 0.5 * (lo + hi)


def _residuals(problem: FirmPathProblem, ln_p: np.ndarray,
               ln_mp: np.ndarray) -> np.ndarray:
    """Stacked residuals, interleaved (pricing(t), law-of-motion(t)) per t.

    Unknowns are log price and log perceived markup for t = 0..T-1; the
    terminal values at t = T are the new steady state, the initial lags are
    the old steady state. Demand and the markup definition are substituted
    in, leaving two equation families.
    """
    eps, th, g, d = problem.epsilon, problem.theta, problem.gamma, problem.delta
    mf = eps / (eps - 1)
    c_new = problem.cost_post
    p_old, _, _, _ = firm_steady(eps, th, g, d, problem.cost_pre)
    p_new, _, _, _ = firm_steady(eps, th, g, d, c_new)
    t_len = problem.horizon

    p = np.exp(ln_p)
    mp = np.exp(ln_mp)
    m_high = math.inf if th == 0 else mf + 1.0 / th
    if np.any(mp >= m_high) or not np.all(np.isfinite(p)):
        return np.full(2 * t_len, np.nan)

    ln_p_lag = np.concatenate([[math.log(p_old)], ln_p[:-1]])
    ln_mp_lag = np.concatenate([[math.log(mf)], ln_mp[:-1]])
    p_next = np.concatenate([p[1:], [p_new]])
    mp_next = np.concatenate([mp[1:], [mf]])

    def elas(mpv):
        f = 1.0 - th * (mpv - mf)
        return eps + (eps - 1) * g * th * mpv / f

    m = p / c_new
    m_next = p_next / c_new
    e_now = elas(mp)
    e_next = elas(mp_next)
    margin = (m - 1.0) / m
    margin_next = (m_next - 1.0) / m_next

    if problem.discounting == "constant":
        y = p ** (-eps) * (1.0 - th * (mp - mf)) ** (eps - 1)
        y_next = p_next ** (-eps) * (1.0 - th * (mp_next - mf)) ** (eps - 1)
        growth = y_next * p_next / (y * p)
        r_price = margin * e_now - 1.0 - d * growth * (
            margin_next * (e_next - (1 - g) * eps) - g
        )
    else:
        r_price = margin * e_now - (1.0 - d * g) - d * (
            margin_next * (e_next - (1 - g) * eps)
        )

    r_law = ln_mp - ((1 - g) * math.log(mf) + g * (ln_p - ln_p_lag)
                     + g * ln_mp_lag)

    out = np.empty(2 * t_len)
    out[0::2] = r_price
    out[1::2] = r_law
    return out


def _initial_guess(problem: FirmPathProblem) -> tuple[np.ndarray, np.ndarray]:
    """Linear interpolation in log price between the steady states, with the
    perceived-markup guess generated consistently by the law of motion."""
    eps, g = problem.epsilon, problem.gamma
    mf = eps / (eps - 1)
    p_old = firm_steady(eps, problem.theta, g, problem.delta,
                        problem.cost_pre)[0]
    p_new = firm_steady(eps, problem.theta, g, problem.delta,
                        problem.cost_post)[0]
    t_len = problem.horizon
    ramp = np.minimum(np.arange(1, t_len + 1) / (t_len // 4), 1.0)
    ln_p = math.log(p_old) + ramp * (math.log(p_new) - math.log(p_old))
    ln_mp = np.empty(t_len)
    prev_lp, prev_lmp = math.log(p_old), math.log(mf)
    for t in range(t_len):
        ln_mp[t] = (1 - g) * math.log(mf) + g * (ln_p[t] - prev_lp) + g * prev_lmp
        prev_lp, prev_lmp = ln_p[t], ln_mp[t]
    return ln_p, ln_mp


def _banded_jacobian(problem: FirmPathProblem, u: np.ndarray,
                     base: np.ndarray) -> np.ndarray:
    """Finite-difference Jacobian in banded storage (u = l = 3).

    Column z(t) only touches rows of periods t-1, t, t+1, so perturbing
    every third period simultaneously (3 colors x 2 variables = 6 residual
    evaluations) recovers the full Jacobian.
    """
    t_len = problem.horizon
    n = 2 * t_len
    ab = np.zeros((7, n))  # row u + i - j holds J[i, j]
    for var in (0, 1):  # 0: ln_p, 1: ln_mp
        for color in range(3):
            up = u.copy()
            ts = np.arange(color, t_len, 3)
            cols = 2 * ts + var
            up[cols] += _FD_STEP
            d = (_residuals(problem, up[0::2], up[1::2]) - base) / _FD_STEP
            for t in ts:
                j = 2 * t + var
                for i in (2 * t - 2, 2 * t - 1, 2 * t, 2 * t + 1,
                          2 * t + 2, 2 * t + 3):
                    if 0 <= i < n and abs(i - j) <= 3:
                        ab[3 + i - j, j] = d[i]
    return ab


def local_spectrum(problem: FirmPathProblem) -> np.ndarray:
    """Eigenvalues of the linearized period map at the new steady state.

    A bounded path exists iff exactly two finite roots (counting the
    structural zero root) lie strictly inside the unit circle.
    """
    eps, g = problem.epsilon, problem.gamma
    mf = eps / (eps - 1)
    p_new = firm_steady(eps, problem.theta, g, problem.delta,
                        problem.cost_post)[0]
    prob3 = replace(problem, horizon=16)
    lp0 = np.full(16, math.log(p_new))
    lmp0 = np.full(16, math.log(mf))
    u0 = np.empty(32)
    u0[0::2] = lp0
    u0[1::2] = lmp0

    # Middle-period rows: residuals of period 8 w.r.t. z(7), z(8), z(9).
    def resid_mid(u):
        r = _residuals(prob3, u[0::2], u[1::2])
        return r[16:18]

    blocks = []
    for shift in (-1, 0, 1):
        blk = np.zeros((2, 2))
        for var in range(2):
            up = u0.copy()
            up[2 * (8 + shift) + var] += _FD_STEP
            blk[:, var] = (resid_mid(up) - resid_mid(u0)) / _FD_STEP
        blocks.append(blk)
    a_lag, a_now, a_lead = blocks
    aa = np.zeros((4, 4))
    aa[:2, :2] = -a_now
    aa[:2, 2:] = -a_lag
    aa[2:, :2] = np.eye(2)
    bb = np.zeros((4, 4))
    bb[:2, :2] = a_lead
    bb[2:, 2:] = np.eye(2)
    lam = geig(aa, bb, right=False)
    return lam


def _saddle_ok(spectrum: np.ndarray) -> bool:
    finite = spectrum[np.isfinite(spectrum)]
    n_stable = int(np.sum(np.abs(finite) < 1.0 - 1e-9))
    return n_stable == 2


def simulate_passthrough(problem: FirmPathProblem) -> PassthroughPath:
    """Perfect-foresight price path after the permanent cost increase."""
    eps, th, g = problem.epsilon, problem.theta, problem.gamma
    mf = eps / (eps - 1)
    t_len = problem.horizon
    p_old = firm_steady(eps, th, g, problem.delta, problem.cost_pre)[0]

    if th == 0:
        # Full immediate passthrough is the exact solution: the pricing
        # condition no longer depends on perceptions and the markup stays
        # at its frictionless level.
        p_new = firm_steady(eps, 0.0, g, problem.delta, problem.cost_post)[0]
        price = np.full(t_len, p_new)
        ln_mp = np.empty(t_len)
        prev_lp, prev_lmp = math.log(p_old), math.log(mf)
        for t in range(t_len):
            ln_mp[t] = ((1 - g) * math.log(mf)
                        + g * (math.log(p_new) - prev_lp) + g * prev_lmp)
            prev_lp, prev_lmp = math.log(p_new), ln_mp[t]
        return PassthroughPath(
            t=np.arange(t_len),
            beta=100.0 * (price - p_old) / p_old,
            price=price,
            markup=price / problem.cost_post,
            perceived_markup=np.exp(ln_mp),
            price_base=p_old,
            worst_residual=0.0,
        )

    spectrum = local_spectrum(problem)
    if not _saddle_ok(spectrum):
        finite = spectrum[np.isfinite(spectrum)]
        raise NonConvergence(
            "no bounded perfect-foresight path: the linearized period map "
            "has no saddle split (finite eigenvalues "
            f"{np.array2string(finite, precision=4)}; need exactly two "
            "inside the unit circle)"
        )

    ln_p, ln_mp = _initial_guess(problem)
    u = np.empty(2 * t_len)
    u[0::2] = ln_p
    u[1::2] = ln_mp
    res = _residuals(problem, u[0::2], u[1::2])
    if not np.all(np.isfinite(res)):
        raise NonConvergence(
            "initial guess violates the fairness domain (perceived markup "
            "at or above the upper bound)"
        )
    for _ in range(MAX_NEWTON_ITER):
        worst = float(np.abs(res).max())
        if worst <= RESIDUAL_TOL:
            break
        ab = _banded_jacobian(problem, u, res)
        if not np.all(np.isfinite(ab)):
            raise NonConvergence(
                "Jacobian evaluation left the fairness domain at residual "
                f"{worst:.3e}", worst, int(np.abs(res).argmax()) // 2,
            )
        try:
            step = solve_banded((3, 3), ab, -res)
        except np.linalg.LinAlgError as exc:
            raise NonConvergence(
                f"singular Jacobian: {exc}", worst, int(np.abs(res).argmax()) // 2
            ) from exc
        scale = 1.0
        improved = False
        for _ in range(MAX_HALVINGS + 1):
            u_try = u + scale * step
            res_try = _residuals(problem, u_try[0::2], u_try[1::2])
            if np.all(np.isfinite(res_try)) and \
                    float(np.abs(res_try).max()) < worst:
                u, res = u_try, res_try
                improved = True
                break
            scale *= 0.5
        if not improved:
            raise NonConvergence(
                "Newton stalled with damping exhausted at residual "
                f"{worst:.3e} (period {int(np.abs(res).argmax()) // 2})",
                worst, int(np.abs(res).argmax()) // 2,
            )
    worst = float(np.abs(res).max())
    if worst > REQUIRED_RESIDUAL:
        raise NonConvergence(
            f"Newton failed: residual {worst:.3e} > {REQUIRED_RESIDUAL} "
            f"after {MAX_NEWTON_ITER} iterations "
            f"(period {int(np.abs(res).argmax()) // 2})",
            worst, int(np.abs(res).argmax()) // 2,
        )
    price = np.exp(u[0::2])
    return PassthroughPath(
        t=np.arange(t_len),
        beta=100.0 * (price - p_old) / p_old,
        price=price,
        markup=price / problem.cost_post,
        perceived_markup=np.exp(u[1::2]),
        price_base=p_old,
        worst_residual=worst,
    )


def _moments(theta: float, gamma: float, markup_target: float, delta: float,
             discounting: str) -> tuple[float, float, float] | None:
    """(beta0, beta8, epsilon) for a candidate, or None if infeasible."""
    try:
        eps = epsilon_from_markup(theta, gamma, markup_target, delta)
    except NoRoot:
        return None
    try:
        path = simulate_passthrough(FirmPathProblem(
            epsilon=eps, theta=theta, gamma=gamma, delta=delta,
            discounting=discounting,
        ))
    except NonConvergence:
        return None
    return float(path.beta[0]), float(path.beta[8]), eps


def _bisect_on(f, lo: float, hi: float, f_lo: float, f_hi: float,
               n_iter: int = 30) -> tuple[float, float]:
    """Bisection on a scalar residual known to change sign on [lo, hi].

    Infeasible midpoints (None) shrink toward hi, where feasibility held.
    """
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid is None:
            lo = mid  # step away from the infeasible pocket
            continue
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)


def _line_search(f, grid: np.ndarray) -> tuple[float, float] | None:
    """Root of a scalar residual along a grid with infeasible gaps.

    Scans for adjacent feasible points with a sign change and bisects;
    otherwise returns the feasible point with the smallest |residual|.
    """
    vals = [(x, f(x)) for x in grid]
    feas = [(x, v) for x, v in vals if v is not None]
    if not feas:
        return None
    for (x0, v0), (x1, v1) in zip(feas[:-1], feas[1:]):
        if v0 == 0.0:
            return x0, v0
        if (v0 > 0) != (v1 > 0):
            return _bisect_on(f, x0, x1, v0, v1)
    return min(feas, key=lambda xv: abs(xv[1]))


def calibrate(markup_target: float = 1.5, beta0_target: float = 0.4,
              beta_2yr_target: float = 0.7, delta: float = 0.99,
              discounting: str = "constant",
              tol: float = 0.005) -> CalibrationResult:
    """Recover (theta, gamma, epsilon) from the three moments.

    theta is moved against the impact moment beta(0) and gamma against the
    persistence moment beta(8), alternating 1-D searches; epsilon is
    re-pinned to the markup target at every candidate. Raises SearchFailure
    (with the best candidate attached) if neither moment tolerance is met.
    """
    theta_grid = np.concatenate([[0.0], np.linspace(0.5, 20.0, 27)])
    gamma_grid = np.linspace(0.05, 0.95, 19)

    def moments(th: float, g: float):
        if th == 0.0:
            # Full passthrough limit, exact.
            eps = markup_target / (markup_target - 1.0)
            return 100.0 * 0.01, 100.0 * 0.01, eps
        return _moments(th, g, markup_target, delta, discounting)

    # Coarse scan for a starting point.
    best = None
    for th in theta_grid[::3]:
        for g in gamma_grid[::3]:
            m = moments(th, g)
            if m is None:
                continue
            score = abs(m[0] - beta0_target) + abs(m[1] - beta_2yr_target)
            if best is None or score < best[0]:
                best = (score, th, g, m)
    if best is None:
        raise SearchFailure("no feasible (theta, gamma) candidate found")
    _, theta, gamma, m = best

    boundary = None
    for _ in range(12):
        # theta against the impact moment.
        def f_theta(th: float):
            mm = moments(th, gamma)
            return None if mm is None else mm[0] - beta0_target

        hit = _line_search(f_theta, theta_grid)
        if hit is not None:
            theta = hit[0]
            boundary = "theta-lower" if theta == theta_grid[0] else None

        # gamma against the persistence moment.
        def f_gamma(g: float):
            mm = moments(theta, g)
            return None if mm is None else mm[1] - beta_2yr_target

        if theta > 0.0:
            hit = _line_search(f_gamma, gamma_grid)
            if hit is not None:
                gamma = hit[0]

        m = moments(theta, gamma)
        if m is not None and abs(m[0] - beta0_target) <= tol \
                and abs(m[1] - beta_2yr_target) <= tol:
            return CalibrationResult(
                theta=theta, gamma=gamma, epsilon=m[2],
                beta0=m[0], beta_2yr=m[1], markup=markup_target,
                converged=True, boundary=boundary,
            )

    m = moments(theta, gamma)
    result = CalibrationResult(
        theta=theta, gamma=gamma,
        epsilon=(m[2] if m else math.nan),
        beta0=(m[0] if m else math.nan),
        beta_2yr=(m[1] if m else math.nan),
        markup=markup_target, converged=False, boundary=boundary,
    )
    raise SearchFailure(
        f"moment tolerances not met: beta0 {result.beta0:.4f} vs "
        f"{beta0_target}, beta_2yr {result.beta_2yr:.4f} vs {beta_2yr_target}",
        best=result,
    )
