"""Embedded acceptance suite: headline quantitative targets plus property
checks, runnable from the CLI selfcheck and from the test suite.

Each criterion returns a CriterionResult with a pass flag, a measured-vs-
target detail string, and its wall-clock runtime. lambda1_override is a
fault-injection hook: it feeds a wrong Phillips-curve slope into the system
assembly while the residual checks keep using the correct closed form, so
an injected fault must surface as a failed Phillips-residual check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import firmpath, lre, nklinear
from .monopoly import (
    Regime,
    acclimated_markup,
    acclimated_passthrough,
    acclimated_scenario,
    solve_markup,
)
from .steady import NKParams, long_run_curve, phillips_slope_at_zero, steady_state
from .textbook import TextbookParams, textbook_irf


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget_seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.index}. {self.name} "
                f"({self.seconds * 1e3:.1f} ms, budget "
                f"{self.budget_seconds * 1e3:.0f} ms): {self.detail}")


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def criterion_steady_markup() -> CriterionResult:
    params = NKParams()
    steady_state(0.0, params)  # warm up
    ss, dt = _timed(lambda: steady_state(0.0, params))
    ok = abs(ss.markup_bar - 1.5) <= 0.01 and dt < 1e-3
    return CriterionResult(
        1, "steady-state markup", ok,
        f"markup {ss.markup_bar:.4f} vs 1.50 +/- 0.01", dt, 1e-3,
    )


def criterion_calibration_round_trip() -> CriterionResult:
    t0 = time.perf_counter()
    checks = []
    try:
        r = firmpath.calibrate()
        got = r
    except firmpath.SearchFailure as exc:
        got = exc.best
    dt = time.perf_counter() - t0
    if got is None:
        return CriterionResult(
            2, "calibration round trip", False,
            "search failed with no candidate", dt, 30.0,
        )
    checks = [
        ("theta", got.theta, 9.0, 0.5),
        ("gamma", got.gamma, 0.8, 0.02),
        ("epsilon", got.epsilon, 2.23, 0.05),
        ("beta0", got.beta0, 0.4, 0.005),
        ("beta_2yr", got.beta_2yr, 0.7, 0.005),
    ]
    parts = []
    ok = dt < 30.0
    for name, val, target, tol in checks:
        hit = abs(val - target) <= tol
        ok = ok and hit
        parts.append(f"{name} {val:.4f} vs {target} +/- {tol} "
                     f"({'ok' if hit else 'MISS'})")
    return CriterionResult(2, "calibration round trip", ok,
                           "; ".join(parts), dt, 30.0)


def criterion_spectrum(lambda1_override: float | None = None) -> CriterionResult:
    params = NKParams()
    system = nklinear.assemble(params, nklinear.ShockKind.MONETARY,
                               lambda1_override=lambda1_override)
    np.linalg.eigvals(system.gamma_matrix)  # warm up
    eig, dt = _timed(lambda: np.linalg.eigvals(system.gamma_matrix))
    eig = sorted(eig, key=abs)
    real = eig[0]
    pair = eig[1], eig[2]
    ok = (
        abs(real.imag) < 1e-9
        and round(real.real, 2) == 0.30
        and round(pair[0].real, 2) == 1.02
        and round(abs(pair[0].imag), 2) == 0.03
        and np.isclose(pair[0].real, pair[1].real)
        and dt < 1e-3
    )
    return CriterionResult(
        3, "linear-system spectrum", ok,
        f"eigenvalues {real.real:.4f}, {pair[0].real:.4f} +/- "
        f"{abs(pair[0].imag):.4f}i vs 0.30, 1.02 +/- 0.03i", dt, 1e-3,
    )


def criterion_monetary_irf(lambda1_override: float | None = None) -> CriterionResult:
    params = NKParams()
    nklinear.monetary_irf(params)  # warm up
    series, dt = _timed(
        lambda: nklinear.monetary_irf(params, lambda1_override=lambda1_override)
    )
    peak_n = 100 * series.n_hat.max()
    trough_m = 100 * series.m_hat.min()
    ok = abs(peak_n - 0.7) <= 0.1 and abs(trough_m - (-1.4)) <= 0.15 and dt < 1e-2
    return CriterionResult(
        4, "monetary impulse magnitudes", ok,
        f"peak n {peak_n:.3f}% vs 0.7 +/- 0.1; trough markup {trough_m:.3f}% "
        "vs -1.4 +/- 0.15", dt, 1e-2,
    )


def criterion_technology_irf(lambda1_override: float | None = None) -> CriterionResult:
    params = NKParams()
    nklinear.technology_irf(params)  # warm up
    series, dt = _timed(
        lambda: nklinear.technology_irf(params, lambda1_override=lambda1_override)
    )
    peak_m = 100 * series.m_hat.max()
    trough_n = 100 * series.n_hat.min()
    y0 = 100 * series.y_hat[0]
    hump = int(series.n_hat.argmin()) >= 1
    ok = (abs(peak_m - 1.3) <= 0.15 and abs(trough_n - (-0.7)) <= 0.1
          and abs(y0 - 0.5) <= 0.1 and hump and dt < 1e-2)
    return CriterionResult(
        5, "technology impulse magnitudes", ok,
        f"peak markup {peak_m:.3f}% vs 1.3 +/- 0.15; trough n {trough_n:.3f}% "
        f"vs -0.7 +/- 0.1; y(0) {y0:.3f}% vs 0.5 +/- 0.1; "
        f"extremum at t={int(series.n_hat.argmin())} (need >= 1)", dt, 1e-2,
    )


def criterion_textbook_ratio() -> CriterionResult:
    params = NKParams()
    tb = TextbookParams.from_nk(params)
    textbook_irf(tb, nklinear.ShockKind.MONETARY)  # warm up
    series, dt = _timed(lambda: textbook_irf(tb, nklinear.ShockKind.MONETARY))
    fair = nklinear.monetary_irf(params)
    ratio = series.y_hat.max() / fair.y_hat.max()
    at_zero = int(np.abs(series.n_hat).argmax()) == 0
    ok = abs(ratio - 0.33) <= 0.15 and at_zero and dt < 1e-2
    return CriterionResult(
        6, "sticky-price comparator", ok,
        f"output ratio {ratio:.3f} vs 0.33 +/- 0.15; |n| max at "
        f"t={int(np.abs(series.n_hat).argmax())} (need 0)", dt, 1e-2,
    )


def criterion_long_run_curve() -> CriterionResult:
    params = NKParams()
    targets = {0.0: 1.2, 0.3: 0.8, 0.7: 0.4, 1.0: 0.06}
    long_run_curve([1.0], list(targets), params)  # warm up
    rows, dt = _timed(lambda: long_run_curve([1.0], list(targets), params))
    parts = []
    ok = dt < 1e-2
    for row in rows:
        target = targets[row["chi"]]
        hit = abs(row["employment_dev_pct"] - target) <= 0.1
        ok = ok and hit
        parts.append(f"chi={row['chi']:g}: {row['employment_dev_pct']:.3f}% "
                     f"vs {target} ({'ok' if hit else 'MISS'})")
    return CriterionResult(7, "long-run inflation-employment trade-off", ok,
                           "; ".join(parts), dt, 1e-2)


def criterion_properties(lambda1_override: float | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    failures: list[str] = []

    # (a) passthrough formula vs finite-difference re-solve
    rng = np.random.default_rng(7)
    worst_a = 0.0
    for _ in range(100):
        eps = 1.5 + 2.5 * rng.random()
        th = 0.2 + 8.0 * rng.random()
        g = 0.1 + 0.85 * rng.random()
        scen = acclimated_scenario(eps, th, g)
        out = solve_markup(scen)
        h = 1e-6
        from dataclasses import replace
        scen2 = replace(scen, marginal_cost=scen.marginal_cost * (1 + h))
        out2 = solve_markup(scen2)
        beta_fd = (np.log(out2.price) - np.log(out.price)) / np.log(1 + h)
        rel = abs(beta_fd - out.passthrough) / out.passthrough
        worst_a = max(worst_a, rel)
    if worst_a > 1e-5:
        failures.append(f"(a) passthrough FD mismatch {worst_a:.2e} > 1e-5")

    # (b) closed-form comparative statics monotone on a 5x5x5 grid
    eps_g = np.linspace(1.6, 4.0, 5)
    th_g = np.linspace(0.5, 9.0, 5)
    ga_g = np.linspace(0.1, 0.9, 5)
    mono_ok = True
    for th in th_g:
        for g in ga_g:
            m = [acclimated_markup(e, th, g) for e in eps_g]
            b = [acclimated_passthrough(e, th, g) for e in eps_g]
            mono_ok &= all(np.diff(m) < 0) and all(np.diff(b) > 0)
    for e in eps_g:
        for g in ga_g:
            m = [acclimated_markup(e, th, g) for th in th_g]
            b = [acclimated_passthrough(e, th, g) for th in th_g]
            mono_ok &= all(np.diff(m) < 0) and all(np.diff(b) < 0)
    for e in eps_g:
        for th in th_g:
            m = [acclimated_markup(e, th, g) for g in ga_g]
            b = [acclimated_passthrough(e, th, g) for g in ga_g]
            mono_ok &= all(np.diff(m) < 0) and all(np.diff(b) < 0)
    if not mono_ok:
        failures.append("(b) comparative-statics monotonicity violated")

    # (c) long-run slope vs finite differences
    from .steady import steady_state as ss_fn
    for chi in (0.0, 0.4, 0.9):
        p = NKParams(chi=chi)
        closed = phillips_slope_at_zero(p)
        h = 1e-6
        ln_n = lambda pi: np.log(ss_fn(pi, p).employment_rel)
        fd = 2 * h / (ln_n(h) - ln_n(-h))
        if abs(fd - closed) / closed > 1e-4:
            failures.append(f"(c) slope FD mismatch at chi={chi}")

    # (d) profit unimodality across the four regimes
    from .monopoly import MonopolyScenario, price_domain_bound, profit_scan
    from .fairness import BeliefSpec, FairnessSpec
    base = acclimated_scenario(2.23, 9.0, 0.8)
    scenarios = [
        base,
        MonopolyScenario(1.0, base.fairness, base.belief, Regime.NO_FAIRNESS),
        MonopolyScenario(1.0, base.fairness, base.belief,
                         Regime.RATIONAL_INFERENCE),
        MonopolyScenario(1.0, FairnessSpec.anchored(2.0, 2.23),
                         BeliefSpec(gamma=0.8, prior_cost=1.0, epsilon=2.23),
                         Regime.OBSERVABLE_COST),
    ]
    for scen in scenarios:
        hi = min(price_domain_bound(scen), 6.0 * scen.marginal_cost)
        grid = np.linspace(scen.marginal_cost * 1.0005, hi * 0.9995, 10_000)
        scan = profit_scan(scen, grid)
        signs = [s for _, _, s in scan if s != 0]
        flips = sum(1 for a, b in zip(signs[:-1], signs[1:]) if a != b)
        if flips != 1 or signs[0] != 1 or signs[-1] != -1:
            failures.append(
                f"(d) profit not unimodal in regime {scen.regime.value} "
                f"({flips} sign changes)"
            )

    # (e) per-period linearized identities along both IRFs
    params = NKParams()
    lam1, lam2 = nklinear.lambdas(params)  # correct slopes, independent of hook
    d, g, al, psi = params.delta, params.gamma, params.alpha, params.psi
    for kind in (nklinear.ShockKind.MONETARY, nklinear.ShockKind.TECHNOLOGY):
        if kind is nklinear.ShockKind.MONETARY:
            series = nklinear.monetary_irf(params,
                                           lambda1_override=lambda1_override)
            i0 = series.shock
            a = np.zeros_like(i0)
        else:
            series = nklinear.technology_irf(params,
                                             lambda1_override=lambda1_override)
            a = series.shock
            i0 = np.zeros_like(a)
        pi, n, mp = series.pi_hat, series.n_hat, series.m_p_hat
        mp_prev = np.concatenate([[0.0], mp[:-1]])
        ids = {
            "markup-employment": series.m_hat + (1 + params.eta) * n,
            "output": series.y_hat - a - al * n,
            "policy-rate": series.i_hat - i0 - psi * pi,
            "perceived-markup law": mp - g * (pi + mp_prev),
            "Phillips residual": ((1 - d * g) * mp[:-1] - lam1 * n[:-1]
                                  - d * g * pi[1:] + lam2 * n[1:]),
            "IS residual": (al * n[:-1] + psi * pi[:-1] - al * n[1:] - pi[1:]
                            + i0[:-1] + a[:-1] - a[1:]),
        }
        for name, resid in ids.items():
            worst = float(np.abs(resid).max())
            if worst > 1e-10:
                failures.append(
                    f"(e) {name} residual {worst:.2e} > 1e-10 on the "
                    f"{kind.value} path"
                )

    # (f) stacked-path residuals and horizon insensitivity
    prob = firmpath.FirmPathProblem(
        epsilon=firmpath.epsilon_from_markup(12.0, 0.8, 1.5),
        theta=12.0, gamma=0.8,
    )
    path = firmpath.simulate_passthrough(prob)
    if path.worst_residual > 1e-10:
        failures.append(f"(f) path residual {path.worst_residual:.2e} > 1e-10")
    from dataclasses import replace as _replace
    path2 = firmpath.simulate_passthrough(_replace(prob, horizon=400))
    if abs(path2.beta[0] - path.beta[0]) >= 1e-6:
        failures.append(
            f"(f) horizon doubling moved beta(0) by "
            f"{abs(path2.beta[0] - path.beta[0]):.2e} >= 1e-6"
        )

    dt = time.perf_counter() - t0
    ok = not failures and dt < 20.0
    detail = "all property checks passed" if not failures else "; ".join(failures)
    return CriterionResult(8, "property suite", ok, detail, dt, 20.0)


def run_all(lambda1_override: float | None = None) -> list[CriterionResult]:
    return [
        criterion_steady_markup(),
        criterion_calibration_round_trip(),
        criterion_spectrum(lambda1_override=lambda1_override),
        criterion_monetary_irf(lambda1_override=lambda1_override),
        criterion_technology_irf(lambda1_override=lambda1_override),
        criterion_textbook_ratio(),
        criterion_long_run_curve(),
        criterion_properties(lambda1_override=lambda1_override),
    ]
