"""Generic linear rational-expectations solver.

Solves systems in the form E_t[x(t+1)] = Gamma x(t) + Psi w(t) with AR(1)
forcing w(t+1) = mu w(t), where the first n_pre components of x are
predetermined. The saddle path is extracted from the stable invariant
subspace of the augmented system via a complex Schur decomposition, and the
returned rule is re-substituted into the model before being handed back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

UNIT_CIRCLE_TIE_TOL = 1e-8
RULE_RESIDUAL_TOL = 1e-10


class NoSolution(ValueError):
    """Too few unstable eigenvalues: no bounded solution exists."""


class Indeterminate(ValueError):
    """Too many stable eigenvalues: multiple bounded solutions exist."""


class BoundaryEigenvalue(ValueError):
    """An eigenvalue sits on the unit circle within the tie tolerance."""


@dataclass(frozen=True)
class LinearREModel:
    gamma_matrix: np.ndarray
    psi_vector: np.ndarray
    n_pre: int
    shock_persistence: float

    def __post_init__(self) -> None:
        g = np.asarray(self.gamma_matrix, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"gamma_matrix must be square, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValueError("gamma_matrix must have finite entries")
        p = np.asarray(self.psi_vector, dtype=float).reshape(-1)
        if p.shape[0] != g.shape[0]:
            raise ValueError("psi_vector length must match gamma_matrix")
        if not 0 <= self.n_pre <= g.shape[0]:
            raise ValueError(f"n_pre must be in [0, {g.shape[0]}], got {self.n_pre}")
        if not 0 <= self.shock_persistence < 1:
            raise ValueError(
                f"shock_persistence must be in [0, 1), got {self.shock_persistence}"
            )
        object.__setattr__(self, "gamma_matrix", g)
        object.__setattr__(self, "psi_vector", p)

    @property
    def n(self) -> int:
        return self.gamma_matrix.shape[0]


@dataclass(frozen=True)
class SpectrumReport:
    n_stable: int
    n_unstable: int
    spectrum: np.ndarray
    boundary: np.ndarray  # eigenvalues within the tie band of the unit circle
    verdict: str  # "unique" | "indeterminate" | "no-solution" | "boundary"


@dataclass(frozen=True)
class DecisionRule:
    """Linear saddle-path rule.

    jump_map maps (predetermined state entering t, current shock) to the
    jump block of x(t); pre_transition maps the same pair to the
    predetermined block entering t+1.
    """

    pre_transition: np.ndarray  # (n_pre, n_pre + 1)
    jump_map: np.ndarray        # (n - n_pre, n_pre + 1)
    eigenvalues: np.ndarray
    model: LinearREModel

    def jumps(self, x_pre: np.ndarray, s: float) -> np.ndarray:
        z = np.concatenate([np.atleast_1d(x_pre), [s]])
        return self.jump_map @ z

    def advance_pre(self, x_pre: np.ndarray, s: float) -> np.ndarray:
        z = np.concatenate([np.atleast_1d(x_pre), [s]])
        return self.pre_transition @ z


def eigencheck(model: LinearREModel) -> SpectrumReport:
    """Classify the spectrum of Gamma against the unit circle."""
    eig = np.linalg.eigvals(model.gamma_matrix)
    mod = np.abs(eig)
    boundary = eig[np.abs(mod - 1.0) <= UNIT_CIRCLE_TIE_TOL]
    n_stable = int(np.sum(mod < 1.0 - UNIT_CIRCLE_TIE_TOL))
    n_unstable = int(np.sum(mod > 1.0 + UNIT_CIRCLE_TIE_TOL))
    n_jump = model.n - model.n_pre
    if boundary.size > 0:
        verdict = "boundary"
    elif n_unstable == n_jump:
        verdict = "unique"
    elif n_unstable < n_jump:
        verdict = "indeterminate"
    else:
        verdict = "no-solution"
    return SpectrumReport(
        n_stable=n_stable,
        n_unstable=n_unstable,
        spectrum=eig,
        boundary=boundary,
        verdict=verdict,
    )


def solve(model: LinearREModel) -> DecisionRule:
    """Compute and verify the saddle-path decision rule."""
    report = eigencheck(model)
    if report.verdict == "boundary":
        raise BoundaryEigenvalue(
            f"eigenvalue(s) on the unit circle within {UNIT_CIRCLE_TIE_TOL}: "
            f"{report.boundary}"
        )
    if report.verdict == "indeterminate":
        raise Indeterminate(
            f"{report.n_unstable} unstable roots < {model.n - model.n_pre} "
            "jump variables"
        )
    if report.verdict == "no-solution":
        raise NoSolution(
            f"{report.n_unstable} unstable roots > {model.n - model.n_pre} "
            "jump variables"
        )

    n, n_pre = model.n, model.n_pre
    mu = model.shock_persistence
    a = np.zeros((n + 1, n + 1), dtype=complex)
    a[:n, :n] = model.gamma_matrix
    a[:n, n] = model.psi_vector
    a[n, n] = mu
    _, z, sdim = schur(a, output="complex", sort=lambda lam: abs(lam) < 1.0)
    if sdim != n_pre + 1:
        # The augmented shock state is stable by construction, so this can
        # only disagree with eigencheck through numerical ties.
        raise NoSolution(
            f"stable subspace dimension {sdim} != n_pre + 1 = {n_pre + 1}"
        )
    zs = z[:, :sdim]
    pre_idx = list(range(n_pre)) + [n]
    jump_idx = list(range(n_pre, n))
    zp = zs[pre_idx, :]
    zj = zs[jump_idx, :]
    gmap_c = zj @ np.linalg.inv(zp)
    if gmap_c.size and np.abs(gmap_c.imag).max() > RULE_RESIDUAL_TOL:
        raise NoSolution(
            f"jump map has imaginary residue {np.abs(gmap_c.imag).max():.3e}"
        )
    gmap = gmap_c.real

    # pre_transition composes the model transition with the jump map.
    gpp = model.gamma_matrix[:n_pre, :n_pre]
    gpj = model.gamma_matrix[:n_pre, n_pre:]
    psi_p = model.psi_vector[:n_pre]
    gx = gmap[:, :n_pre]
    gw = gmap[:, n_pre:]
    pre_transition = np.zeros((n_pre, n_pre + 1))
    pre_transition[:, :n_pre] = gpp + gpj @ gx
    pre_transition[:, n_pre:] = gpj @ gw + psi_p[:, None]

    rule = DecisionRule(
        pre_transition=pre_transition,
        jump_map=gmap,
        eigenvalues=report.spectrum,
        model=model,
    )
    _verify_rule(rule)
    return rule


def _verify_rule(rule: DecisionRule, n_draws: int = 32) -> None:
    """Re-substitute the rule into the model; fail loudly on residuals."""
    model = rule.model
    n, n_pre = model.n, model.n_pre
    mu = model.shock_persistence
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(n_draws):
        x_pre = rng.standard_normal(n_pre)
        s = float(rng.standard_normal())
        x = np.concatenate([x_pre, rule.jumps(x_pre, s)])
        expect = model.gamma_matrix @ x + model.psi_vector * s
        x_pre_next = rule.advance_pre(x_pre, s)
        x_next = np.concatenate([x_pre_next, rule.jumps(x_pre_next, mu * s)])
        worst = max(worst, float(np.abs(expect - x_next).max(initial=0.0)))
    if worst > RULE_RESIDUAL_TOL:
        raise NoSolution(
            f"decision rule failed verification: residual {worst:.3e} > "
            f"{RULE_RESIDUAL_TOL}"
        )


def impulse_response(rule: DecisionRule, shock_size: float,
                     horizon: int) -> np.ndarray:
    """State paths after a one-time innovation to the AR(1) disturbance.

    Returns an array of shape (horizon, n + 1): the n state columns in model
    order followed by the shock state s(t).
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    model = rule.model
    n, n_pre = model.n, model.n_pre
    mu = model.shock_persistence
    out = np.zeros((horizon, n + 1))
    x_pre = np.zeros(n_pre)
    s = shock_size
    for t in range(horizon):
        jumps = rule.jumps(x_pre, s)
        out[t, :n_pre] = x_pre
        out[t, n_pre:n] = jumps
        out[t, n] = s
        x_pre = rule.advance_pre(x_pre, s)
        s *= mu
    return out
