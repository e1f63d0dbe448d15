import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fairprice import lre, nklinear
from fairprice.nklinear import ShockKind, assemble, lambdas, omega_coefficients
from fairprice.steady import NKParams, steady_state

LAMBDA1 = 0.2764862540628387
LAMBDA2 = 0.2670452600216686
PHI_BAR = 16.317073170731707
EIG_REAL = 0.299493393681321
EIG_PAIR_RE = 1.0223893986751635
EIG_PAIR_IM = 0.027772505085160035


def test_lambda_oracles():
    p = NKParams()
    lam1, lam2 = lambdas(p)
    assert lam1 == pytest.approx(LAMBDA1, abs=1e-14)
    assert lam2 == pytest.approx(LAMBDA2, abs=1e-14)
    assert steady_state(0.0, p).phi_bar == pytest.approx(PHI_BAR, abs=1e-12)


def test_lambdas_via_elasticity_ratios():
    # Independent route through the intermediate elasticity ratios.
    p = NKParams()
    lam1, lam2 = lambdas(p)
    om0, om1, om2, om3 = omega_coefficients(p)
    assert (1 + p.eta) * om1 / om0 == pytest.approx(lam1, rel=1e-12)
    assert (1 + p.eta) * om3 * om1 / om0 == pytest.approx(lam2, rel=1e-12)
    # Exact cancellation that pins the lagged-inflation coefficient.
    assert p.gamma * om3 * om2 / om0 == pytest.approx(p.delta * p.gamma,
                                                      rel=1e-12)


def test_structural_identities():
    p = NKParams()
    system = assemble(p, ShockKind.MONETARY)
    dg = p.delta * p.gamma
    lhs = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, p.alpha],
        [1.0 - dg, -dg, system.lambda2],
    ])
    rhs = np.array([
        [p.gamma, p.gamma, 0.0],
        [0.0, p.psi, p.alpha],
        [0.0, 0.0, system.lambda1],
    ])
    assert np.allclose(lhs @ system.gamma_matrix, rhs, atol=1e-13)
    assert np.allclose(lhs @ system.psi_vector, [0.0, 1.0, 0.0], atol=1e-13)


def test_lhs_inverse_closed_form():
    # L is lower-triangular-ish with determinant D = lambda2 + alpha*dg; its
    # inverse has a short closed form that the numeric solve must reproduce.
    p = NKParams()
    system = assemble(p, ShockKind.MONETARY)
    dg = p.delta * p.gamma
    al, lam2 = p.alpha, system.lambda2
    lhs = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, al],
        [1.0 - dg, -dg, lam2],
    ])
    d = lam2 + al * dg
    inv_closed = np.array([
        [d, 0.0, 0.0],
        [al * (1.0 - dg), lam2, -al],
        [-(1.0 - dg), dg, 1.0],
    ]) / d
    assert np.allclose(np.linalg.inv(lhs), inv_closed, atol=1e-14)
    assert np.linalg.det(lhs) == pytest.approx(d, rel=1e-12)


def test_spectrum_oracle():
    system = assemble(NKParams(), ShockKind.MONETARY)
    eig = sorted(np.linalg.eigvals(system.gamma_matrix), key=abs)
    assert eig[0].real == pytest.approx(EIG_REAL, abs=1e-10)
    assert abs(eig[0].imag) < 1e-12
    assert eig[1].real == pytest.approx(EIG_PAIR_RE, abs=1e-10)
    assert abs(eig[1].imag) == pytest.approx(EIG_PAIR_IM, abs=1e-10)
    assert eig[2] == pytest.approx(np.conj(eig[1]))


def test_monetary_irf_oracles():
    series = nklinear.monetary_irf(NKParams())
    assert 100 * series.n_hat.max() == pytest.approx(0.6731, abs=5e-4)
    assert int(series.n_hat.argmax()) == 1
    assert 100 * series.m_hat.min() == pytest.approx(-1.4135, abs=5e-4)
    assert int(series.m_hat.argmin()) == 1
    # The impulse is a 1 annualized percentage point rate cut on impact.
    assert 400 * series.shock[0] == pytest.approx(-1.0)


def test_technology_irf_oracles():
    series = nklinear.technology_irf(NKParams())
    assert 100 * series.m_hat.max() == pytest.approx(1.2861, abs=5e-4)
    assert 100 * series.n_hat.min() == pytest.approx(-0.6124, abs=5e-4)
    assert 100 * series.y_hat[0] == pytest.approx(0.5260, abs=5e-4)
    assert int(series.n_hat.argmin()) >= 1  # hump shape, not impact extremum
    assert series.shock[0] == pytest.approx(0.01)
    # a_hat decays geometrically at mu_a.
    assert np.allclose(series.shock, 0.01 * 0.9 ** np.arange(24), atol=1e-15)


def test_derived_series_identities():
    p = NKParams()
    for series, i0, a in (
        (nklinear.monetary_irf(p), None, 0.0),
        (nklinear.technology_irf(p), 0.0, None),
    ):
        i0_path = series.shock if i0 is None else np.zeros(len(series.t))
        a_path = series.shock if a is None else np.zeros(len(series.t))
        assert np.allclose(series.m_hat, -(1 + p.eta) * series.n_hat,
                           atol=1e-14)
        assert np.allclose(series.y_hat, a_path + p.alpha * series.n_hat,
                           atol=1e-14)
        assert np.allclose(series.i_hat, i0_path + p.psi * series.pi_hat,
                           atol=1e-14)
        assert np.allclose(
            series.real_wage_hat,
            a_path + (p.eta + p.alpha) * series.n_hat, atol=1e-14)
        mp_prev = np.concatenate([[0.0], series.m_p_hat[:-1]])
        assert np.allclose(series.m_p_hat,
                           p.gamma * (series.pi_hat + mp_prev), atol=1e-14)


def test_rule_satisfies_model_along_path():
    p = NKParams()
    system = assemble(p, ShockKind.MONETARY)
    rule = lre.solve(system.as_model())
    irf = lre.impulse_response(rule, -0.0025, 24)
    for t in range(23):
        lhs = system.gamma_matrix @ irf[t, :3] + system.psi_vector * irf[t, 3]
        assert np.allclose(lhs, irf[t + 1, :3], atol=1e-12)


@given(st.floats(min_value=1.5, max_value=5.0),
       st.floats(min_value=1.0, max_value=15.0),
       st.floats(min_value=0.3, max_value=0.9),
       st.floats(min_value=0.5, max_value=2.0))
@settings(max_examples=50, deadline=None)
def test_lambdas_positive(epsilon, theta, gamma, eta):
    p = NKParams(epsilon=epsilon, theta=theta, gamma=gamma, eta=eta)
    lam1, lam2 = lambdas(p)
    assert lam1 > 0 and lam2 > 0


def test_fault_injection_changes_lambda1_only():
    p = NKParams()
    lam1, lam2 = lambdas(p, lambda1_override=0.5)
    assert lam1 == 0.5
    assert lam2 == pytest.approx(LAMBDA2, abs=1e-14)
