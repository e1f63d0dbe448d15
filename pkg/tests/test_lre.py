import numpy as np
import pytest

from fairprice import lre


def scalar_forward(a=1.5, c=1.0, mu=0.6):
    return lre.LinearREModel(
        gamma_matrix=np.array([[a]]),
        psi_vector=np.array([c]),
        n_pre=0,
        shock_persistence=mu,
    )


def test_scalar_forward_closed_form():
    # E[x'] = a x + c w with |a| > 1 has the unique bounded solution
    # x(t) = -c/(a - mu) * w(t).
    a, c, mu = 1.5, 1.0, 0.6
    rule = lre.solve(scalar_forward(a, c, mu))
    k = -c / (a - mu)
    for s in (-1.0, 0.3, 2.0):
        assert rule.jumps(np.empty(0), s)[0] == pytest.approx(k * s, rel=1e-12)
    irf = lre.impulse_response(rule, 1.0, 10)
    expected = k * mu ** np.arange(10)
    assert np.allclose(irf[:, 0], expected, atol=1e-12)
    assert np.allclose(irf[:, 1], mu ** np.arange(10), atol=1e-12)


def test_pure_simulation_when_all_predetermined():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((3, 3))
    g *= 0.8 / max(abs(np.linalg.eigvals(g)))  # make it stable
    psi = rng.standard_normal(3)
    model = lre.LinearREModel(gamma_matrix=g, psi_vector=psi, n_pre=3,
                              shock_persistence=0.5)
    rule = lre.solve(model)
    irf = lre.impulse_response(rule, 1.0, 12)
    # Direct simulation must coincide.
    x = np.zeros(3)
    s = 1.0
    for t in range(12):
        assert np.allclose(irf[t, :3], x, atol=1e-12)
        assert irf[t, 3] == pytest.approx(s)
        x = g @ x + psi * s
        s *= 0.5


def test_saddle_two_by_two_verifies_and_decays():
    g = np.array([[0.5, 0.2], [0.1, 1.8]])
    psi = np.array([0.3, -0.4])
    model = lre.LinearREModel(gamma_matrix=g, psi_vector=psi, n_pre=1,
                              shock_persistence=0.7)
    rule = lre.solve(model)
    irf = lre.impulse_response(rule, 1.0, 400)
    assert np.abs(irf[-1]).max() < 1e-20
    # Model equation holds along the path.
    for t in range(50):
        lhs = g @ irf[t, :2] + psi * irf[t, 2]
        assert np.allclose(lhs, irf[t + 1, :2], atol=1e-10)


def test_linearity_in_shock_size():
    g = np.array([[0.5, 0.2], [0.1, 1.8]])
    psi = np.array([0.3, -0.4])
    model = lre.LinearREModel(gamma_matrix=g, psi_vector=psi, n_pre=1,
                              shock_persistence=0.7)
    rule = lre.solve(model)
    one = lre.impulse_response(rule, 1.0, 30)
    three = lre.impulse_response(rule, 3.0, 30)
    assert np.allclose(three, 3.0 * one, atol=1e-12)


def test_spectrum_invariant_under_similarity():
    rng = np.random.default_rng(11)
    g = rng.standard_normal((4, 4))
    t = rng.standard_normal((4, 4)) + 4 * np.eye(4)
    model_a = lre.LinearREModel(g, np.zeros(4), n_pre=2, shock_persistence=0.0)
    model_b = lre.LinearREModel(t @ g @ np.linalg.inv(t), np.zeros(4),
                                n_pre=2, shock_persistence=0.0)
    ra = lre.eigencheck(model_a)
    rb = lre.eigencheck(model_b)
    assert np.allclose(sorted(np.abs(ra.spectrum)),
                       sorted(np.abs(rb.spectrum)), atol=1e-8)
    assert ra.verdict == rb.verdict


def test_indeterminate_detected():
    model = lre.LinearREModel(np.array([[0.5]]), np.array([0.0]), n_pre=0,
                              shock_persistence=0.0)
    assert lre.eigencheck(model).verdict == "indeterminate"
    with pytest.raises(lre.Indeterminate):
        lre.solve(model)


def test_no_solution_detected():
    model = lre.LinearREModel(np.array([[2.0]]), np.array([0.0]), n_pre=1,
                              shock_persistence=0.0)
    assert lre.eigencheck(model).verdict == "no-solution"
    with pytest.raises(lre.NoSolution):
        lre.solve(model)


def test_boundary_eigenvalue_detected():
    model = lre.LinearREModel(np.array([[1.0]]), np.array([0.0]), n_pre=0,
                              shock_persistence=0.0)
    assert lre.eigencheck(model).verdict == "boundary"
    with pytest.raises(lre.BoundaryEigenvalue):
        lre.solve(model)


def test_input_validation():
    with pytest.raises(ValueError):
        lre.LinearREModel(np.zeros((2, 3)), np.zeros(2), 0, 0.0)
    with pytest.raises(ValueError):
        lre.LinearREModel(np.zeros((2, 2)), np.zeros(3), 0, 0.0)
    with pytest.raises(ValueError):
        lre.LinearREModel(np.zeros((2, 2)), np.zeros(2), 3, 0.0)
    with pytest.raises(ValueError):
        lre.LinearREModel(np.zeros((2, 2)), np.zeros(2), 0, 1.0)
    rule = lre.solve(scalar_forward())
    with pytest.raises(ValueError):
        lre.impulse_response(rule, 1.0, 0)
