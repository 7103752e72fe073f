"""Variational solver: discretization, quotient, descent, convergence."""

import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from probin.coeffs import ModelParams, const_weight
from probin.errors import DomainError
from probin.problems import (
    BoundaryCondition,
    SturmProblem,
    double_robin_problem,
    geodesic_ball_problem,
    inradius_model_problem,
)
from probin.rayleigh import (
    MinimizeConfig,
    discretize,
    energy,
    minimize,
    norm_p,
    quotient,
    solve_rayleigh,
)
from probin.shoot import solve_first_eigenvalue

from oracles import flat_robin_lambda

FLAT_ANCHOR = 0.740173884394967


def _flat(alpha, p, r_len=1.0):
    return inradius_model_problem(ModelParams(0.0, 0.0, 2), r_len, alpha, p)


def _dirichlet_problem(p=2.0):
    return SturmProblem(0.0, 1.0, p, const_weight(),
                        BoundaryCondition.dirichlet(), BoundaryCondition.dirichlet())


def test_trapezoid_node_weights():
    func = discretize(_flat(1.0, 2.0), 16)
    h = 1.0 / 16
    expected = np.full(17, h)
    expected[0] = expected[-1] = h / 2
    assert func.node_weights == pytest.approx(expected, rel=1e-15)


def test_robin_terms_placement():
    assert discretize(_flat(1.0, 2.0), 32).robin_terms == [(0, 1.0)]
    func = discretize(double_robin_problem(1.0, 1.0, 2.0), 32)
    assert func.robin_terms == [(0, 1.0), (32, 1.0)]
    ball = discretize(geodesic_ball_problem(-1.0, 2, 1.0, 2.0, 2.0), 32)
    # boundary coefficient carries the weight at the Robin node
    assert ball.robin_terms == [(32, pytest.approx(2.0 * math.sinh(1.0)))]
    assert ball.node_weights[0] == 0.0  # singular center node


def test_m_floor():
    with pytest.raises(DomainError):
        discretize(_flat(1.0, 2.0), 8)


def test_quotient_constant_trial():
    func = discretize(_flat(0.5, 2.0, r_len=2.0), 64)
    u = np.ones(65)
    assert quotient(func, u) == pytest.approx(0.25, rel=1e-14)  # alpha / R


def test_quotient_ramp_dirichlet():
    func = discretize(_dirichlet_problem(), 2000)
    u = func.grid.copy()
    assert quotient(func, u) == pytest.approx(3.0, abs=1e-5)


def test_quotient_scale_invariance():
    func = discretize(_flat(1.0, 3.0), 100)
    rng = np.random.default_rng(5)
    u = 1.0 + 0.3 * rng.standard_normal(101)
    q0 = quotient(func, u)
    for c in (2.0, -0.7, 1e4):
        assert quotient(func, c * u) == pytest.approx(q0, rel=1e-12)


def test_quotient_rejects_zero_norm():
    func = discretize(_flat(1.0, 2.0), 32)
    with pytest.raises(DomainError):
        quotient(func, np.zeros(33))


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_gradients_match_finite_differences(p):
    from probin.rayleigh import _energy_grad, _norm_grad
    func = discretize(_flat(-1.0, p), 24)
    rng = np.random.default_rng(11)
    u = 1.0 + 0.2 * rng.standard_normal(25)
    ge = _energy_grad(func, u)
    gn = _norm_grad(func, u)
    h = 1e-7
    for j in (0, 5, 12, 24):
        e = np.zeros_like(u)
        e[j] = h
        assert (energy(func, u + e) - energy(func, u - e)) / (2 * h) == pytest.approx(
            ge[j], rel=2e-5, abs=1e-7)
        assert (norm_p(func, u + e) - norm_p(func, u - e)) / (2 * h) == pytest.approx(
            gn[j], rel=2e-5, abs=1e-7)


def test_minimize_flat_interval():
    sol = solve_rayleigh(_flat(1.0, 2.0), 2000)
    assert sol.lambda_val == pytest.approx(FLAT_ANCHOR, abs=1e-3)
    assert sol.method == "rayleigh"
    assert sol.diagnostics["converged"]


def test_minimize_matches_tridiagonal_eigensolver():
    """p = 2: the discrete minimum has a closed matrix form; the descent
    must find the same value to high accuracy."""
    m = 400
    prob = _flat(1.0, 2.0)
    func = discretize(prob, m)
    sol = minimize(func, config=MinimizeConfig(stall_tol=1e-14))
    h = func.h
    # stiffness: tridiag(-1, 2, -1)/h plus the Robin load at node 0;
    # mass: diag(node_weights); symmetrize by the mass square root
    diag = np.full(m + 1, 2.0 / h)
    diag[0] = diag[-1] = 1.0 / h
    diag[0] += 1.0  # alpha * w(0)
    off = np.full(m, -1.0 / h)
    d_mass = func.node_weights
    s = 1.0 / np.sqrt(d_mass)
    vals = eigh_tridiagonal(diag * s * s, off * s[:-1] * s[1:],
                            select="i", select_range=(0, 0))[0]
    assert sol.lambda_val == pytest.approx(vals[0], rel=1e-9, abs=1e-10)


def test_minimize_dirichlet_both_ends():
    sol = solve_rayleigh(_dirichlet_problem(), 2000)
    assert sol.lambda_val == pytest.approx(math.pi ** 2, abs=1e-3)
    assert sol.phi[0] == 0.0 and sol.phi[-1] == 0.0


def test_minimize_pure_neumann_gives_zero():
    prob = SturmProblem(0.0, 1.0, 2.0, const_weight(),
                        BoundaryCondition.neumann(), BoundaryCondition.neumann())
    sol = solve_rayleigh(prob, 200)
    assert abs(sol.lambda_val) < 1e-8
    assert np.ptp(sol.phi) < 1e-3  # essentially constant


def test_negative_alpha_gives_negative_quotient():
    prob = _flat(-1.0, 2.0)
    func = discretize(prob, 500)
    assert quotient(func, np.ones(501)) < 0.0
    sol = solve_rayleigh(prob, 2000)
    assert sol.lambda_val == pytest.approx(flat_robin_lambda(1.0, -1.0), abs=2e-3)
    assert sol.lambda_val < 0


def test_descent_is_monotone():
    func = discretize(_flat(1.0, 3.0), 250)
    sol = minimize(func, config=MinimizeConfig(track_history=True))
    hist = sol.diagnostics["quotient_history"]
    assert np.all(np.diff(hist) <= 1e-14 * np.maximum(1.0, np.abs(hist[:-1])))


def test_seed_is_respected():
    func = discretize(_flat(1.0, 2.0), 300)
    seed = np.cos(0.86 * (1.0 - func.grid))
    sol = minimize(func, seed=seed, config=MinimizeConfig())
    assert sol.lambda_val == pytest.approx(FLAT_ANCHOR, abs=1e-4)
    with pytest.raises(DomainError):
        minimize(func, seed=np.ones(7))


@pytest.mark.parametrize("prob,label", [
    (_flat(1.0, 2.0), "flat p=2"),
    (geodesic_ball_problem(0.0, 2, 1.0, 1.0, 2.0), "disk p=2"),
    (_flat(-1.0, 1.5), "flat p=1.5 negative"),
])
def test_mesh_convergence_ladder(prob, label):
    cfg = MinimizeConfig(stall_tol=1e-13)
    lams = [solve_rayleigh(prob, m, cfg).lambda_val for m in (250, 500, 1000, 2000)]
    diffs = np.abs(np.diff(lams))
    assert diffs[0] >= 1.5 * diffs[1]
    assert diffs[1] >= 1.5 * diffs[2]


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_cross_solver_agreement_sample(p):
    prob = geodesic_ball_problem(-1.0, 3, 1.0, 1.0, p)
    lam_s = solve_first_eigenvalue(prob).lambda_val
    lam_r = solve_rayleigh(prob, 2000).lambda_val
    assert abs(lam_s - lam_r) / max(1.0, abs(lam_s)) <= 1e-3


def test_quotient_of_shooting_eigenfunction():
    prob = _flat(1.0, 2.0)
    sol = solve_first_eigenvalue(prob)
    func = discretize(prob, 2000)
    u = np.interp(func.grid, sol.grid, sol.phi)
    assert quotient(func, u) == pytest.approx(sol.lambda_val, abs=1e-3)
    # any admissible trial upper-bounds the minimum for alpha > 0
    assert quotient(func, u) >= solve_rayleigh(prob, 2000).lambda_val - 1e-9
