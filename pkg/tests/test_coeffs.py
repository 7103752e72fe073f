"""Closed-form coefficients: examples, ODE consistency, cutoffs."""

import math

import numpy as np
import pytest

from probin.coeffs import (
    ModelParams,
    Weight,
    const_weight,
    c_model,
    c_model_prime,
    log_concavity_margin,
    sn,
    sn_prime,
    t_model,
    weight_ball,
    weight_model,
    y_cutoff,
    z_cutoff,
)
from probin.errors import DomainError

from oracles import bisect


def test_sn_closed_forms():
    assert sn(0.0, 2.5) == pytest.approx(2.5, abs=0)
    assert sn(1.0, math.pi / 2) == pytest.approx(1.0, rel=1e-15)
    assert sn(-1.0, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)


def test_c_model_closed_forms():
    assert c_model(ModelParams(0.0, 0.5, 2), 1.0) == pytest.approx(0.5, rel=1e-15)
    assert c_model(ModelParams(1.0, 0.0, 2), math.pi) == pytest.approx(-1.0, rel=1e-15)
    assert c_model(ModelParams(-1.0, 1.0, 2), 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)


def test_t_model_closed_forms():
    assert t_model(ModelParams(-1.0, 1.0, 2), 0.7) == pytest.approx(-1.0, rel=1e-13)
    assert t_model(ModelParams(0.0, 0.0, 2), 1.7) == 0.0
    assert t_model(ModelParams(0.0, 0.5, 2), 1.0) == pytest.approx(-1.0, rel=1e-15)


def test_t_model_pole_raises():
    params = ModelParams(0.0, 0.5, 2)  # zero of C at t = 2
    with pytest.raises(DomainError):
        t_model(params, 2.5)
    with pytest.raises(DomainError):
        t_model(params, np.array([0.5, 2.5]))


def test_cutoff_examples():
    assert z_cutoff(ModelParams(1.0, 0.0, 2)) == pytest.approx(math.pi / 2, rel=1e-15)
    assert z_cutoff(ModelParams(0.0, 0.5, 2)) == pytest.approx(2.0, rel=1e-15)
    assert y_cutoff(ModelParams(1.0, -1.0, 2)) == pytest.approx(math.pi / 4, rel=1e-15)
    assert z_cutoff(ModelParams(0.0, -1.0, 2)) == math.inf
    assert z_cutoff(ModelParams(-1.0, 1.0, 2)) == math.inf  # lambda_mc not above sqrt(-kappa)
    assert y_cutoff(ModelParams(1.0, 0.5, 2)) == math.inf
    assert y_cutoff(ModelParams(-1.0, 0.5, 2)) == pytest.approx(math.atanh(0.5), rel=1e-15)


@pytest.mark.parametrize("kappa,lam", [
    (1.0, -1.0), (1.0, 0.0), (1.0, 0.7), (1.0, 2.0), (0.3, -0.5),
    (0.0, 0.5), (0.0, 2.0), (-1.0, 1.5), (-1.0, 2.0), (-0.25, 0.9),
])
def test_cutoffs_match_root_search(kappa, lam):
    """Closed-form Z and Y agree with bisection on C and C' to 1e-12."""
    params = ModelParams(kappa, lam, 3)
    z = z_cutoff(params)
    if math.isfinite(z):
        root = bisect(lambda t: float(c_model(params, t)), 1e-15, z * 1.5 + 0.1)
        assert root == pytest.approx(z, abs=1e-12)
    y = y_cutoff(params)
    if math.isfinite(y):
        root = bisect(lambda t: float(c_model_prime(params, t)), 1e-15, y * 1.5)
        assert root == pytest.approx(y, abs=1e-12)


def _fd1(f, t, h=1e-5):
    # fourth-order central stencil
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h)


@pytest.mark.parametrize("kappa", [2.0, 1.0, 0.0, -0.5, -2.0])
def test_sn_satisfies_oscillator_ode(kappa):
    rng = np.random.default_rng(7)
    for t in rng.uniform(0.2, 1.8, 5):
        s, c = float(sn(kappa, t)), float(sn_prime(kappa, t))
        # first integral of the ODE, exact for the closed forms
        assert c * c + kappa * s * s == pytest.approx(1.0, abs=1e-10)
        assert _fd1(lambda x: float(sn(kappa, x)), t) == pytest.approx(c, abs=1e-9)
        assert _fd1(lambda x: float(sn_prime(kappa, x)), t) == pytest.approx(
            -kappa * s, abs=1e-9)


@pytest.mark.parametrize("kappa,lam", [(1.2, 0.4), (0.0, -0.3), (-0.7, 1.1)])
def test_c_model_initial_data_exact(kappa, lam):
    params = ModelParams(kappa, lam, 4)
    assert float(c_model(params, 0.0)) == 1.0
    assert float(c_model_prime(params, 0.0)) == -lam


def test_flat_specialization():
    params = ModelParams(0.0, 0.0, 5)
    t = np.linspace(0.0, 3.0, 7)
    assert np.all(t_model(params, t) == 0.0)
    assert np.all(weight_model(params)(t) == 1.0)


def test_continuity_in_kappa_at_zero():
    for eps in (1e-8, -1e-8):
        for t in (0.5, 1.0, 2.0):
            assert abs(float(sn(eps, t)) - t) < 1e-6


def test_weight_examples():
    assert weight_ball(0.0, 3)(2.0) == pytest.approx(4.0, rel=1e-15)
    assert weight_ball(1.0, 2)(math.pi / 2) == pytest.approx(1.0, rel=1e-15)
    assert weight_model(ModelParams(0.0, 0.0, 5))(0.3) == 1.0


def test_weight_log_deriv_matches_fd():
    w = weight_model(ModelParams(-1.0, 0.8, 3))
    for t in (0.3, 0.9, 1.7):
        fd = _fd1(lambda x: math.log(float(w(x))), t)
        assert float(w.log_deriv(t)) == pytest.approx(fd, abs=1e-8)
        fd2 = _fd1(lambda x: float(w.log_deriv(x)), t)
        assert float(w.log_second(t)) == pytest.approx(fd2, abs=1e-7)


def test_weight_domain_errors():
    wb = weight_ball(1.0, 2)
    with pytest.raises(DomainError):
        wb(math.pi + 0.5)  # past the zero of sn
    with pytest.raises(DomainError):
        wb.log_deriv(0.0)
    with pytest.raises(DomainError):
        ModelParams(1.0, 0.0, 1)
    with pytest.raises(DomainError):
        ModelParams(math.inf, 0.0, 3)


def test_log_concavity_margin_examples():
    m = log_concavity_margin(weight_ball(1.0, 2), (0.1, 1.5))
    assert m == pytest.approx(-1.0 / math.sin(1.5) ** 2, rel=1e-12)
    assert m < 0.0
    assert log_concavity_margin(const_weight(), (0.0, 1.0)) == 0.0
    # analytic second derivative absent: central-difference route
    gauss = Weight(value=lambda t: np.exp(np.asarray(t) ** 2), log_deriv=lambda t: 2 * np.asarray(t))
    assert log_concavity_margin(gauss, (0.0, 1.0), 400) == pytest.approx(2.0, abs=1e-5)


def test_log_concavity_rejects_nonpositive_weight():
    w = Weight(value=lambda t: np.asarray(t) - 0.5, log_deriv=lambda t: 1.0 / (np.asarray(t) - 0.5))
    with pytest.raises(DomainError):
        log_concavity_margin(w, (0.0, 1.0), 64)
