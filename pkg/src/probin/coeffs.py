"""Closed-form coefficient functions of space forms and curvature models.

sn(kappa, .) solves y'' + kappa*y = 0 with y(0) = 0, y'(0) = 1; the model
coefficient c_model solves the same ODE with C(0) = 1, C'(0) = -lambda_mc.
Weights derived from them (sn^(n-1), C^(n-1)) carry analytic logarithmic
derivatives: the shooting ODE consumes w'/w directly and must have it to
machine precision near endpoints where w vanishes, so nothing here is
differentiated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

# Below this |kappa| the flat closed forms are used; avoids cancellation
# in sin(sqrt(k)*t)/sqrt(k) for tiny k.
FLAT_KAPPA_EPS = 1e-12

# Weight bases this close to zero (absolute) are clamped to exactly zero
# so grids that touch a vanishing endpoint do not trip DomainError on
# rounding noise.
_ZERO_CLAMP = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Curvature bound kappa (1/length^2), mean-curvature bound lambda_mc
    (1/length), and dimension dim >= 2."""

    kappa: float
    lambda_mc: float
    dim: int

    def __post_init__(self):
        if self.dim < 2 or int(self.dim) != self.dim:
            raise DomainError("dim must be an integer >= 2, got %r" % (self.dim,))
        if not (math.isfinite(self.kappa) and math.isfinite(self.lambda_mc)):
            raise DomainError("kappa and lambda_mc must be finite")


def sn(kappa: float, t):
    """Jacobi-field coefficient of the space form of curvature kappa."""
    if kappa > FLAT_KAPPA_EPS:
        r = math.sqrt(kappa)
        return np.sin(r * t) / r
    if kappa < -FLAT_KAPPA_EPS:
        s = math.sqrt(-kappa)
        return np.sinh(s * t) / s
    return np.multiply(t, 1.0)


def sn_prime(kappa: float, t):
    """Derivative of sn; equals cos, 1, or cosh by the sign of kappa."""
    if kappa > FLAT_KAPPA_EPS:
        return np.cos(math.sqrt(kappa) * t)
    if kappa < -FLAT_KAPPA_EPS:
        return np.cosh(math.sqrt(-kappa) * t)
    return np.ones_like(np.asarray(t, dtype=float))[()] if np.ndim(t) else 1.0


def c_model(params: ModelParams, t):
    """Model coefficient: C'' + kappa*C = 0, C(0) = 1, C'(0) = -lambda_mc."""
    k, lam = params.kappa, params.lambda_mc
    if k > FLAT_KAPPA_EPS:
        r = math.sqrt(k)
        return np.cos(r * t) - (lam / r) * np.sin(r * t)
    if k < -FLAT_KAPPA_EPS:
        s = math.sqrt(-k)
        return np.cosh(s * t) - (lam / s) * np.sinh(s * t)
    return 1.0 - lam * np.multiply(t, 1.0)


def c_model_prime(params: ModelParams, t):
    """Analytic derivative of c_model: -kappa*sn - lambda_mc*sn'."""
    k, lam = params.kappa, params.lambda_mc
    return -k * sn(k, t) - lam * sn_prime(k, t)


def t_model(params: ModelParams, t):
    """Logarithmic derivative C'/C of the model coefficient.

    Raises DomainError at or past the first zero of C (the pole)."""
    c = c_model(params, t)
    if np.any(np.asarray(c) <= 0.0):
        raise DomainError(
            "t_model evaluated at or past the zero of the model coefficient "
            "(t >= Z for kappa=%g, lambda_mc=%g)" % (params.kappa, params.lambda_mc)
        )
    return c_model_prime(params, t) / c


def z_cutoff(params: ModelParams) -> float:
    """First positive zero of the model coefficient C, or +inf.

    Closed form by the sign of kappa (no root search):
    kappa > 0: arccot(lambda_mc/sqrt(kappa)) / sqrt(kappa), always finite;
    kappa = 0: 1/lambda_mc if lambda_mc > 0;
    kappa < 0: artanh(sqrt(-kappa)/lambda_mc)/sqrt(-kappa) if
    lambda_mc > sqrt(-kappa).
    """
    k, lam = params.kappa, params.lambda_mc
    if k > FLAT_KAPPA_EPS:
        r = math.sqrt(k)
        return math.atan2(1.0, lam / r) / r
    if k < -FLAT_KAPPA_EPS:
        s = math.sqrt(-k)
        if lam > s:
            return math.atanh(s / lam) / s
        return math.inf
    if lam > 0.0:
        return 1.0 / lam
    return math.inf


def y_cutoff(params: ModelParams) -> float:
    """First zero of C' on (0, Z], or +inf.

    Finite exactly when kappa > 0 with lambda_mc < 0, or kappa < 0 with
    0 < lambda_mc < sqrt(-kappa).  For kappa = lambda_mc = 0 the
    derivative vanishes identically and no isolated first zero exists;
    +inf is returned for that degenerate case as well.
    """
    k, lam = params.kappa, params.lambda_mc
    if k > FLAT_KAPPA_EPS:
        r = math.sqrt(k)
        if lam < 0.0:
            return math.atan(-lam / r) / r
        return math.inf
    if k < -FLAT_KAPPA_EPS:
        s = math.sqrt(-k)
        if 0.0 < lam < s:
            return math.atanh(lam / s) / s
        return math.inf
    return math.inf


def _clamped_power(base, expo: float, what: str):
    """base**expo with tiny negative bases clamped to 0; raises past that."""
    b = np.asarray(base, dtype=float)
    if np.any(b < -_ZERO_CLAMP):
        raise DomainError("%s evaluated past the zero of its base function" % what)
    out = np.clip(b, 0.0, None) ** expo
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Weight:
    """A positive weight with analytic log-derivative w'/w and, when
    available, analytic (log w)''.  Instances are callables returning
    w(t)."""

    value: Callable
    log_deriv: Callable
    log_second: Optional[Callable] = None
    label: str = "weight"

    def __call__(self, t):
        return self.value(t)


def weight_ball(kappa: float, n: int) -> Weight:
    """Radial weight sn_kappa^(n-1) of the geodesic ball; vanishes at t=0."""
    expo = float(n - 1)

    def value(t):
        return _clamped_power(sn(kappa, t), expo, "ball weight")

    def log_deriv(t):
        s = sn(kappa, t)
        if np.any(np.asarray(s) <= 0.0):
            raise DomainError("ball weight log-derivative at a zero of sn")
        return expo * sn_prime(kappa, t) / s

    def log_second(t):
        s = sn(kappa, t)
        if np.any(np.asarray(s) <= 0.0):
            raise DomainError("ball weight log-curvature at a zero of sn")
        cot = sn_prime(kappa, t) / s
        return -expo * (kappa + cot * cot)

    return Weight(value, log_deriv, log_second, "sn_%g^%d" % (kappa, n - 1))


def weight_model(params: ModelParams) -> Weight:
    """Model weight C_(kappa,lambda_mc)^(n-1); vanishes at t=Z if finite."""
    expo = float(params.dim - 1)

    def value(t):
        return _clamped_power(c_model(params, t), expo, "model weight")

    def log_deriv(t):
        return expo * t_model(params, t)

    def log_second(t):
        tm = t_model(params, t)
        return -expo * (params.kappa + tm * tm)

    return Weight(
        value, log_deriv, log_second,
        "C_{%g,%g}^%d" % (params.kappa, params.lambda_mc, params.dim - 1),
    )


def const_weight() -> Weight:
    """The trivial weight w = 1."""

    def value(t):
        return np.ones_like(np.asarray(t, dtype=float))[()] if np.ndim(t) else 1.0

    def zero(t):
        return np.zeros_like(np.asarray(t, dtype=float))[()] if np.ndim(t) else 0.0

    return Weight(value, zero, zero, "1")


def log_concavity_margin(weight: Weight, interval, m: int = 256) -> float:
    """Max of (log w)'' over a uniform grid on the interval.

    A negative return certifies strict log-concavity on the grid.  Uses the
    analytic second derivative when the weight carries one, otherwise
    central differences of log w.  Raises DomainError if w <= 0 at a node.
    """
    a, b = float(interval[0]), float(interval[1])
    if not (b > a):
        raise DomainError("empty interval")
    grid = np.linspace(a, b, m)
    if weight.log_second is not None:
        vals = np.asarray(weight.log_second(grid), dtype=float)
        return float(np.max(vals))
    w = np.asarray(weight.value(grid), dtype=float)
    if np.any(w <= 0.0):
        raise DomainError("weight not positive on the log-concavity grid")
    lw = np.log(w)
    h = grid[1] - grid[0]
    dd = (lw[:-2] - 2.0 * lw[1:-1] + lw[2:]) / (h * h)
    return float(np.max(dd))
