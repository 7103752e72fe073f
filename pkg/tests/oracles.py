"""Independent reference values for the eigenvalue solvers.

Everything here is computed straight from transcendental equations or
special functions, without touching the solver code paths, so the test
suite can compare two genuinely independent routes.
"""

import math

from scipy.special import i0, i1, j0, j1

# First positive zero of J0, brackets the disk root search.
_J0_FIRST_ZERO = 2.404825557695773


def bisect(f, lo, hi, iters=200):
    """Plain bisection; assumes f(lo) and f(hi) have opposite signs."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("bisect: no sign change on [%g, %g]" % (lo, hi))
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def flat_robin_lambda(r_len, alpha):
    """First Robin eigenvalue of -u'' on [0, r_len], Robin(alpha) at one end,
    Neumann at the other (p = 2 only).

    alpha > 0: root of sqrt(l) * tan(sqrt(l) * R) = alpha.
    alpha < 0: l = -mu**2 with mu * tanh(mu * R) = -alpha.
    """
    if alpha == 0:
        return 0.0
    if alpha > 0:
        def g(lam):
            x = math.sqrt(lam)
            return x * math.sin(x * r_len) - alpha * math.cos(x * r_len)

        hi = (math.pi / (2.0 * r_len)) ** 2
        return bisect(g, 1e-300, hi * (1.0 - 1e-14))

    def g(mu):
        return mu * math.tanh(mu * r_len) + alpha

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    mu = bisect(g, 1e-300, hi)
    return -mu * mu


def disk_robin_lambda(alpha):
    """First Robin eigenvalue of the Laplacian on the unit disk (p = 2).

    alpha > 0: root of x * J1(x) = alpha * J0(x), lambda = x**2.
    alpha < 0: root of x * I1(x) = -alpha * I0(x), lambda = -x**2.
    """
    if alpha == 0:
        return 0.0
    if alpha > 0:
        def g(x):
            return x * j1(x) - alpha * j0(x)

        x = bisect(g, 1e-12, _J0_FIRST_ZERO)
        return x * x

    def g(x):
        return x * i1(x) + alpha * i0(x)

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    x = bisect(g, 1e-12, hi)
    return -x * x


def pi_p(p):
    """Half-period constant of the p-sine: 2*pi / (p * sin(pi/p))."""
    return 2.0 * math.pi / (p * math.sin(math.pi / p))


def mixed_dn_lambda(p, r_len):
    """First eigenvalue of the constant-coefficient p-Laplacian on [0, R]
    with Dirichlet at one end and Neumann at the other:
    (p - 1) * (pi_p / (2R))**p.  This is the alpha -> +inf limit of the
    single-Robin problem.
    """
    return (p - 1.0) * (pi_p(p) / (2.0 * r_len)) ** p
