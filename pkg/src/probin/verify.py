"""Numerical certification of the comparison theorems and identities.

Each check produces VerificationReport records with a signed margin: the
slack in the asserted inequality or equality, which must stay above
-tolerance to pass.  Strict inequalities are asserted non-strictly with
tolerance, and a strictness flag records whether the margin cleared ten
times the tolerance (discretization cannot certify strictness itself).
Hypothesis-gated checks (log-concavity) emit skip records rather than
silently passing.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .coeffs import ModelParams, log_concavity_margin, sn, sn_prime, z_cutoff
from .errors import DomainError
from .problems import (
    EigenSolution,
    ProblemSpec,
    SturmProblem,
    Warping,
    boundary_mean_curvature,
    double_robin_problem,
    inradius_model_problem,
    ricci_lower_bound,
)
from .shoot import ShootConfig, inverse_momentum, momentum, solve_first_eigenvalue, solve_spec

STRICTNESS_FACTOR = 10.0


@dataclass
class VerificationReport:
    """Outcome of one check: pass/fail with numeric margins, or skip."""

    name: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: Optional[bool]
    status: str  # "pass" | "fail" | "skip"
    kind: str  # "eq" | "le" | "ge" | "sandwich" | "skip"
    extras: dict = field(default_factory=dict)

    def recompute_margin(self) -> float:
        """Margin recomputed from (lhs, rhs) and the comparison kind."""
        if self.kind == "eq":
            return -abs(self.lhs - self.rhs)
        if self.kind == "le":
            return self.rhs - self.lhs
        if self.kind == "ge":
            return self.lhs - self.rhs
        if self.kind == "sandwich":
            target = self.extras["target"]
            return min(target - self.lhs, self.rhs - target)
        return math.nan

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "status": self.status,
            "kind": self.kind,
        }
        extras = {k: v for k, v in self.extras.items() if np.isscalar(v) or isinstance(v, (bool, str))}
        if extras:
            out["extras"] = extras
        return out


def _report(name, params, kind, lhs, rhs, tolerance, extras=None) -> VerificationReport:
    rep = VerificationReport(
        name=name, params=dict(params), lhs=float(lhs), rhs=float(rhs),
        margin=0.0, tolerance=float(tolerance), passed=None, status="pass",
        kind=kind, extras=dict(extras or {}),
    )
    rep.margin = rep.recompute_margin()
    rep.passed = bool(rep.margin >= -rep.tolerance)
    rep.status = "pass" if rep.passed else "fail"
    rep.extras.setdefault("strict", bool(rep.margin > STRICTNESS_FACTOR * rep.tolerance))
    return rep


def _skip(name, params, reason) -> VerificationReport:
    return VerificationReport(
        name=name, params=dict(params), lhs=math.nan, rhs=math.nan,
        margin=math.nan, tolerance=0.0, passed=None, status="skip",
        kind="skip", extras={"reason": reason},
    )


def reports_to_jsonl(reports: Sequence[VerificationReport], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rep in reports:
            fh.write(json.dumps(rep.to_json_dict(), sort_keys=True))
            fh.write("\n")


def reports_to_csv(reports: Sequence[VerificationReport], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "params", "status", "lhs", "rhs", "margin", "tolerance", "kind"])
        for rep in reports:
            writer.writerow([
                rep.name,
                json.dumps(rep.params, sort_keys=True),
                rep.status,
                "%.12g" % rep.lhs,
                "%.12g" % rep.rhs,
                "%.12g" % rep.margin,
                "%.12g" % rep.tolerance,
                rep.kind,
            ])


# ----------------------------------------------------------------------
# Picone identity
# ----------------------------------------------------------------------

def picone_check(u, v, grid, p, tol_identity=1e-8, tol_nonneg=1e-10) -> VerificationReport:
    """Pointwise check of L(u,v) = R(u,v) >= 0 for u >= 0, v > 0.

    L = |u'|^p + (p-1)(u/v)^p |v'|^p - p (u/v)^(p-1) |v'|^(p-2) v' u'
    R = |u'|^p - |v'|^(p-2) v' * (u^p / v^(p-1))'

    Derivatives are central differences; the comparison runs on interior
    nodes.  The margin folds both assertions: identity deviation at
    tol_identity, pointwise nonnegativity of L at tol_nonneg.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if np.any(v <= 0.0):
        raise DomainError("picone check needs v > 0")
    if np.any(u < 0.0):
        raise DomainError("picone check needs u >= 0")
    du = np.gradient(u, grid, edge_order=2)
    dv = np.gradient(v, grid, edge_order=2)
    w = u ** p / v ** (p - 1.0)
    dw = np.gradient(w, grid, edge_order=2)

    sl = slice(1, -1)
    ui, vi, dui, dvi, dwi = u[sl], v[sl], du[sl], dv[sl], dw[sl]
    ratio = ui / vi
    mv = momentum(dvi, p)
    lhs_field = np.abs(dui) ** p + (p - 1.0) * ratio ** p * np.abs(dvi) ** p \
        - p * ratio ** (p - 1.0) * mv * dui
    rhs_field = np.abs(dui) ** p - mv * dwi

    dev = float(np.max(np.abs(lhs_field - rhs_field)))
    min_l = float(np.min(lhs_field))
    # fold the nonnegativity slack into the same margin scale
    folded = max(dev, (tol_identity / tol_nonneg) * max(0.0, -min_l))
    rep = _report(
        "picone_identity", {"p": p, "nodes": int(grid.size)}, "eq",
        lhs=folded, rhs=0.0, tolerance=tol_identity,
        extras={"max_deviation": dev, "min_L": min_l,
                "max_abs_L": float(np.max(np.abs(lhs_field)))},
    )
    return rep


# ----------------------------------------------------------------------
# Barta-type sandwich
# ----------------------------------------------------------------------

def barta_sandwich(
    problem: SturmProblem,
    trial,
    lam: Optional[float] = None,
    config: ShootConfig = ShootConfig(),
    tolerance: float = 1e-4,
    name: str = "barta_sandwich",
) -> VerificationReport:
    """inf(-D_p v / m(v)) <= lambda <= sup(...) for a positive trial v.

    trial is either an EigenSolution (its momentum samples are used
    directly) or a pair (grid, values) whose momentum is formed from
    central differences.  lam defaults to the shooting eigenvalue of the
    problem.
    """
    if isinstance(trial, EigenSolution):
        grid = trial.grid
        v = trial.phi
        psi_v = trial.psi
    else:
        grid, v = trial
        grid = np.asarray(grid, dtype=float)
        v = np.asarray(v, dtype=float)
        psi_v = momentum(np.gradient(v, grid, edge_order=2), problem.p)
    if np.any(v <= 0.0):
        raise DomainError("barta trial must be positive")

    if lam is None:
        lam = solve_first_eigenvalue(problem, config).lambda_val

    dpsi = np.gradient(psi_v, grid, edge_order=2)
    sl = slice(1, -1)
    ld = np.asarray(problem.weight.log_deriv(grid[sl]), dtype=float)
    ratio = -(dpsi[sl] + ld * psi_v[sl]) / momentum(v[sl], problem.p)
    lo = float(np.min(ratio))
    hi = float(np.max(ratio))

    extras = {"target": float(lam)}
    for end, sign, alpha in problem.robin_ends():
        idx = 0 if end == "left" else -1
        extras["boundary_defect_%s" % end] = float(
            sign * psi_v[idx] + alpha * momentum(v[idx], problem.p)
        )
    return _report(
        name,
        {"p": problem.p, "interval": (problem.a, problem.b)},
        "sandwich", lhs=lo, rhs=hi, tolerance=tolerance, extras=extras,
    )


# ----------------------------------------------------------------------
# First-eigenfunction shape suite (sign, log-derivative bound, Riccati)
# ----------------------------------------------------------------------

def eigenfunction_shape_suite(
    problem: SturmProblem,
    solution: EigenSolution,
    tol_riccati: float = 1e-4,
    tol_bound: float = 1e-6,
) -> list:
    """Structure checks for a solved problem with Robin at the left end.

    Always checked: the sign of u' matches the sign of alpha away from the
    Neumann end, and the logarithmic derivative v = u'/u satisfies its
    first-order identity (momentum form) up to tol_riccati in sup norm.
    Only for strictly log-concave weights: v is monotone (decreasing for
    alpha > 0, increasing for alpha < 0) and |v|^(p-1) <= |alpha|;
    otherwise those two checks are emitted as skips.
    """
    if problem.bc_left.kind != "robin" or problem.bc_right.kind != "neumann":
        raise DomainError("shape suite expects Robin at the left end, Neumann at the right")
    alpha = problem.bc_left.alpha
    p = problem.p
    lam = solution.lambda_val
    base = {"alpha": alpha, "p": p, "R": problem.length}
    grid, phi, psi = solution.grid, solution.phi, solution.psi
    reports = []

    # (sign) u' keeps the sign of alpha on [0, R); psi vanishes only at R
    s = 1.0 if alpha > 0 else -1.0
    reports.append(_report(
        "eigenfunction_gradient_sign", base, "ge",
        lhs=float(np.min(s * psi[:-1])), rhs=0.0, tolerance=0.0,
    ))

    # momentum-form Riccati identity for v = u'/u:
    # (m(v))' + (w'/w) m(v) + (p-1)|v|^p + lam = 0
    mv = psi / momentum(phi, p)
    vv = inverse_momentum(mv, p)
    dmv = np.gradient(mv, grid, edge_order=2)
    sl = slice(1, -1)
    ld = np.asarray(problem.weight.log_deriv(grid[sl]), dtype=float)
    resid = dmv[sl] + ld * mv[sl] + (p - 1.0) * np.abs(vv[sl]) ** p + lam
    reports.append(_report(
        "riccati_identity", base, "eq",
        lhs=float(np.max(np.abs(resid))), rhs=0.0, tolerance=tol_riccati,
    ))

    # a singular right endpoint is a pole of the drift; the log-concavity
    # hypothesis is one-sided there, so gate on the half-open interval
    b_eff = problem.b - 1e-3 * problem.length if problem.singular_right else problem.b
    lc = log_concavity_margin(problem.weight, (problem.a, b_eff), 512)
    if lc >= -1e-10:
        reason = "weight not strictly log-concave ((log w)'' max = %.3g)" % lc
        reports.append(_skip("log_derivative_monotone", base, reason))
        reports.append(_skip("log_derivative_bound", base, reason))
        return reports

    dv = np.diff(vv)
    if alpha > 0:
        worst = float(np.max(dv))  # should be decreasing
    else:
        worst = float(-np.min(dv))  # should be increasing
    reports.append(_report(
        "log_derivative_monotone", base, "le",
        lhs=worst, rhs=0.0, tolerance=1e-7 * max(1.0, abs(alpha)),
        extras={"log_concavity_margin": lc},
    ))
    reports.append(_report(
        "log_derivative_bound", base, "le",
        lhs=float(np.max(np.abs(mv))), rhs=abs(alpha), tolerance=tol_bound,
        extras={"log_concavity_margin": lc},
    ))
    return reports


# ----------------------------------------------------------------------
# Reflection identity: double-Robin interval vs half interval
# ----------------------------------------------------------------------

def reflection_identity(
    R: float, alpha: float, p: float,
    config: ShootConfig = ShootConfig(),
    tol_eig: float = 1e-8,
    tol_sym: float = 1e-6,
) -> VerificationReport:
    """First eigenvalue of [0, 2R] with Robin(alpha) at both ends equals
    that of [0, R] with Robin(alpha)/Neumann, and the double-Robin
    eigenfunction is even about the midpoint.

    The two routes are independent: the full problem is shot from the
    left Robin end across the whole interval, the half problem from its
    Neumann end.
    """
    full = solve_spec(ProblemSpec("double_robin", R=R, alpha=alpha, p=p), config)
    half = solve_spec(
        ProblemSpec("inradius_model", R=R, alpha=alpha, p=p, kappa=0.0, lambda_mc=0.0, n=2),
        config,
    )
    sym_defect = float(np.max(np.abs(full.phi - full.phi[::-1])))
    rep = _report(
        "reflection_identity", {"R": R, "alpha": alpha, "p": p}, "eq",
        lhs=full.lambda_val, rhs=half.lambda_val, tolerance=tol_eig,
        extras={"symmetry_defect": sym_defect, "symmetry_tol": tol_sym},
    )
    if sym_defect > tol_sym:
        rep.passed = False
        rep.status = "fail"
    return rep


# ----------------------------------------------------------------------
# Monotonicity family checks
# ----------------------------------------------------------------------

def monotonicity_suite(
    axis: str,
    values: Sequence[float],
    base: ProblemSpec,
    config: ShootConfig = ShootConfig(),
) -> list:
    """Monotone families of the first eigenvalue.

    axis="R": lambda strictly decreasing in the interval length (alpha>0).
    axis="alpha": lambda strictly increasing in alpha, with sign(lambda)
    = sign(alpha).
    axis="dirichlet_limit": at alpha = 1e6 the eigenvalue is within 1% of
    the closed-form mixed Dirichlet/Neumann value (p-1)*(pi_p/(2R))^p;
    values supplies the exponents p.
    """
    reports = []
    if axis == "R":
        if base.alpha <= 0:
            raise DomainError("radius monotonicity is stated for alpha > 0")
        lams = [solve_spec(_replace(base, R=float(r)), config).lambda_val for r in values]
        for i in range(len(values) - 1):
            r0, r1 = values[i], values[i + 1]
            reports.append(_report(
                "radius_monotonicity",
                {"R_small": r0, "R_large": r1, "alpha": base.alpha, "p": base.p},
                "le", lhs=lams[i + 1], rhs=lams[i], tolerance=1e-12,
            ))
        return reports
    if axis == "alpha":
        lams = [solve_spec(_replace(base, alpha=float(a)), config).lambda_val for a in values]
        for i in range(len(values) - 1):
            reports.append(_report(
                "alpha_monotonicity",
                {"alpha_small": values[i], "alpha_large": values[i + 1], "p": base.p, "R": base.R},
                "le", lhs=lams[i], rhs=lams[i + 1], tolerance=1e-12,
            ))
        for a, lam in zip(values, lams):
            reports.append(_report(
                "eigenvalue_sign", {"alpha": a, "p": base.p, "R": base.R}, "ge",
                lhs=lam * math.copysign(1.0, a), rhs=0.0, tolerance=1e-12,
            ))
        return reports
    if axis == "dirichlet_limit":
        for p in values:
            spec = _replace(base, p=float(p), alpha=1e6)
            lam = solve_spec(spec, config).lambda_val
            pi_p = 2.0 * math.pi / (p * math.sin(math.pi / p))
            limit = (p - 1.0) * (pi_p / (2.0 * base.R)) ** p
            reports.append(_report(
                "dirichlet_limit", {"p": p, "R": base.R}, "eq",
                lhs=lam, rhs=limit, tolerance=0.01 * limit,
            ))
        return reports
    raise DomainError("unknown monotonicity axis %r" % (axis,))


def _replace(spec: ProblemSpec, **kw) -> ProblemSpec:
    doc = spec.to_dict()
    doc.update(kw)
    return ProblemSpec.from_dict(doc)


# ----------------------------------------------------------------------
# Curvature comparison across space forms (Cheng-type)
# ----------------------------------------------------------------------

def cheng_comparison_suite(
    kappas: Sequence[float],
    n: int,
    R0: float,
    alpha: float,
    p: float,
    config: ShootConfig = ShootConfig(),
) -> list:
    """On geodesic balls of fixed radius, the eigenvalue is monotone in
    the curvature: nonincreasing for alpha > 0, nondecreasing for
    alpha < 0; equal curvatures give equal eigenvalues."""
    kappas = sorted(kappas)
    lams = []
    for k in kappas:
        spec = ProblemSpec("geodesic_ball", R=R0, alpha=alpha, p=p, kappa=float(k), n=n)
        lams.append(solve_spec(spec, config).lambda_val)
    reports = []
    for i in range(len(kappas) - 1):
        k0, k1 = kappas[i], kappas[i + 1]
        params = {"kappa_low": k0, "kappa_high": k1, "n": n, "R0": R0, "alpha": alpha, "p": p}
        if alpha > 0:
            reports.append(_report(
                "curvature_comparison", params, "le",
                lhs=lams[i + 1], rhs=lams[i], tolerance=1e-12,
            ))
        else:
            reports.append(_report(
                "curvature_comparison", params, "ge",
                lhs=lams[i + 1], rhs=lams[i], tolerance=1e-12,
            ))
    spec = ProblemSpec("geodesic_ball", R=R0, alpha=alpha, p=p, kappa=float(kappas[0]), n=n)
    lam_again = solve_spec(spec, config).lambda_val
    reports.append(_report(
        "curvature_comparison_equal",
        {"kappa": kappas[0], "n": n, "R0": R0, "alpha": alpha, "p": p},
        "eq", lhs=lam_again, rhs=lams[0], tolerance=1e-9,
    ))
    return reports


# ----------------------------------------------------------------------
# Inradius model bound (sharp lower/upper bound via the 1-D model)
# ----------------------------------------------------------------------

def ball_model_spec(kappa: float, n: int, R0: float, alpha: float, p: float) -> ProblemSpec:
    """The inradius model matched to a geodesic ball: lambda_mc is the
    boundary mean-curvature bound sn'(R0)/sn(R0) and R equals R0 (which
    is then exactly the model cutoff; the reduction is exact)."""
    lam_mc = float(sn_prime(kappa, R0) / sn(kappa, R0))
    return ProblemSpec(
        "inradius_model", R=R0, alpha=alpha, p=p, kappa=float(kappa),
        lambda_mc=lam_mc, n=int(n),
    )


def inradius_equality_check(
    kappa: float, n: int, R0: float, alpha: float, p: float,
    config: ShootConfig = ShootConfig(),
    tolerance: float = 1e-5,
) -> VerificationReport:
    """On a space-form ball the model bound is attained: the radial ball
    eigenvalue equals the matched inradius-model eigenvalue.

    Extras carry a two-point refinement: the margin at half the RK step
    count must shrink by >= 1.5x, or already sit at the solver-tolerance
    floor (the reduction is exact, so margins land on rounding noise).
    """
    ball = ProblemSpec("geodesic_ball", R=R0, alpha=alpha, p=p, kappa=float(kappa), n=int(n))
    model = ball_model_spec(kappa, n, R0, alpha, p)
    lam_ball = solve_spec(ball, config).lambda_val
    lam_model = solve_spec(model, config).lambda_val

    coarse_cfg = ShootConfig(
        rk_steps=config.rk_steps // 2, lambda_tol=config.lambda_tol,
        bracket_growth=config.bracket_growth, eps_singular=config.eps_singular,
    )
    margin_coarse = abs(
        solve_spec(ball, coarse_cfg).lambda_val - solve_spec(model, coarse_cfg).lambda_val
    )
    margin_fine = abs(lam_ball - lam_model)
    floor = 50.0 * config.lambda_tol * max(1.0, abs(lam_ball))
    refinement_ok = margin_fine <= max(margin_coarse / 1.5, floor)

    rep = _report(
        "inradius_model_equality",
        {"kappa": kappa, "n": n, "R0": R0, "alpha": alpha, "p": p},
        "eq", lhs=lam_ball, rhs=lam_model, tolerance=tolerance,
        extras={
            "margin_coarse": margin_coarse,
            "margin_fine": margin_fine,
            "refinement_floor": floor,
            "refinement_ok": bool(refinement_ok),
        },
    )
    if not refinement_ok:
        rep.passed = False
        rep.status = "fail"
    return rep


def inradius_slack_check(
    kappa: float, n: int, R0: float, alpha: float, p: float,
    d_kappa: float = 0.0, d_lambda: float = 0.0,
    config: ShootConfig = ShootConfig(),
    tolerance: float = 1e-6,
) -> VerificationReport:
    """Slackened curvature or mean-curvature bounds push the model value
    strictly to the safe side of the ball eigenvalue: below it for
    alpha > 0, above it for alpha < 0."""
    if d_kappa == 0.0 and d_lambda == 0.0:
        raise DomainError("need a nonzero slack")
    ball = ProblemSpec("geodesic_ball", R=R0, alpha=alpha, p=p, kappa=float(kappa), n=int(n))
    lam_mc = float(sn_prime(kappa, R0) / sn(kappa, R0))
    model = ProblemSpec(
        "inradius_model", R=R0, alpha=alpha, p=p,
        kappa=float(kappa - d_kappa), lambda_mc=lam_mc - d_lambda, n=int(n),
    )
    lam_ball = solve_spec(ball, config).lambda_val
    lam_model = solve_spec(model, config).lambda_val
    params = {
        "kappa": kappa, "n": n, "R0": R0, "alpha": alpha, "p": p,
        "d_kappa": d_kappa, "d_lambda": d_lambda,
    }
    if alpha > 0:
        return _report("inradius_model_slack", params, "ge",
                       lhs=lam_ball, rhs=lam_model, tolerance=tolerance)
    return _report("inradius_model_slack", params, "le",
                   lhs=lam_ball, rhs=lam_model, tolerance=tolerance)


def inradius_warped_check(
    warping: Warping, n: int, R0: float, alpha: float, p: float,
    config: ShootConfig = ShootConfig(),
    tolerance: float = 1e-6,
) -> VerificationReport:
    """For a warped-product ball, extract the curvature bounds from the
    warping function and assert the model bound with those bounds."""
    kappa_eff = ricci_lower_bound(warping, n, R0)
    lambda_eff = boundary_mean_curvature(warping, R0)
    params_model = ModelParams(kappa_eff, lambda_eff, n)
    z = z_cutoff(params_model)
    if R0 > z:
        raise DomainError("extracted bounds give a model cutoff below the inradius")
    wp = ProblemSpec("warped_product", R=R0, alpha=alpha, p=p, n=int(n), warping=warping)
    model = ProblemSpec(
        "inradius_model", R=R0, alpha=alpha, p=p,
        kappa=kappa_eff, lambda_mc=lambda_eff, n=int(n),
    )
    lam_m = solve_spec(wp, config).lambda_val
    lam_model = solve_spec(model, config).lambda_val
    params = {
        "warping": warping.kind or "custom", "n": n, "R0": R0,
        "alpha": alpha, "p": p, "kappa_eff": kappa_eff, "lambda_eff": lambda_eff,
    }
    if alpha > 0:
        return _report("inradius_model_warped", params, "ge",
                       lhs=lam_m, rhs=lam_model, tolerance=tolerance)
    return _report("inradius_model_warped", params, "le",
                   lhs=lam_m, rhs=lam_model, tolerance=tolerance)


# ----------------------------------------------------------------------
# Default suite
# ----------------------------------------------------------------------

def _default_checks(config: ShootConfig):
    checks = []

    def add(fn):
        checks.append(fn)

    # Picone: random smooth positive pairs plus the proportional case
    def picone_block():
        rng = np.random.default_rng(20240817)
        grid = np.linspace(0.0, 1.0, 50001)
        out = []
        for p in (1.5, 2.0, 3.0):
            for trial in range(3):
                u = np.exp(0.4 * np.sin(2.0 * grid + rng.uniform(0, 6.28))
                           + 0.3 * rng.uniform(-1, 1) * grid)
                v = np.exp(0.5 * np.cos(1.7 * grid + rng.uniform(0, 6.28))
                           + 0.2 * rng.uniform(-1, 1) * grid * grid)
                rep = picone_check(u, v, grid, p)
                rep.params["trial"] = trial
                out.append(rep)
            v = np.exp(0.3 * np.sin(2.2 * grid))
            rep = picone_check(1.7 * v, v, grid, p, tol_identity=1e-9)
            rep.name = "picone_identity_proportional"
            if rep.extras["max_abs_L"] > 1e-10:  # L collapses for u = c*v
                rep.passed = False
                rep.status = "fail"
            out.append(rep)
        return out

    add(picone_block)

    # Barta sandwich on the flat problem
    def barta_block():
        out = []
        spec = ProblemSpec("inradius_model", R=1.0, alpha=1.0, p=2.0,
                           kappa=0.0, lambda_mc=0.0, n=2)
        prob = spec.build()
        sol = solve_spec(spec, config)
        rep = barta_sandwich(prob, sol, lam=sol.lambda_val)
        rep.name = "barta_sandwich_eigenfunction"
        out.append(rep)
        bump = 0.05 * np.sin(math.pi * sol.grid / prob.length) ** 2
        rep = barta_sandwich(prob, (sol.grid, sol.phi + bump), lam=sol.lambda_val,
                             tolerance=1e-12)
        rep.name = "barta_sandwich_perturbed"
        out.append(rep)
        return out

    add(barta_block)

    # Eigenfunction shape checks on log-concave and log-linear weights
    def shape_block():
        out = []
        cases = [
            (1.0, 0.0, 3, 1.0, 1.0, 2.0),    # strictly log-concave
            (1.0, 0.0, 3, 1.0, -1.0, 2.0),
            (0.0, 0.5, 2, 1.0, 1.0, 3.0),    # strictly log-concave, p != 2
            (-1.0, 1.0, 3, 1.0, 1.0, 2.0),   # log-linear weight: skips
        ]
        for kappa, lam_mc, n, R, alpha, p in cases:
            spec = ProblemSpec("inradius_model", R=R, alpha=alpha, p=p,
                               kappa=kappa, lambda_mc=lam_mc, n=n)
            sol = solve_spec(spec, config)
            reps = eigenfunction_shape_suite(spec.build(), sol)
            for rep in reps:
                rep.params.update({"kappa": kappa, "lambda_mc": lam_mc, "n": n})
            out.extend(reps)
        return out

    add(shape_block)

    # Reflection identity matrix
    def reflection_block():
        out = []
        for R in (0.5, 1.0):
            for alpha in (-1.0, 1.0):
                for p in (1.5, 2.0, 3.0):
                    out.append(reflection_identity(R, alpha, p, config))
        return out

    add(reflection_block)

    # Monotone families
    def monotonicity_block():
        flat = ProblemSpec("inradius_model", R=1.0, alpha=1.0, p=2.0,
                           kappa=0.0, lambda_mc=0.0, n=2)
        out = []
        out.extend(monotonicity_suite("R", (0.5, 1.0, 2.0), flat, config))
        out.extend(monotonicity_suite("alpha", (-1.0, -0.1, 0.1, 1.0), flat, config))
        out.extend(monotonicity_suite("dirichlet_limit", (1.5, 2.0, 3.0), flat, config))
        return out

    add(monotonicity_block)

    # Curvature comparison
    def cheng_block():
        out = []
        for alpha in (1.0, -1.0):
            out.extend(cheng_comparison_suite((-1.0, -0.5, 0.0, 0.5, 1.0),
                                              2, 1.0, alpha, 2.0, config))
        return out

    add(cheng_block)

    # Inradius model bound: equality on space-form balls, slack, warped
    def inradius_block():
        out = []
        for kappa, n in ((0.0, 2), (-1.0, 3)):
            for alpha in (1.0, -1.0):
                for p in (2.0, 3.0):
                    out.append(inradius_equality_check(kappa, n, 1.0, alpha, p, config))
                    out.append(inradius_slack_check(kappa, n, 1.0, alpha, p,
                                                    d_lambda=0.3, config=config))
                    out.append(inradius_slack_check(kappa, n, 1.0, alpha, p,
                                                    d_kappa=0.5, config=config))
        from .problems import polynomial_warping
        warped = polynomial_warping((0.0, 1.0, 0.0, 0.1))
        out.append(inradius_warped_check(warped, 2, 1.0, 1.0, 2.0, config))
        return out

    add(inradius_block)
    return checks


def default_suite(config: ShootConfig = ShootConfig(), jobs: int = 1) -> list:
    """Run every check on its default parameter matrix.

    Reports are aggregated deterministically (sorted by name and
    parameters) regardless of the worker count."""
    blocks = _default_checks(config)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda fn: fn(), blocks))
    else:
        results = [fn() for fn in blocks]
    reports = [rep for block in results for rep in block]
    reports.sort(key=lambda r: (r.name, json.dumps(r.params, sort_keys=True)))
    return reports
