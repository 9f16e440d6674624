"""Verification suites: each check compares a construction with an independent route.

A suite is a list of :class:`Check` records; ``run_suite`` evaluates them and
the CLI serializes the report.  Tolerances can be overridden by check name.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import jacobi, physics, quadrature, rmt
from .oracles import assoc_legendre, taylor_coefficients
from .polycore import DensePolynomial, S
from .romanovski import (FamilyParams, build_recurrence, build_rodrigues, eval_via_contour,
                         generating_fn_Q, generating_fn_R, generating_radius_Q,
                         generating_radius_R, ode_residual, q_poly, q_sequence)

PASS = "pass"
FAIL = "fail"
SUITES = ("identities", "orthogonality", "jacobi", "physics", "rmt")


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    measured: float
    tolerance: float

    def to_json(self):
        return {"name": self.name, "status": self.status,
                "measured": self.measured, "tolerance": self.tolerance}


def _check(name, measured, tolerance, overrides, strict=False):
    tol = float(overrides.get(name, tolerance))
    measured = float(measured)
    ok = measured < tol if strict else measured <= tol
    return Check(name, PASS if ok and math.isfinite(measured) else FAIL, measured, tol)


def random_rational_params(count, seed=0, den=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(FamilyParams(Fraction(rng.randint(-5 * den, 5 * den), rng.randint(1, den)),
                                Fraction(rng.randint(-6 * den, 4 * den), rng.randint(1, den))))
    return out


def closed_form_R(n, params):
    """R_0, R_1, R_2 written out: 1, 2 beta x + alpha, and the quadratic."""
    a, b = params.alpha, params.beta
    if n == 0:
        return DensePolynomial((1,))
    if n == 1:
        return DensePolynomial((a, 2 * b))
    return DensePolynomial((2 * b + a * a + 2, 2 * (2 * b + 1) * a, (2 * b + 1) * (2 * b + 2)))


def _max_coeff(p):
    return max((abs(c) for c in p.coeffs), default=0)


# --- identities ---------------------------------------------------------------


def identities(ov):
    checks = []
    pairs = random_rational_params(20, seed=1)
    worst = max(_max_coeff(build_rodrigues(n, p).poly - closed_form_R(n, p))
                for p in pairs for n in range(3))
    checks.append(_check("closed_forms_R0_R2", worst, 0, ov))

    pairs = random_rational_params(12, seed=2)
    worst = max(_max_coeff(build_rodrigues(n, p).poly - build_recurrence(n, p).poly)
                for p in pairs for n in range(11))
    checks.append(_check("rodrigues_vs_recurrence_n<=10", worst, 0, ov))

    pairs = random_rational_params(6, seed=3)
    worst = max(_max_coeff(ode_residual(build_rodrigues(n, p))) for p in pairs for n in range(9))
    checks.append(_check("ode_residual_R_n<=8", worst, 0, ov))
    worst = max(_max_coeff(ode_residual(q_poly(n, p))) for p in pairs for n in range(9))
    checks.append(_check("ode_residual_Q_nu<=8", worst, 0, ov))

    worst = 0
    for p in pairs:
        qs = q_sequence(8, p)
        for nu in range(1, 9):
            diff = qs[nu].poly.derivative() - qs[nu - 1].poly * (nu * (2 * p.beta - nu - 1))
            worst = max(worst, _max_coeff(diff))
    checks.append(_check("q_derivative_identity_nu<=8", worst, 0, ov))

    worst = 0
    for p in pairs:
        qs = q_sequence(8, p)
        for nu in range(1, 8):
            lhs = qs[nu + 1].poly
            rhs = (DensePolynomial((p.alpha, 2 * (p.beta - nu - 1))) * qs[nu].poly
                   + S * qs[nu - 1].poly * (nu * (2 * p.beta - nu - 1)))
            worst = max(worst, _max_coeff(lhs - rhs))
    checks.append(_check("q_three_term_recurrence_nu<=7", worst, 0, ov))

    samples = [(1, -4, 0.3), (2, -3, 0.5), (Fraction(1, 2), Fraction(-3, 2), -1.2),
               (-1, Fraction(5, 2), 2.0), (3, -6, 0.0)]
    worst_r = worst_q = 0.0
    for a, b, x in samples:
        p = FamilyParams(a, b)
        cr = taylor_coefficients(lambda y: generating_fn_R(p, x, y), 0.5 * generating_radius_R(x), 6)
        cq = taylor_coefficients(lambda y: generating_fn_Q(p, x, y), 0.5 * generating_radius_Q(x), 6)
        for k in range(7):
            r_ref = float(build_rodrigues(k, p)(Fraction(x))) / math.factorial(k)
            q_ref = float(q_poly(k, p)(Fraction(x))) / math.factorial(k)
            worst_r = max(worst_r, abs(cr[k] - r_ref) / max(abs(r_ref), 1e-300))
            worst_q = max(worst_q, abs(cq[k] - q_ref) / max(abs(q_ref), 1e-300))
    checks.append(_check("generating_function_R_taylor_k<=6", worst_r, 1e-6, ov))
    checks.append(_check("generating_function_Q_taylor_k<=6", worst_q, 1e-6, ov))

    worst = 0.0
    for n, a, b, x in [(2, 1, -3, 0.5), (5, 1.3, -3.7, -0.8), (8, 1.3, -3.7, 2.5), (6, -2, 1.5, 0.1)]:
        p = FamilyParams(a, b)
        ref = float(build_rodrigues(n, p)(x))
        worst = max(worst, abs(eval_via_contour(n, p, x) - ref) / max(1.0, abs(ref)))
    checks.append(_check("contour_integral_vs_polynomial", worst, 1e-8, ov))
    return checks


# --- orthogonality ------------------------------------------------------------


def finite_orthogonality_worst(params, bound):
    norms = {n: quadrature.norm_R(n, params).value for n in range(bound)}
    worst = 0.0
    for m in range(bound):
        for n in range(m + 1, bound - m):
            r = quadrature.inner_product_R(m, n, params)
            if r.verdict != quadrature.CONVERGENT:
                return math.inf
            worst = max(worst, abs(r.value) / math.sqrt(norms[m] * norms[n]))
    return worst


def q_orthogonality_worst(params, top):
    worst = 0.0
    for m in range(top + 1):
        for n in range(m + 1, top + 1):
            eps = quadrature.q_epsilon(m, n)
            r = quadrature.inner_product_Q(m, n, params)
            nm = quadrature.inner_product_Q(m, m, params, epsilon=eps)
            nn = quadrature.inner_product_Q(n, n, params, epsilon=eps)
            if not (r.ok and nm.ok and nn.ok):
                return math.inf
            worst = max(worst, abs(r.value) / math.sqrt(nm.value * nn.value))
    return worst


def orthogonality(ov):
    checks = []
    p = FamilyParams(1, -10)
    checks.append(_check("finite_orthogonality_(1,-10)_m+n<21",
                         finite_orthogonality_worst(p, 21), 1e-8, ov, strict=True))
    r = quadrature.inner_product_R(0, 2, FamilyParams(0, 0))
    # measured: 0 when the pair is declared divergent, 1 otherwise
    checks.append(_check("counterexample_(0,2)_at_(0,0)_divergent",
                         0.0 if r.verdict == quadrature.DIVERGENT else 1.0, 0, ov))
    checks.append(_check("q_orthogonality_(2,0)_m!=n<=8",
                         q_orthogonality_worst(FamilyParams(2, 0), 8), 1e-8, ov, strict=True))
    # beta = -14/5 has no degenerate degrees; n = 3 lies in the band -beta <= n < 1/2 - beta
    p = FamilyParams(1, Fraction(-14, 5))
    wrong = sum((quadrature.norm_R(n, p).verdict == quadrature.CONVERGENT) != (n <= 3) for n in range(7))
    checks.append(_check("normalization_exponent_test", wrong, 0, ov))
    return checks


# --- jacobi ---------------------------------------------------------------------


def jacobi_checks(ov):
    checks = []
    pairs = random_rational_params(6, seed=4)
    worst_imag = worst_prop = 0.0
    eigen_ok = True
    for p in pairs:
        a, b = jacobi.jacobi_parameters(p)
        for n in range(9):
            if build_rodrigues(n, p).degree_deficient:
                continue
            cp = jacobi.complexify(jacobi.complex_jacobi(n, a, b)) * (1j ** (n % 4))
            worst_imag = max(worst_imag, max(abs(c.imag) for c in cp.coeffs) / max(1.0, cp.max_abs()))
            poly, c = jacobi.romanovski_via_jacobi(n, p)
            r = build_rodrigues(n, p).poly.to_double()
            mismatch = max(abs(poly[k] - c * r[k]) for k in range(n + 1))
            worst_prop = max(worst_prop, mismatch / (max(abs(x) for x in r.coeffs) * max(1.0, abs(c))))
            eigen_ok &= jacobi.jacobi_eigen_matches(n, p)
    checks.append(_check("jacobi_image_real_n<=8", worst_imag, 1e-12, ov))
    checks.append(_check("jacobi_proportional_to_R_n<=8", worst_prop, 1e-10, ov))
    checks.append(_check("jacobi_eigenvalue_exact", 0.0 if eigen_ok else 1.0, 0, ov))

    worst = 0.0
    rng = np.random.default_rng(5)
    for n in range(9):
        a = complex(*rng.uniform(-3, 3, 2))
        x = float(rng.uniform(-2, 2))
        v = jacobi.complex_jacobi(n, a, a.conjugate())(1j * x)
        worst = max(worst, abs(v.conjugate() - (-1) ** n * v) / max(1.0, abs(v)))
    checks.append(_check("conjugation_parity", worst, 1e-12, ov))

    p, q = DensePolynomial((1, -2, 0, 3)), DensePolynomial((2, 1, 5))
    hom = (jacobi.complexify(p * q) - jacobi.complexify(p) * jacobi.complexify(q)).max_abs()
    checks.append(_check("complexification_homomorphism", hom, 0, ov))

    res = jacobi.real_parameter_complexification_residual(3, 0.5, 2.0).max_abs()
    # a negative result: the residual must stay away from zero
    checks.append(_check("real_parameter_complexification_not_romanovski", 1.0 / res, 1e6, ov))
    return checks


# --- physics ------------------------------------------------------------------------


def physics_checks(ov):
    checks = []
    p = physics.ScarfParams(2.0, 0.5)
    worst = max(abs(physics.rayleigh_energy(physics.scarf_state(n, p))[0] + (2.0 - n) ** 2)
                for n in (0, 1))
    checks.append(_check("scarf_rayleigh_energy_A=2_B=0.5", worst, 1e-5, ov))
    worst = max(physics.schrodinger_residual(physics.scarf_state(n, p)) for n in (0, 1))
    checks.append(_check("scarf_schrodinger_residual", worst, 1e-7, ov))
    m = physics.scarf_overlap_matrix(physics.ScarfParams(3.0, 1.0))
    checks.append(_check("scarf_orthonormality_A=3_B=1", np.abs(m - np.eye(len(m))).max(), 1e-8, ov))

    theta = np.linspace(0.05, math.pi - 0.05, 61)
    worst = 0.0
    for l in range(5):
        for mm in range(l + 1):
            ref = assoc_legendre(l, mm, np.cos(theta))
            keep = np.abs(ref) > 1e-3 * np.abs(ref).max()
            ratio = physics.assoc_legendre_via_romanovski(l, mm, theta)[keep] / ref[keep]
            worst = max(worst, np.ptp(ratio) / abs(ratio.mean()))
    checks.append(_check("assoc_legendre_ratio_constant_l<=4", worst, 1e-9, ov))
    worst = 0.0
    for l in range(5):
        for lp in range(l):
            for mm in range(lp + 1):
                r = physics.legendre_cross_orthogonality(l, lp, mm)
                scale = math.sqrt(physics.legendre_cross_norm(l, mm) * physics.legendre_cross_norm(lp, mm))
                worst = max(worst, abs(r.value) / scale)
    checks.append(_check("legendre_cross_l_orthogonality", worst, 1e-8, ov))

    q = physics.RosenMorseParams(50.0, 1)
    states = [physics.rosen_morse_state(n, q) for n in range(5)]
    gram = np.array([[quadrature.integrate_interval(lambda z: a(z) * b(z), 0.0, math.pi, 1e-12).value
                      for b in states] for a in states])
    checks.append(_check("rosen_morse_orthonormality_b=50_l=1", np.abs(gram - np.eye(5)).max(), 1e-8, ov))
    worst = 0.0
    for s in states:
        mean, std = physics.rayleigh_energy(s)
        worst = max(worst, std / abs(mean))
    checks.append(_check("rosen_morse_rayleigh_constancy", worst, 1e-5, ov))
    return checks


# --- rmt ----------------------------------------------------------------------------


def rmt_checks(ov):
    checks = []
    k1 = rmt.orthonormal_basis(rmt.EnsembleSpec(1, 0))
    checks.append(_check("gap_N=1_a=0_(-1,1)_nystrom", abs(rmt.gap_probability(k1, -1, 1) - 0.5), 1e-8, ov))
    est, se = rmt.mc_gap_estimate(rmt.EnsembleSpec(1, 0), -1, 1, 100_000, seed=11)
    checks.append(_check("gap_N=1_a=0_(-1,1)_mc_sigmas", abs(est - 0.5) / se, 3, ov))
    k2 = rmt.orthonormal_basis(rmt.EnsembleSpec(2, 0))
    est, se = rmt.mc_gap_estimate(rmt.EnsembleSpec(2, 0), -0.5, 0.5, 100_000, seed=12)
    checks.append(_check("gap_N=2_nystrom_vs_mc_sigmas",
                         abs(est - rmt.gap_probability(k2, -0.5, 0.5)) / se, 3, ov))
    worst = 0.0
    for n, a in [(1, 0), (2, 0), (3, 1), (2, 0.5)]:
        k = rmt.orthonormal_basis(rmt.EnsembleSpec(n, a))
        worst = max(worst, abs(rmt.kernel_trace(k).value - n))
    checks.append(_check("kernel_trace_equals_N", worst, 1e-8, ov))
    series, tail = rmt.gap_series(k1, -0.3, 0.3)
    diff = abs(series - rmt.gap_probability(k1, -0.3, 0.3))
    checks.append(_check("gap_series_3_terms_within_tail_bound", diff, max(tail, 1e-12), ov))
    return checks


SUITE_FUNCS = {
    "identities": identities,
    "orthogonality": orthogonality,
    "jacobi": jacobi_checks,
    "physics": physics_checks,
    "rmt": rmt_checks,
}


def run_suite(suite, overrides=None):
    """Return the list of checks for ``suite`` (or every suite for ``"all"``)."""
    overrides = overrides or {}
    if suite == "all":
        return [c for name in SUITES for c in SUITE_FUNCS[name](overrides)]
    if suite not in SUITE_FUNCS:
        raise KeyError(f"unknown suite {suite!r}")
    return SUITE_FUNCS[suite](overrides)
