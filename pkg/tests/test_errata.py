"""Printed forms of several identities fail their own consistency checks.

Each test evaluates the printed variant next to the corrected one that the
library implements and asserts that only the corrected one passes.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from romanpoly import physics
from romanpoly.jacobi import (ComplexPolynomial, _poly_pow, complex_jacobi, complexify,
                              gen_binomial, jacobi_parameters, romanovski_residual)
from romanpoly.polycore import DensePolynomial, S
from romanpoly.romanovski import FamilyParams, build_rodrigues, generating_fn_R, log_weight, q_poly

PARAMS = [FamilyParams(Fraction(3, 2), Fraction(-7, 3)), FamilyParams(1, -3),
          FamilyParams(Fraction(-2, 5), Fraction(5, 4))]


def printed_q2(p):
    a, b = p.alpha, p.beta
    return DensePolynomial((2 * (b - 1) + a * a, 2 * a * (2 * b - 3), 2 * (b - 1) * (2 * b - 3)))


def recurrence_step(p, nu, q_prev, q_cur, sign):
    # sign=+1 is the printed form, sign=-1 the corrected one
    lin = DensePolynomial((p.alpha, 2 * (p.beta + sign * nu - 1)))
    return lin * q_cur + S * q_prev * (nu * (2 * p.beta + sign * nu - 1))


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_printed_q2_matches_library(p):
    assert q_poly(2, p).poly == printed_q2(p)


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_q_recurrence_printed_fails_corrected_passes(p):
    q0, q1 = q_poly(0, p).poly, q_poly(1, p).poly
    assert recurrence_step(p, 1, q0, q1, -1) == printed_q2(p)
    assert recurrence_step(p, 1, q0, q1, +1) != printed_q2(p)


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_q_derivative_printed_fails_corrected_passes(p):
    for nu in range(1, 6):
        d = q_poly(nu, p).poly.derivative()
        prev = q_poly(nu - 1, p).poly
        assert d == prev * (nu * (2 * p.beta - nu - 1))
        assert d != prev * (nu * (2 * p.beta + nu - 1))


def printed_generating_R(p, x, y):
    # y w(A) / ((2yA - 1) w(x)) with A = (1 - sqrt(D)) / (2y)
    root = math.sqrt(1 - 4 * y * (x + y))
    a = (1 - root) / (2 * y)
    return y * math.exp(float(log_weight(p, a) - log_weight(p, x))) / (2 * y * a - 1)


def test_generating_function_printed_prefactor_vanishes_at_zero():
    p = FamilyParams(1.0, -3.0)
    for x in (-1.2, 0.3, 2.0):
        for y in (1e-4, 1e-6):
            # first order in y: G = 1 + R_1(x) y + O(y^2)
            r1 = 2 * p.beta * x + p.alpha
            assert abs(printed_generating_R(p, x, y)) < 1e-3
            assert abs(generating_fn_R(p, x, y) - 1.0 - r1 * y) < 100 * y * y
    assert generating_fn_R(p, 0.7, 0.0) == 1.0


def printed_jacobi_sum(n, a, b):
    # same sum as complex_jacobi but with (1-z)^k in place of (z-1)^k
    zm, zp = ComplexPolynomial((1, -1)), ComplexPolynomial((1, 1))
    total = ComplexPolynomial()
    for k in range(n + 1):
        c = gen_binomial(n + a, n - k) * gen_binomial(n + b, k)
        total = total + c * (_poly_pow(zm, k) * _poly_pow(zp, n - k))
    return total * (0.5 ** n)


def test_jacobi_sum_sign_printed_fails_at_n1():
    a, b = 0.3 + 0.7j, -1.1 + 0.2j
    # P_1^(a,b)(z) = (a - b)/2 + (a + b + 2) z / 2
    ref = ComplexPolynomial(((a - b) / 2, (a + b + 2) / 2))
    assert (complex_jacobi(1, a, b) - ref).max_abs() < 1e-14
    assert (printed_jacobi_sum(1, a, b) - ref).max_abs() > 0.1


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_jacobi_parameter_map_printed_fails(p):
    n = 1
    alpha, beta = float(p.alpha), float(p.beta)
    a, b = jacobi_parameters(p)
    good = complexify(complex_jacobi(n, a, b)) * 1j
    assert romanovski_residual(good, n, alpha, beta).max_abs() < 1e-12
    a_p = complex(1 - beta, -alpha / 2)
    bad = complexify(complex_jacobi(n, a_p, a_p.conjugate())) * 1j
    assert romanovski_residual(bad, n, alpha, beta).max_abs() > 1e-3


def test_scarf_alpha_sign():
    p = physics.ScarfParams(2.0, 0.5)
    good = physics.scarf_state(1, p)
    _, spread = physics.rayleigh_energy(good)
    assert spread < 1e-5
    fam = FamilyParams(-2.0 * p.B, 0.5 - p.A)
    bad = physics.BoundState(1, p, math.nan, 1.0, fam, build_rodrigues(1, fam).poly)
    _, spread = physics.rayleigh_energy(bad)
    assert spread > 1.0


@pytest.mark.parametrize("n", [1, 2])
def test_rosen_morse_beta_printed_fails(n):
    p = physics.RosenMorseParams(50.0, 1)
    mean, spread = physics.rayleigh_energy(physics.rosen_morse_state(n, p))
    assert spread / abs(mean) < 1e-5
    fam = FamilyParams(2 * p.b / (n + p.l + 1), float(1 - (n + p.l)))
    bad = physics.BoundState(n, p, math.nan, 1.0, fam, build_rodrigues(n, fam).poly)
    mean, spread = physics.rayleigh_energy(bad)
    assert spread / abs(mean) > 1.0
    assert np.isfinite(mean)
