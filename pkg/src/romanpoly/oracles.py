"""Independent numerical oracles used to cross-check the constructions.

None of these routines touch the Romanovski machinery: they only sample a
callable or implement a textbook recurrence, so agreement with the library
is evidence rather than tautology.
"""
from __future__ import annotations

import math

import numpy as np


def taylor_coefficients(f, radius, kmax, nodes=64, rtol=1e-10):
    """Taylor coefficients c_0..c_kmax about 0 of a function analytic in |y| < R.

    ``f`` must accept complex arguments.  The Cauchy integral
    c_k = (1/2 pi i) contour integral of f(y) y^-(k+1) dy on |y| = radius is
    evaluated with the trapezoidal rule, which converges geometrically; the
    ``nodes`` estimate is compared with ``2*nodes``.
    """
    def estimate(m):
        y = radius * np.exp(2j * np.pi * np.arange(m) / m)
        vals = np.array([complex(f(complex(v))) for v in y])
        fft = np.fft.fft(vals) / m
        coeffs = np.array([fft[k].real / radius ** k for k in range(kmax + 1)])
        return coeffs, np.abs(vals).max()
    (coarse, _), (fine, peak) = estimate(nodes), estimate(2 * nodes)
    # rounding in f is amplified by radius^-k in the k-th coefficient
    floor = peak / radius ** np.arange(kmax + 1)
    if np.any(np.abs(fine - coarse) > rtol * np.maximum(np.abs(fine), floor)):
        raise ArithmeticError("Taylor coefficients not converged; shrink radius or add nodes")
    return fine


def central_derivative(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def second_derivative_5pt(f, z, h=1e-3):
    """Fourth-order five-point stencil for f''(z); ``f`` takes arrays."""
    z = np.asarray(z, dtype=float)
    return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) - f(z - 2 * h)) / (12.0 * h * h)


def assoc_legendre(l, m, x):
    """P_l^m(x) on [-1, 1] by upward recurrence in l, without the Condon-Shortley phase."""
    if not 0 <= m <= l:
        raise ValueError("need 0 <= m <= l")
    x = np.asarray(x, dtype=float)
    sin_t = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    double_fact = float(np.prod(np.arange(2 * m - 1, 0, -2))) if m > 0 else 1.0
    p_prev = double_fact * sin_t ** m
    if l == m:
        return p_prev
    p_cur = (2 * m + 1) * x * p_prev
    for k in range(m + 2, l + 1):
        p_prev, p_cur = p_cur, ((2 * k - 1) * x * p_cur - (k + m - 1) * p_prev) / (k - m)
    return p_cur


def cauchy_density_1(a=0.0):
    """Normalized one-point density (1+x^2)^(-1-a) of the N=1 Cauchy ensemble."""
    norm = math.sqrt(math.pi) * math.gamma(a + 0.5) / math.gamma(a + 1.0)
    return lambda x: (1.0 + x * x) ** (-1.0 - a) / norm
