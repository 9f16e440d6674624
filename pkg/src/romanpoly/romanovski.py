"""Romanovski polynomials R_n^(alpha, beta) and the running-parameter Q-family.

The polynomials solve

    (1 + x^2) y'' + (2 beta x + alpha) y' + lambda_n y = 0,
    lambda_n = -n (2 beta + n - 1),

and are built from the Rodrigues expression

    R_n(x) = w(x)^-1 d^n/dx^n [ w(x) (1 + x^2)^n ],
    w(x)   = (1 + x^2)^(beta - 1) exp(-alpha acot x),

with unit normalization constant.  Throughout, ``acot`` takes values in
``(0, pi)`` so that the weight is continuous on the whole real line.

The Q-family is Q_nu^(alpha, beta) = R_nu^(alpha, beta - nu).  It obeys

    Q_nu'     = nu (2 beta - nu - 1) Q_{nu-1}
    Q_{nu+1}  = (1 + x^2) Q_nu' + (2 (beta - nu - 1) x + alpha) Q_nu
              = (2 (beta - nu - 1) x + alpha) Q_nu + nu (2 beta - nu - 1) (1 + x^2) Q_{nu-1}.

Note the minus signs in front of ``nu``: variants with ``+nu`` are sometimes
quoted and do not reproduce Q_2 (see ``tests/test_errata.py``).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .polycore import DOUBLE, RATIONAL, DensePolynomial, S, backend_of, evaluate


class WeightOverflowWarning(RuntimeWarning):
    """The Romanovski weight exceeded the double range and was reported as inf."""


class ContourError(ValueError):
    """Contour radius encloses a branch point of the weight."""


class ContourConvergenceError(ArithmeticError):
    """Trapezoidal contour estimates at two node counts disagree."""


class GeneratingFunctionDomainError(ValueError):
    """1 - 4y(x+y) <= 0, outside the real domain of the R generating function."""


def _exact(v):
    if isinstance(v, Rational):
        return Fraction(v)
    return float(v)


@dataclass(frozen=True)
class FamilyParams:
    """The pair (alpha, beta) indexing one Romanovski family.

    Integers and fractions keep the exact rational backend; any float puts
    the family on the double backend.
    """

    alpha: object
    beta: object

    def __post_init__(self):
        a, b = _exact(self.alpha), _exact(self.beta)
        if backend_of(a, b) == DOUBLE:
            a, b = float(a), float(b)
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError("alpha and beta must be finite")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def backend(self):
        return backend_of(self.alpha, self.beta)

    def shift_beta(self, delta):
        return replace(self, beta=self.beta + delta)

    def as_exact(self):
        """Exact rational copy (floats converted by their binary value)."""
        return FamilyParams(Fraction(self.alpha), Fraction(self.beta))

    def __str__(self):
        return f"(alpha={self.alpha}, beta={self.beta})"


@dataclass(frozen=True)
class RomanovskiPoly:
    params: FamilyParams
    n: int
    poly: DensePolynomial
    degree_deficient: bool

    def __call__(self, x):
        return evaluate(self.poly, x)

    @property
    def degree(self):
        return self.poly.degree


# --- weight ---------------------------------------------------------------


def acot(x):
    """Inverse cotangent on the continuous branch (0, pi)."""
    return 0.5 * np.pi - np.arctan(x)


def log_weight(params, x):
    """Natural log of the weight; vectorized over numpy arrays."""
    x = np.asarray(x, dtype=float)
    return (float(params.beta) - 1.0) * np.log1p(x * x) - float(params.alpha) * acot(x)


def weight(params, x):
    """Vectorized weight (1 + x^2)^(beta-1) exp(-alpha acot x)."""
    with np.errstate(over="ignore"):
        return np.exp(log_weight(params, x))


def weight_eval(params: FamilyParams, x: float) -> float:
    """Scalar weight value; overflow returns ``inf`` and emits a warning."""
    lw = float(log_weight(params, x))
    if lw > 709.78:
        warnings.warn(f"weight overflow at x={x} for {params}", WeightOverflowWarning, stacklevel=2)
        return math.inf
    return math.exp(lw)


def complex_weight(params, z):
    """Analytic continuation of the weight off the real axis.

    Principal branches of ``log(1+z^2)`` and ``arctan`` agree with the real
    branch inside any disc centred on the real axis that excludes +-i.
    """
    z = np.asarray(z, dtype=complex)
    return np.exp((float(params.beta) - 1.0) * np.log1p(z * z)
                  - float(params.alpha) * (0.5 * np.pi - np.arctan(z)))


# --- scalars --------------------------------------------------------------


def eigenvalue(n, beta):
    """lambda_n = -n (2 beta + n - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return -n * (2 * _exact(beta) + n - 1)


def leading_coeff(n, beta):
    """Leading coefficient a_n of R_n, independent of alpha.

    a_n = (1/n!) prod_{k=0}^{n-1} [2 beta (n-k) + n(n-1) - k(k-1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    beta = _exact(beta)
    prod = Fraction(1) if isinstance(beta, Fraction) else 1.0
    for k in range(n):
        prod *= 2 * beta * (n - k) + n * (n - 1) - k * (k - 1)
    return prod / math.factorial(n)


def degenerate_betas(n):
    """The beta values at which a_n vanishes."""
    return sorted({Fraction(k * (k - 1) - n * (n - 1), 2 * (n - k)) for k in range(n)})


# --- construction ---------------------------------------------------------


def _with_backend(poly, backend):
    return poly.to_double() if backend == DOUBLE else poly


def _finish(n, params, poly):
    deficient = leading_coeff(n, params.beta) == 0
    return RomanovskiPoly(params, n, _with_backend(poly, params.backend), deficient)


@lru_cache(maxsize=4096)
def _rodrigues_exact(n, alpha, beta):
    # d/dx [w^(a,b) P] = w^(a,b-1) [s P' + (2(b-1)x + a) P]; start at b = beta+n
    p = DensePolynomial((1,))
    b = beta + n
    for _ in range(n):
        p = S * p.derivative() + DensePolynomial((alpha, 2 * (b - 1))) * p
        b -= 1
    return p


def build_rodrigues(n: int, params: FamilyParams) -> RomanovskiPoly:
    """R_n by the exact symbolic derivative ladder of the Rodrigues formula.

    Double-backend parameters are converted to their exact binary rational
    values, the ladder is run exactly, and the result is rounded once.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    ex = params.as_exact()
    return _finish(n, params, _rodrigues_exact(n, ex.alpha, ex.beta))


@lru_cache(maxsize=4096)
def _q_sequence_exact(top, alpha, beta):
    # Q_0..Q_top for fixed (alpha, beta) by the three-term recurrence
    qs = [DensePolynomial((1,))]
    prev = DensePolynomial(())
    for nu in range(top):
        cur = qs[-1]
        nxt = DensePolynomial((alpha, 2 * (beta - nu - 1))) * cur
        if nu > 0:
            nxt = nxt + (nu * (2 * beta - nu - 1)) * (S * prev)
        prev = cur
        qs.append(nxt)
    return tuple(qs)


def build_recurrence(n: int, params: FamilyParams) -> RomanovskiPoly:
    """R_n via the Q three-term recurrence, using R_n^(a,b) = Q_n^(a, b+n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ex = params.as_exact()
    poly = _q_sequence_exact(n, ex.alpha, ex.beta + n)[n]
    return _finish(n, params, poly)


def q_sequence(top, params):
    """Q_0..Q_top of the family Q^(alpha, beta) as ``RomanovskiPoly`` objects."""
    ex = params.as_exact()
    seq = _q_sequence_exact(top, ex.alpha, ex.beta)
    return [_finish(nu, params.shift_beta(-nu), p) for nu, p in enumerate(seq)]


def q_poly(nu: int, params: FamilyParams) -> RomanovskiPoly:
    """Q_nu^(alpha, beta) = R_nu^(alpha, beta - nu).

    The returned object carries the R-family parameters (alpha, beta - nu), so
    ``ode_residual`` checks the Q hypergeometric equation directly.
    """
    return build_rodrigues(nu, params.shift_beta(-nu))


def romanovski(n, alpha, beta):
    """Shorthand for ``build_rodrigues(n, FamilyParams(alpha, beta))``."""
    return build_rodrigues(n, FamilyParams(alpha, beta))


def ode_residual(p: RomanovskiPoly, eigenvalue_override=None) -> DensePolynomial:
    """(1+x^2) p'' + (2 beta x + alpha) p' + lambda_n p as a polynomial.

    Exactly zero for correctly built rational inputs.
    """
    params = p.params
    poly = p.poly
    lam = eigenvalue(p.n, params.beta) if eigenvalue_override is None else eigenvalue_override
    d1 = poly.derivative()
    d2 = d1.derivative()
    t = DensePolynomial((params.alpha, 2 * params.beta), poly.backend)
    s = S if poly.backend == RATIONAL else S.to_double()
    return s * d2 + t * d1 + poly * lam


# --- generating functions ------------------------------------------------


def _generating_R(params, x, y):
    y = np.asarray(y)
    disc = 1.0 - 4.0 * y * (x + y)
    root = np.sqrt(disc + 0j) if np.iscomplexobj(y) else np.sqrt(disc)
    a = 2.0 * (x + y) / (1.0 + root)
    return complex_weight(params, a) / (complex_weight(params, x) * root)


def _generating_Q(params, x, y):
    return complex_weight(params, x + np.asarray(y) * (1.0 + x * x)) / complex_weight(params, x)


def generating_fn_R(params: FamilyParams, x: float, y):
    """Closed form of sum_k R_k(x) y^k / k!.

    Equal to w(A) / (w(x) sqrt(1 - 4y(x+y))) with A the root of
    y z^2 - z + (x + y) = 0 nearest x.  A is computed in the rationalized
    form 2(x+y) / (1 + sqrt(D)), which is regular at y = 0.  Complex ``y``
    inside the disc |4y(x+y)| < 1 returns the analytic continuation.
    """
    x = float(x)
    if isinstance(y, complex):
        return complex(_generating_R(params, x, y))
    y = float(y)
    disc = 1.0 - 4.0 * y * (x + y)
    if disc <= 0.0:
        raise GeneratingFunctionDomainError(f"1 - 4y(x+y) = {disc} <= 0")
    root = math.sqrt(disc)
    a = 2.0 * (x + y) / (1.0 + root)
    return math.exp(float(log_weight(params, a) - log_weight(params, x))) / root


def generating_fn_Q(params: FamilyParams, x: float, y):
    """Closed form of sum_nu Q_nu(x) y^nu / nu!, i.e. w(x + y(1+x^2)) / w(x)."""
    x = float(x)
    if isinstance(y, complex):
        return complex(_generating_Q(params, x, y))
    y = float(y)
    b = x + y * (1.0 + x * x)
    return math.exp(float(log_weight(params, b) - log_weight(params, x)))


def generating_radius_R(x):
    """Distance from y = 0 to the nearest zero of 1 - 4y(x+y)."""
    return 0.5 * (math.hypot(x, 1.0) - abs(x))


def generating_radius_Q(x):
    """Distance from y = 0 to the singularities y = (+-i - x)/(1+x^2)."""
    return 1.0 / math.hypot(x, 1.0)


# --- contour integral representation -------------------------------------


def _contour_estimate(n, params, x, radius, nodes):
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    shift = radius * np.exp(1j * theta)
    z = x + shift
    # w(z) s(z)^n == w^(alpha, beta+n)(z)
    vals = complex_weight(params.shift_beta(n), z) / shift ** n
    return math.factorial(n) * vals.mean().real / weight_eval(params, x)


def eval_via_contour(n: int, params: FamilyParams, x: float, num_nodes: int = 64,
                     radius=None, rtol=1e-10) -> float:
    """R_n(x) from the Cauchy integral representation.

    n!/(2 pi i w(x)) * contour integral of w(z) s(z)^n / (z - x)^(n+1) dz over a
    circle about x, by the trapezoidal rule.  The estimate at ``num_nodes`` is
    checked against ``2 * num_nodes``.
    """
    x = float(x)
    limit = math.sqrt(1.0 + x * x)
    if radius is None:
        radius = 0.5 * limit
    if not 0.0 < radius < limit:
        raise ContourError(f"radius {radius} must lie in (0, {limit}) to exclude +-i")
    if num_nodes < 64:
        raise ValueError("num_nodes must be at least 64")
    coarse = _contour_estimate(n, params, x, radius, num_nodes)
    fine = _contour_estimate(n, params, x, radius, 2 * num_nodes)
    if abs(fine - coarse) > rtol * max(1.0, abs(fine)):
        raise ContourConvergenceError(
            f"contour estimates disagree: {coarse!r} vs {fine!r} at {num_nodes}/{2 * num_nodes} nodes")
    return fine


__all__ = [
    "FamilyParams", "RomanovskiPoly", "WeightOverflowWarning", "ContourError",
    "ContourConvergenceError", "GeneratingFunctionDomainError", "generating_radius_R",
    "generating_radius_Q", "acot", "weight",
    "log_weight", "weight_eval", "complex_weight", "eigenvalue", "leading_coeff",
    "degenerate_betas", "build_rodrigues", "build_recurrence", "q_poly", "q_sequence",
    "romanovski", "ode_residual", "generating_fn_R", "generating_fn_Q", "eval_via_contour",
]
