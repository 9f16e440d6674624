"""Improper integrals over the real line with a priori convergence analysis.

Every integral over R is mapped to (-pi/2, pi/2) by x = tan u and integrated
by composite Gauss-Legendre on 2^L panels (geometrically graded toward the
endpoints), increasing L until two levels agree.  Divergence is decided before any integration from the power law of
the integrand at infinity: an integrand behaving like |x|^e converges iff
e < -1, and e = -1 (logarithmic) counts as divergent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .polycore import evaluate_homogeneous
from .romanovski import FamilyParams, build_rodrigues, q_sequence

CONVERGENT = "convergent"
DIVERGENT = "divergent"
MARGINAL = "marginal"

DEFAULT_TOL = 1e-10
GL_ORDER = 20
MIN_LEVEL = 2
MAX_LEVEL = 12


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    verdict: str
    flags: tuple = field(default_factory=tuple)
    exponent: object = None

    @property
    def ok(self):
        return self.verdict == CONVERGENT

    @classmethod
    def divergent(cls, exponent=None, flags=()):
        return cls(math.nan, math.inf, DIVERGENT, ("divergent",) + tuple(flags), exponent)


@dataclass(frozen=True)
class DecayAnalysis:
    exponent: object
    convergent: bool


@lru_cache(maxsize=64)
def gauss_legendre(order):
    """Nodes and weights of the ``order``-point rule on [-1, 1]."""
    return np.polynomial.legendre.leggauss(order)


GRADING_RATIO = 0.15


def _rule(lo, hi, panels, order):
    """Composite Gauss-Legendre nodes and weights on [lo, hi].

    The two end panels are split geometrically toward the ends, which
    resolves integrable endpoint singularities (u - lo)^p with p > -1.
    Besides the nodes, returns their distances to ``lo`` and ``hi``,
    accumulated from panel offsets so they keep full relative accuracy even
    when far below the spacing of floats near the endpoint.
    """
    t, w = gauss_legendre(order)
    length = hi - lo
    h = length / panels
    layers = 3 * int(math.log2(panels))
    graded = h * GRADING_RATIO ** np.arange(layers, 0, -1)

    def half_rule(count):
        # panel edges measured from one endpoint: graded layers, then uniform
        edges = np.concatenate([[0.0], graded, h * np.arange(1, count + 1)])
        a, b = edges[:-1, None], edges[1:, None]
        return (a + 0.5 * (b - a) * (1 + t)).ravel(), (0.5 * (b - a) * w).ravel()

    k = panels // 2
    from_lo, w_lo = half_rule(k)
    from_hi, w_hi = half_rule(panels - k)
    d_lo = np.concatenate([from_lo, length - from_hi])
    d_hi = np.concatenate([length - from_lo, from_hi])
    return lo + d_lo, d_lo, d_hi, np.concatenate([w_lo, w_hi])


def _refine(evaluate, tol, min_level, max_level):
    if max_level <= min_level:
        raise ValueError("max_level must exceed min_level")
    prev, _ = evaluate(2 ** min_level)
    for level in range(min_level + 1, max_level + 1):
        cur, scale = evaluate(2 ** level)
        diff = abs(cur - prev)
        if not math.isfinite(cur):
            return IntegralResult(math.nan, math.inf, MARGINAL, ("non-finite integrand",))
        if diff <= tol * max(1.0, scale):
            return IntegralResult(cur, diff, CONVERGENT)
        prev = cur
    return IntegralResult(cur, diff, MARGINAL, ("refinement cap reached",))


def _sums(vals, wts):
    vals = np.asarray(vals, dtype=float)
    return float(np.dot(wts, vals)), float(np.dot(wts, np.abs(vals)))


def integrate_interval(g, lo, hi, tol=DEFAULT_TOL, order=GL_ORDER,
                       min_level=MIN_LEVEL, max_level=MAX_LEVEL) -> IntegralResult:
    """Composite Gauss-Legendre on [lo, hi] with dyadic panel refinement.

    Stops when two successive levels differ by at most
    ``tol * max(1, integral of |g|)``; the scale factor keeps the test
    meaningful for large integrals whose absolute rounding floor exceeds
    ``tol``.  Hitting ``max_level`` yields a ``marginal`` verdict.
    """
    def evaluate(panels):
        u, _, _, wts = _rule(lo, hi, panels, order)
        return _sums(g(u), wts)
    return _refine(evaluate, tol, min_level, max_level)


def integrate_angle(g, tol=DEFAULT_TOL, order=GL_ORDER, min_level=MIN_LEVEL,
                    max_level=MAX_LEVEL) -> IntegralResult:
    """Integrate over u in (-pi/2, pi/2), with x = tan u.

    ``g(s, c, v)`` receives s = sin u, c = cos u and v = pi/2 - u, all
    computed from the exact distance to the nearer endpoint so that
    c and v retain relative accuracy as u approaches +-pi/2.
    """
    half = 0.5 * math.pi

    def evaluate(panels):
        _, d_lo, d_hi, wts = _rule(-half, half, panels, order)
        near_lo = d_lo < d_hi
        c = np.sin(np.where(near_lo, d_lo, d_hi))
        s = np.where(near_lo, -np.cos(d_lo), np.cos(d_hi))
        return _sums(g(s, c, d_hi), wts)
    return _refine(evaluate, tol, min_level, max_level)


def integrate_real_line(f, tol=DEFAULT_TOL, **kw) -> IntegralResult:
    """Integrate f over R via x = tan u; ``f`` must accept numpy arrays."""
    def g(s, c, v):
        with np.errstate(divide="ignore"):
            return f(s / c) / (c * c)
    return integrate_angle(g, tol, **kw)


def decay_exponent(m, n, params: FamilyParams, jacobian_power=0) -> DecayAnalysis:
    """Power of |x| governing w^(alpha,beta) x^m x^n s^(-jacobian_power) at infinity.

    exponent = 2 beta - 2 + m + n - 2 jacobian_power; convergent iff < -1.
    """
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    jp = Fraction(jacobian_power) if isinstance(jacobian_power, (int, Fraction)) else jacobian_power
    e = 2 * params.beta - 2 + m + n - 2 * jp
    return DecayAnalysis(e, bool(e < -1))


def _romanovski_integrand(params, polys, cos_power):
    # w(tan u) * prod p_k(tan u) * sec^2 u, with each p_k homogenized in (sin, cos)
    alpha = float(params.alpha)

    def g(s, c, v):
        out = np.exp(-alpha * v) * c ** cos_power
        for p in polys:
            out = out * evaluate_homogeneous(p, s, c)
        return out
    return g


def inner_product_R(m: int, n: int, params: FamilyParams, tol=DEFAULT_TOL) -> IntegralResult:
    """Integral of w^(alpha,beta) R_m R_n over R, or a divergent verdict.

    The decay exponent uses the actual degrees of R_m, R_n, which fall short
    of m, n for the degenerate betas where the leading coefficient vanishes.
    """
    rm = build_rodrigues(m, params).poly
    rn = build_rodrigues(n, params).poly
    if rm.is_zero() or rn.is_zero():
        return IntegralResult(0.0, 0.0, CONVERGENT, ("zero polynomial",))
    decay = decay_exponent(rm.degree, rn.degree, params)
    if not decay.convergent:
        return IntegralResult.divergent(decay.exponent)
    # x = tan u: w dx = cos^(-2 beta) e^{-alpha(pi/2 - u)} du, R_k(tan u) = R^hom_k / cos^deg
    cos_power = -2 * float(params.beta) - rm.degree - rn.degree
    res = integrate_angle(_romanovski_integrand(params, (rm, rn), cos_power), tol)
    return IntegralResult(res.value, res.error_estimate, res.verdict, res.flags, decay.exponent)


def norm_R(n: int, params: FamilyParams, tol=DEFAULT_TOL) -> IntegralResult:
    """Squared norm <R_n, R_n>; the closed-form bound n < -beta is sufficient,
    the exact convergence condition used here is n < 1/2 - beta."""
    return inner_product_R(n, n, params, tol)


def q_epsilon(m, n):
    return 1 if (m + n) % 2 else 2


def inner_product_Q(m: int, n: int, params: FamilyParams, tol=DEFAULT_TOL,
                    epsilon=None) -> IntegralResult:
    """Integral of w s^(-eps/2) (Q_m s^(-m/2)) (Q_n s^(-n/2)) over R.

    ``epsilon`` defaults to 1 for odd m+n and 2 for even m+n; the diagonal
    m == n is allowed only with an explicit ``epsilon``.  Results with
    beta >= eps - 1/2 carry the ``outside-theorem`` flag.
    """
    if m == n and epsilon is None:
        raise ValueError("m == n requires an explicit epsilon")
    eps = q_epsilon(m, n) if epsilon is None else epsilon
    qs = q_sequence(max(m, n), params)
    qm, qn = qs[m].poly, qs[n].poly
    flags = ()
    if not params.beta < Fraction(eps) - Fraction(1, 2):
        flags = ("outside-theorem",)
    if qm.is_zero() or qn.is_zero():
        return IntegralResult(0.0, 0.0, CONVERGENT, flags + ("zero polynomial",))
    jp = Fraction(eps + m + n, 2)
    decay = decay_exponent(qm.degree, qn.degree, params, jp)
    if not decay.convergent:
        return IntegralResult.divergent(decay.exponent, flags)
    cos_power = -2 * float(params.beta) + eps + (m - qm.degree) + (n - qn.degree)
    res = integrate_angle(_romanovski_integrand(params, (qm, qn), cos_power), tol)
    return IntegralResult(res.value, res.error_estimate, res.verdict, res.flags + flags, decay.exponent)


def gram_matrix(max_degree: int, params: FamilyParams, tol=DEFAULT_TOL):
    """(max_degree+1)^2 nested list of IntegralResult, symmetric by construction."""
    size = max_degree + 1
    out = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            out[i][j] = out[j][i] = inner_product_R(i, j, params, tol)
    return out


def gram_values(results):
    """Float matrix of a ``gram_matrix`` result (NaN where divergent)."""
    return np.array([[r.value for r in row] for row in results])
