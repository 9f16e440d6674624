"""Cauchy random-matrix ensemble and its gap probabilities.

The joint eigenvalue density is proportional to

    prod_j (1 + lambda_j^2)^(-N-a) * prod_{j<k} |lambda_k - lambda_j|^2,

the stereographic image of the circular Jacobi ensemble.  The one-body
weight is the Romanovski weight w^(0, 1-N-a), so R_0..R_{N-1} of that family
orthonormalize to the basis of the determinantal kernel

    K(x, y) = sum_{l<N} sqrt(w(x)) p_l(x) sqrt(w(y)) p_l(y).

The gap probability E(0, I) = det(1 - K|_I) is computed by Nystroem
discretization on Gauss-Legendre nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .polycore import evaluate_homogeneous
from .quadrature import CONVERGENT, gauss_legendre, inner_product_R, integrate_real_line
from .romanovski import FamilyParams, build_recurrence, weight_eval

NYSTROM_TOL = 1e-8


class GapConvergenceError(ArithmeticError):
    pass


class SamplerEfficiencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnsembleSpec:
    N: int
    a: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if not self.a > -0.5:
            raise ValueError("a must exceed -1/2")

    @property
    def family(self) -> FamilyParams:
        a = Fraction(self.a) if isinstance(self.a, Rational) else float(self.a)
        return FamilyParams(0, 1 - self.N - a)

    def to_json(self):
        return {"N": int(self.N), "a": float(self.a)}


@dataclass(frozen=True)
class Kernel:
    spec: EnsembleSpec
    polys: tuple
    norms: tuple

    def sqrt_weighted(self, x):
        """Matrix whose row l is sqrt(w(x)) p_l(x), evaluated through u = atan x."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        u = np.arctan(x)
        s, c = np.sin(u), np.cos(u)
        power = float(self.spec.N) + float(self.spec.a)
        rows = []
        for poly, f in zip(self.polys, self.norms):
            # (1+x^2)^(-(N+a)/2) p(x) = cos^(N+a-d) * hom(sin, cos) / f
            rows.append(evaluate_homogeneous(poly, s, c) * c ** (power - poly.degree) / f)
        return np.array(rows)


def cauchy_weight(lam, spec: EnsembleSpec):
    """(1 + lambda^2)^(-N-a)."""
    return (1.0 + np.asarray(lam, dtype=float) ** 2) ** (-spec.N - float(spec.a))


def stereographic(lam):
    """theta = arg((1 + i lambda)/(1 - i lambda)) = 2 atan(lambda), in (-pi, pi)."""
    return 2.0 * np.arctan(lam)


def orthonormal_basis(spec: EnsembleSpec) -> Kernel:
    fam = spec.family
    top = spec.N - 1
    # every pair m+n <= 2N-2 sits inside the window m+n < 1-2 beta = 2N+2a-1
    assert 2 * top < 1 - 2 * fam.beta
    polys, norms = [], []
    for n in range(spec.N):
        r = build_recurrence(n, fam)
        norm = inner_product_R(n, n, fam, tol=1e-13)
        if norm.verdict != CONVERGENT:
            raise ArithmeticError(f"norm of R_{n} did not converge: {norm.verdict}")
        polys.append(r.poly)
        norms.append(math.sqrt(norm.value))
    return Kernel(spec, tuple(polys), tuple(norms))


def kernel_eval(k: Kernel, x, y):
    fx, fy = k.sqrt_weighted(x), k.sqrt_weighted(y)
    out = (fx * fy).sum(axis=0)
    return out if np.ndim(x) or np.ndim(y) else float(out[0])


def kernel_matrix(k: Kernel, xs, ys=None):
    fx = k.sqrt_weighted(xs)
    fy = fx if ys is None else k.sqrt_weighted(ys)
    return fx.T @ fy


def kernel_trace(k: Kernel, tol=1e-12):
    """Integral of K(x, x) over R; equals N for an orthonormal basis."""
    return integrate_real_line(lambda x: (k.sqrt_weighted(x) ** 2).sum(axis=0), tol=tol)


def nystrom_matrix(k: Kernel, lo, hi, order):
    t, w = gauss_legendre(order)
    half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
    nodes = mid + half * t
    sw = np.sqrt(half * w)
    return sw[:, None] * kernel_matrix(k, nodes) * sw[None, :]


def _det_gap(k, lo, hi, order):
    m = nystrom_matrix(k, lo, hi, order)
    return float(np.linalg.det(np.eye(order) - m))


@dataclass(frozen=True)
class GapResult:
    value: float
    error: float
    quadrature_order: int
    converged: bool


def gap_probability(k: Kernel, lo, hi, order=None, tol=NYSTROM_TOL, max_order=1024,
                    full_output=False):
    """E(0, (lo, hi)) = det(1 - K) on the interval, by Nystroem.

    Orders q and 2q are compared, doubling q until they agree within ``tol``.
    Raises GapConvergenceError past ``max_order``.  With ``full_output`` a
    :class:`GapResult` is returned instead of the bare value.
    """
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("interval must be finite")
    if hi < lo:
        raise ValueError("need lo <= hi")
    if hi == lo:
        res = GapResult(1.0, 0.0, 0, True)
        return res if full_output else res.value
    q = max(2 * k.spec.N, 16) if order is None else int(order)
    if q < 2 * k.spec.N:
        raise ValueError("quadrature order must be at least 2N")
    coarse = _det_gap(k, lo, hi, q)
    while True:
        fine = _det_gap(k, lo, hi, 2 * q)
        err = abs(fine - coarse)
        if err <= tol:
            break
        if 2 * q >= max_order:
            raise GapConvergenceError(f"orders {q} and {2 * q} differ by {err:.3e}")
        q, coarse = 2 * q, fine
    res = GapResult(min(1.0, max(0.0, fine)), err, 2 * q, True)
    return res if full_output else res.value


def gap_series(k: Kernel, lo, hi, order=64, terms=3):
    """Alternating series 1 - e_1 + e_2 - e_3 ... truncated after ``terms`` terms.

    e_j is the j-th elementary symmetric function of the Nystroem eigenvalues,
    i.e. the j-fold integral of the j x j kernel determinants divided by j!.
    Returns (partial sum, bound on the omitted tail); the bound uses
    e_j <= tr^j / j! for a positive semidefinite operator.
    """
    if terms > 3:
        raise ValueError("only up to three terms are implemented")
    m = nystrom_matrix(k, lo, hi, order)
    p1 = np.trace(m)
    p2 = np.trace(m @ m)
    p3 = np.trace(m @ m @ m)
    e = [1.0, p1, 0.5 * (p1 ** 2 - p2), (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 6.0]
    total = sum((-1) ** j * e[j] for j in range(terms + 1))
    tail = sum(p1 ** j / math.factorial(j) for j in range(terms + 1, terms + 40))
    return float(total), float(tail)


def mc_gap_estimate(spec: EnsembleSpec, lo, hi, samples=100_000, seed=0, batch=None):
    """Fraction of eigenvalue tuples avoiding (lo, hi), by exact rejection sampling.

    Proposal: independent Student-t draws with nu = 1+2a degrees of freedom,
    whose tails match (1+lambda^2)^(-1-a).  With
    (x-y)^2 <= (1+x^2)(1+y^2), i.e. (1+xy)^2 >= 0, the acceptance ratio is
    bounded by one on all of R^N, so no truncation is needed.  Returns (estimate, binomial
    standard error).  Deterministic for a given seed.
    """
    n, a = spec.N, float(spec.a)
    if n > 3:
        raise ValueError("Monte Carlo oracle supports N <= 3")
    if samples < 10_000:
        raise ValueError("need at least 1e4 samples")
    nu = 1.0 + 2.0 * a
    # (1+lambda^2)^(-1-a) / t-shape = ((1+lambda^2/nu)/(1+lambda^2))^(1+a) <= env
    env = (1.0 / nu) ** (1.0 + a) if nu < 1.0 else 1.0
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng = np.random.default_rng(seed)
    batch = batch or max(4 * samples, 10_000)
    accepted = []
    drawn = 0
    got = 0
    while got < samples:
        lam = rng.standard_t(nu, size=(batch, n))
        drawn += batch
        s = 1.0 + lam * lam
        ratio = np.ones(batch)
        for i, j in pairs:
            ratio *= (lam[:, i] - lam[:, j]) ** 2 / (s[:, i] * s[:, j])
        ratio *= np.prod(((1.0 + lam * lam / nu) / s) ** (1.0 + a) / env, axis=1)
        keep = rng.random(batch) < ratio
        accepted.append(lam[keep])
        got += int(keep.sum())
        if got < 1e-4 * drawn:
            raise SamplerEfficiencyError(f"acceptance rate {got / drawn:.2e} below 1e-4")
    lam = np.concatenate(accepted)[:samples]
    inside = (lam > lo) & (lam < hi)
    p = float(np.mean(~inside.any(axis=1)))
    return p, math.sqrt(max(p * (1.0 - p), 0.0) / samples)


def weight_matches_family(lam, spec: EnsembleSpec):
    """cauchy_weight agrees with the Romanovski weight w^(0, 1-N-a)."""
    return float(cauchy_weight(lam, spec)), weight_eval(spec.family, lam)
