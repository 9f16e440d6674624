"""Bound states of the hyperbolic Scarf and trigonometric Rosen-Morse potentials.

Units hbar = 2 mu = 1, so the Schroedinger operator is -d^2/dz^2 + V(z).

Scarf:  V(z) = [B^2 - A(A+1)] sech^2 z - B(2A+1) tanh z sech z,
        psi_n(z) = C_n cosh(z)^(-A) exp(B atan(sinh z)) R_n^(2B, 1/2-A)(sinh z),
        E_n = -(A - n)^2,  0 <= n < A.

Rosen-Morse:  v(z) = -2b cot z + l(l+1)/sin^2 z  on (0, pi),
        psi_n(z) = C_n sin(z)^(n+l+1) exp(-b z/(n+l+1)) R_n^(alpha_n, beta_n)(cot z),
        alpha_n = 2b/(n+l+1),  beta_n = -(n+l).

Both parameters of the Rosen-Morse family run with n, so orthogonality of
those states is not an instance of the fixed-parameter theorem.

Wavefunctions are evaluated in homogenized form, e.g.
R_n(sinh z)/cosh(z)^n = sum_k a_k tanh^k sech^(n-k), which stays finite for
any z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .oracles import second_derivative_5pt
from .polycore import evaluate_homogeneous
from .quadrature import (CONVERGENT, IntegralResult, decay_exponent, integrate_interval,
                         integrate_real_line)
from .romanovski import FamilyParams, build_rodrigues


class UnboundStateError(ValueError):
    """Requested quantum number has no normalizable bound state."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ScarfParams:
    A: float
    B: float

    @property
    def num_bound(self):
        """Number of integers n with 0 <= n < A."""
        return max(0, math.ceil(self.A))


@dataclass(frozen=True)
class RosenMorseParams:
    b: float
    l: int

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("b must be positive")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError("l must be a nonnegative integer")


@dataclass(frozen=True)
class BoundState:
    n: int
    params: object
    energy: float
    normalization: float
    family: FamilyParams
    _poly: object = field(repr=False, compare=False, default=None)

    @property
    def kind(self):
        return "scarf" if isinstance(self.params, ScarfParams) else "rosenmorse"

    def __call__(self, z):
        return wavefunction(self, z)


def _logcosh(z):
    a = np.abs(z)
    return a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0)


# --- Scarf ------------------------------------------------------------------


def scarf_potential(z, p: ScarfParams):
    sech = 1.0 / np.cosh(z)
    return (p.B ** 2 - p.A * (p.A + 1)) * sech ** 2 - p.B * (2 * p.A + 1) * np.tanh(z) * sech


def scarf_family(p: ScarfParams) -> FamilyParams:
    """alpha = 2B, beta = 1/2 - A; see the module docstring for the sign of alpha."""
    return FamilyParams(2.0 * float(p.B), 0.5 - float(p.A))


def _scarf_raw(n, p, poly, z):
    z = np.asarray(z, dtype=float)
    t, s = np.tanh(z), np.exp(-_logcosh(z))
    # R_n(sinh z) cosh^-A = cosh^(n-A) * sum a_k tanh^k sech^(n-k)
    hom = evaluate_homogeneous(poly, t, s, n)
    return hom * np.exp((n - p.A) * _logcosh(z) + p.B * 2.0 * np.arctan(np.tanh(0.5 * z)))


def _sign_fix(f, lo, hi):
    z = np.linspace(lo, hi, 4001)
    v = f(z)
    big = np.abs(v) > 1e-8 * np.abs(v).max()
    return 1.0 if v[np.argmax(big)] > 0 else -1.0


def scarf_state(n: int, p: ScarfParams) -> BoundState:
    if n < 0 or not n < p.A:
        raise UnboundStateError(f"n={n} is not below A={p.A}")
    fam = scarf_family(p)
    poly = build_rodrigues(n, fam).poly
    raw = lambda z: _scarf_raw(n, p, poly, z)
    norm = integrate_real_line(lambda z: raw(z) ** 2, tol=1e-13)
    if norm.verdict != CONVERGENT:
        raise UnboundStateError(f"normalization integral {norm.verdict}")
    c = _sign_fix(raw, -20.0, 20.0) / math.sqrt(norm.value)
    return BoundState(n, p, -(p.A - n) ** 2, c, fam, poly)


def scarf_overlap(m: int, n: int, p: ScarfParams) -> IntegralResult:
    """Integral of psi_m psi_n over the real z line.

    In x = sinh z the integrand behaves like |x|^((m-A)+(n-A)-1); the decay
    analysis uses that exponent before integrating.
    """
    fam = scarf_family(p)
    # w^(2B, 1/2-A) R_m R_n dz with dz = dx / sqrt(1+x^2)
    decay = decay_exponent(m, n, fam, Fraction(1, 2))
    if not decay.convergent:
        return IntegralResult.divergent(decay.exponent)
    sm, sn = scarf_state(m, p), scarf_state(n, p)
    res = integrate_real_line(lambda z: sm(z) * sn(z), tol=1e-12)
    return IntegralResult(res.value, res.error_estimate, res.verdict, res.flags, decay.exponent)


def scarf_overlap_matrix(p: ScarfParams):
    size = p.num_bound
    states = [scarf_state(k, p) for k in range(size)]
    out = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            r = integrate_real_line(lambda z: states[i](z) * states[j](z), tol=1e-12)
            out[i, j] = out[j, i] = r.value
    return out


# --- Rosen-Morse ------------------------------------------------------------


def _check_open_interval(z):
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0.0) or np.any(z >= np.pi):
        raise DomainError("z must lie in (0, pi)")
    return z


def rosen_morse_potential(z, p: RosenMorseParams):
    z = _check_open_interval(z)
    return -2.0 * p.b / np.tan(z) + p.l * (p.l + 1) / np.sin(z) ** 2


def coulomb_plus_linear(z, p: RosenMorseParams):
    """Coulomb-plus-linear comparison curve -2b/z + (2b/3) z + l(l+1)/z^2.

    The small-z expansion of the Rosen-Morse potential also carries the
    constant l(l+1)/3, a pure energy shift that this curve leaves out.
    """
    z = np.asarray(z, dtype=float)
    return -2.0 * p.b / z + (2.0 * p.b / 3.0) * z + p.l * (p.l + 1) / z ** 2


def rosen_morse_family(n: int, p: RosenMorseParams) -> FamilyParams:
    k = n + p.l + 1
    return FamilyParams(2.0 * p.b / k, float(-(n + p.l)))


def rosen_morse_energy_formula(n: int, p: RosenMorseParams) -> float:
    """(n+l+1)^2 - b^2/(n+l+1)^2, used only as a cross-check of the Rayleigh oracle."""
    k = n + p.l + 1
    return k * k - (p.b / k) ** 2


def _rm_raw(n, p, poly, z):
    z = np.asarray(z, dtype=float)
    s, c = np.sin(z), np.cos(z)
    # sin^(n+l+1) R_n(cot z) = sin^(l+1) sum a_k cos^k sin^(n-k)
    hom = evaluate_homogeneous(poly, c, s, n)
    return s ** (p.l + 1) * hom * np.exp(-p.b * z / (n + p.l + 1))


def rosen_morse_state(n: int, p: RosenMorseParams) -> BoundState:
    if n < 0:
        raise ValueError("n must be nonnegative")
    fam = rosen_morse_family(n, p)
    poly = build_rodrigues(n, fam).poly
    raw = lambda z: _rm_raw(n, p, poly, z)
    norm = integrate_interval(lambda z: raw(z) ** 2, 0.0, math.pi, tol=1e-13)
    if norm.verdict != CONVERGENT or not norm.value > 0:
        raise UnboundStateError(f"normalization integral {norm.verdict}")
    c = _sign_fix(raw, 1e-6, math.pi - 1e-6) / math.sqrt(norm.value)
    state = BoundState(n, p, math.nan, c, fam, poly)
    energy, _ = rayleigh_energy(state)
    return BoundState(n, p, energy, c, fam, poly)


def rosen_morse_overlap(m: int, n: int, p: RosenMorseParams) -> IntegralResult:
    sm, sn = rosen_morse_state(m, p), rosen_morse_state(n, p)
    return integrate_interval(lambda z: sm(z) * sn(z), 0.0, math.pi, tol=1e-12)


# --- shared -----------------------------------------------------------------


def wavefunction(state: BoundState, z):
    if state.kind == "scarf":
        return state.normalization * _scarf_raw(state.n, state.params, state._poly, z)
    return state.normalization * _rm_raw(state.n, state.params, state._poly, z)


def potential(state: BoundState, z):
    if state.kind == "scarf":
        return scarf_potential(z, state.params)
    return rosen_morse_potential(z, state.params)


def default_grid(state: BoundState, points=801):
    if state.kind == "scarf":
        return np.linspace(-10.0, 10.0, points)
    return np.linspace(0.01, math.pi - 0.01, points)


def rayleigh_energy(state: BoundState, grid=None, h=1e-3, min_points=16):
    """Mean and standard deviation of (-psi'' + V psi)/psi over ``grid``.

    Points with |psi| < 1e-8 max|psi| (nodes and tails) are excluded.
    """
    z = default_grid(state) if grid is None else np.asarray(grid, dtype=float)
    psi = wavefunction(state, z)
    keep = np.abs(psi) >= 1e-8 * np.abs(psi).max()
    if state.kind == "rosenmorse":
        keep &= (z - 2 * h > 0) & (z + 2 * h < math.pi)
    if keep.sum() < min_points:
        raise ValueError(f"only {int(keep.sum())} usable grid points")
    z = z[keep]
    d2 = second_derivative_5pt(lambda t: wavefunction(state, t), z, h)
    q = (-d2 + potential(state, z) * psi[keep]) / psi[keep]
    return float(q.mean()), float(q.std())


def schrodinger_residual(state: BoundState, grid=None, h=1e-3):
    """Relative residual ||-psi'' + (V - E) psi|| / ||psi|| on ``grid``."""
    z = default_grid(state) if grid is None else np.asarray(grid, dtype=float)
    psi = wavefunction(state, z)
    d2 = second_derivative_5pt(lambda t: wavefunction(state, t), z, h)
    r = -d2 + (potential(state, z) - state.energy) * psi
    return float(np.linalg.norm(r) / np.linalg.norm(psi))


def count_nodes(state: BoundState, grid=None):
    """Sign changes of psi on the grid, ignoring values below 1e-8 max|psi|."""
    z = default_grid(state, 4001) if grid is None else np.asarray(grid, dtype=float)
    psi = wavefunction(state, z)
    psi = psi[np.abs(psi) >= 1e-8 * np.abs(psi).max()]
    return int(np.count_nonzero(np.diff(np.sign(psi)) != 0))


# --- associated Legendre ----------------------------------------------------


def assoc_legendre_via_romanovski(l: int, m: int, theta):
    """(1+cot^2 theta)^(-l/2) R_{m+l}^(0, 1/2-l)(-cot theta), proportional to P_l^m(cos theta).

    R_{m+l}^(0, 1/2-l) has actual degree l-m, so the value equals
    sin^m(theta) times a polynomial in cos(theta).
    """
    if not 0 <= m <= l:
        raise ValueError("need 0 <= m <= l")
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0.0) or np.any(theta >= np.pi):
        raise DomainError("theta must lie in (0, pi)")
    poly = build_rodrigues(m + l, FamilyParams(0, Fraction(1, 2) - l)).poly
    # sin^l R(-cos/sin) = sin^(l-d) * sum a_k (-cos)^k sin^(d-k)
    d = poly.degree
    s = np.sin(theta)
    return s ** (l - d) * evaluate_homogeneous(poly, -np.cos(theta), s)


def legendre_cross_orthogonality(l: int, lp: int, m: int) -> IntegralResult:
    """Integral over z of (1+sinh^2 z)^(-(l+l')/2) R_n R_n' sech^2 z with n = l-m, n' = l'-m."""
    if l == lp:
        raise ValueError("l and l' must differ")
    if not 0 <= m <= min(l, lp):
        raise ValueError("need 0 <= m <= min(l, l')")
    rn = build_rodrigues(l - m, FamilyParams(0, Fraction(1, 2) - l)).poly
    rnp = build_rodrigues(lp - m, FamilyParams(0, Fraction(1, 2) - lp)).poly
    half = Fraction(l + lp, 2)

    def f(z):
        # R(sinh z)/cosh^deg in homogenized form; leftover cosh power stays <= 0
        t, s = np.tanh(z), np.exp(-_logcosh(z))
        lead = rn.degree + rnp.degree - 2 * float(half) - 2
        return (evaluate_homogeneous(rn, t, s) * evaluate_homogeneous(rnp, t, s)
                * np.exp(lead * _logcosh(z)))
    # in x = sinh z the integrand decays like |x|^(deg sum - (l+l') - 3)
    exponent = rn.degree + rnp.degree - (l + lp) - 3
    if not exponent < -1:
        return IntegralResult.divergent(exponent)
    res = integrate_real_line(f, tol=1e-12)
    return IntegralResult(res.value, res.error_estimate, res.verdict, res.flags, exponent)


def legendre_cross_norm(l: int, m: int) -> float:
    """Diagonal companion of ``legendre_cross_orthogonality`` for relative tolerances."""
    rn = build_rodrigues(l - m, FamilyParams(0, Fraction(1, 2) - l)).poly

    def f(z):
        t, s = np.tanh(z), np.exp(-_logcosh(z))
        return evaluate_homogeneous(rn, t, s) ** 2 * np.exp((2 * rn.degree - 2 * l - 2) * _logcosh(z))
    return integrate_real_line(f, tol=1e-12).value
