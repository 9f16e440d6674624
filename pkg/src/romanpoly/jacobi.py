"""Complex-parameter Jacobi polynomials and their link to the Romanovski family.

With a = (beta - 1) + i alpha/2 and b = conj(a), the polynomial
i^n P_n^(a, b)(i x) is real and proportional to R_n^(alpha, beta)(x).  The
map comes from substituting z = i x in the Jacobi equation and matching
coefficients against the Romanovski equation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .polycore import DOUBLE, DensePolynomial
from .romanovski import FamilyParams, build_rodrigues, eigenvalue

PARITY_TOL = 1e-12
PROPORTIONALITY_TOL = 1e-10


class ParityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ComplexPolynomial:
    """Complex coefficients, lowest power first, trailing zeros stripped."""
    coeffs: tuple = ()

    def __post_init__(self):
        cs = [complex(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other):
        n = max(len(self), len(other))
        return ComplexPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other):
        n = max(len(self), len(other))
        return ComplexPolynomial(tuple(self[k] - other[k] for k in range(n)))

    def __mul__(self, other):
        if isinstance(other, ComplexPolynomial):
            if not self.coeffs or not other.coeffs:
                return ComplexPolynomial()
            out = [0j] * (len(self) + len(other) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return ComplexPolynomial(tuple(out))
        return ComplexPolynomial(tuple(complex(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def derivative(self):
        return ComplexPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def max_abs(self):
        return max((abs(c) for c in self.coeffs), default=0.0)


def _poly_pow(base, k):
    out = ComplexPolynomial((1,))
    for _ in range(k):
        out = out * base
    return out


def gen_binomial(top, k):
    """C(top, k) for complex ``top`` as a falling product over k!."""
    acc = 1 + 0j
    for j in range(k):
        acc *= (top - j)
    return acc / math.factorial(k)


def complex_jacobi(n: int, a, b) -> ComplexPolynomial:
    """P_n^(a, b)(z) = 2^-n sum_k C(n+a, n-k) C(n+b, k) (z-1)^k (z+1)^(n-k)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = complex(a), complex(b)
    zm = ComplexPolynomial((-1, 1))
    zp = ComplexPolynomial((1, 1))
    total = ComplexPolynomial()
    for k in range(n + 1):
        c = gen_binomial(n + a, n - k) * gen_binomial(n + b, k)
        total = total + c * (_poly_pow(zm, k) * _poly_pow(zp, n - k))
    return total * (0.5 ** n)


def jacobi_ode_residual(n: int, a, b, p: ComplexPolynomial | None = None) -> ComplexPolynomial:
    """(1-z^2) y'' + (b - a - (a+b+2) z) y' + n(n+a+b+1) y for y = P_n^(a,b)."""
    a, b = complex(a), complex(b)
    p = complex_jacobi(n, a, b) if p is None else p
    d1, d2 = p.derivative(), p.derivative().derivative()
    return (ComplexPolynomial((1, 0, -1)) * d2
            + ComplexPolynomial((b - a, -(a + b + 2))) * d1
            + n * (n + a + b + 1) * p)


def complexify(p) -> ComplexPolynomial:
    """Substitute x -> i x: coefficient k is multiplied by i^k."""
    coeffs = p.coeffs
    return ComplexPolynomial(tuple(complex(c) * (1j ** (k % 4)) for k, c in enumerate(coeffs)))


def jacobi_parameters(params: FamilyParams):
    """ODE-matched (a, b) with a + b + 2 = 2 beta and i (b - a) = alpha."""
    a = complex(float(params.beta) - 1.0, 0.5 * float(params.alpha))
    return a, a.conjugate()


def conjugation_parity(n: int, a, x: float, tol=PARITY_TOL):
    """Value v = P_n^(a, conj a)(i x) and whether conj(v) = (-1)^n v."""
    a = complex(a)
    v = complex_jacobi(n, a, a.conjugate())(1j * x)
    sign = -1 if n % 2 else 1
    ok = abs(v.conjugate() - sign * v) <= tol * max(1.0, abs(v))
    return v, bool(ok)


def _real_part_checked(cp: ComplexPolynomial, tol):
    scale = max(1.0, cp.max_abs())
    worst = max((abs(c.imag) for c in cp.coeffs), default=0.0)
    if worst > tol * scale:
        raise ParityError(f"imaginary residue {worst:.3e} exceeds tolerance")
    return DensePolynomial(tuple(c.real for c in cp.coeffs), DOUBLE)


def jacobi_as_real(n: int, params: FamilyParams, tol=PARITY_TOL) -> DensePolynomial:
    """i^n P_n^(a, conj a)(i x) as a real double polynomial in x."""
    a, b = jacobi_parameters(params)
    cp = complexify(complex_jacobi(n, a, b)) * (1j ** (n % 4))
    return _real_part_checked(cp, tol)


def romanovski_via_jacobi(n: int, params: FamilyParams, tol=PARITY_TOL):
    """Return (i^n P_n^(a, conj a)(i x), c_n) with result = c_n R_n^(alpha, beta)."""
    ref = build_rodrigues(n, params)
    if ref.degree_deficient or ref.poly.is_zero():
        raise ValueError("degree-deficient family has no Jacobi counterpart here")
    poly = jacobi_as_real(n, params, tol)
    if poly.degree != n or poly.leading == 0:
        raise ZeroDivisionError("Jacobi image has vanishing leading coefficient")
    r = ref.poly.to_double()
    c = poly.leading / r.leading
    mismatch = max(abs(poly[k] - c * r[k]) for k in range(n + 1))
    norm = max(abs(rc) for rc in r.coeffs)
    if mismatch > PROPORTIONALITY_TOL * norm * max(1.0, abs(c)):
        raise ArithmeticError(f"proportionality mismatch {mismatch:.3e}")
    return poly, float(c)


def jacobi_eigen_matches(n: int, params: FamilyParams) -> bool:
    """Check -n(a + b + n + 1) equals the Romanovski eigenvalue exactly."""
    # a + b = 2 beta - 2 holds exactly for the conjugate pair
    return -n * (2 * params.beta - 2 + n + 1) == eigenvalue(n, params.beta)


def romanovski_residual(g: ComplexPolynomial, n: int, params_alpha, params_beta) -> ComplexPolynomial:
    """(1+x^2) g'' + (2 beta x + alpha) g' + lambda_n g for complex coefficients."""
    d1 = g.derivative()
    d2 = d1.derivative()
    lam = -n * (2 * params_beta + n - 1)
    return (ComplexPolynomial((1, 0, 1)) * d2
            + ComplexPolynomial((params_alpha, 2 * params_beta)) * d1
            + complex(lam) * g)


def real_parameter_complexification_residual(n: int, a: float, b: float):
    """Best-case Romanovski residual of complexify(P_n^(a,b)) with real a != b.

    The substitution z = i x leaves a first-derivative term i(b - a) g' that
    is imaginary, so no real (alpha, beta) can absorb it.  The residual is
    evaluated at beta = (a+b+2)/2 and the real alpha that best matches, 0.
    """
    g = complexify(complex_jacobi(n, a, b))
    return romanovski_residual(g, n, 0.0, 0.5 * (a + b + 2))

