"""Dense univariate polynomials over exact rationals or IEEE doubles.

Coefficients are stored lowest power first, so ``coeffs[k]`` multiplies
``x**k``.  The zero polynomial is the empty tuple.  Rational polynomials hold
:class:`fractions.Fraction` coefficients and are the source of truth; double
polynomials exist for the numerical hot paths (quadrature, wavefunctions).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

RATIONAL = "rational"
DOUBLE = "double"


def parse_scalar(text):
    """Parse ``"num/den"`` or an integer string exactly, decimals as float.

    >>> parse_scalar("-3/4")
    Fraction(-3, 4)
    >>> parse_scalar("0.5")
    0.5
    """
    text = str(text).strip()
    if "/" in text or _is_integer_literal(text):
        return Fraction(text)
    return float(text)


def _is_integer_literal(text):
    body = text[1:] if text[:1] in "+-" else text
    return body.isdigit()


def format_scalar(value):
    """Serialize a scalar: rationals as ``"num/den"``, doubles with 17 digits."""
    if isinstance(value, Rational):
        return str(Fraction(value))
    return format(float(value), ".17g")


def backend_of(*values):
    """``RATIONAL`` when every value is an exact rational, else ``DOUBLE``."""
    if all(isinstance(v, Rational) for v in values):
        return RATIONAL
    return DOUBLE


def _coerce(value, backend):
    if backend == RATIONAL:
        if not isinstance(value, Rational):
            raise TypeError(f"rational backend cannot hold {value!r}")
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class DensePolynomial:
    coeffs: tuple = ()
    backend: str = RATIONAL

    def __post_init__(self):
        if self.backend not in (RATIONAL, DOUBLE):
            raise ValueError(f"unknown backend {self.backend!r}")
        cs = [_coerce(c, self.backend) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c, backend=RATIONAL):
        return cls((c,), backend)

    @classmethod
    def monomial(cls, k, c=1, backend=RATIONAL):
        return cls((0,) * k + (c,), backend)

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else _coerce(0, self.backend)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _coerce(0, self.backend)

    def __call__(self, x):
        return evaluate(self, x)

    # arithmetic -------------------------------------------------------

    def _join(self, other):
        if isinstance(other, DensePolynomial):
            if other.backend != self.backend:
                raise ValueError("mixed backends; convert with to_double() first")
            return other
        return DensePolynomial.constant(other, self.backend)

    def __add__(self, other):
        other = self._join(other)
        n = max(len(self), len(other))
        return DensePolynomial(tuple(self[k] + other[k] for k in range(n)), self.backend)

    __radd__ = __add__

    def __neg__(self):
        return DensePolynomial(tuple(-c for c in self.coeffs), self.backend)

    def __sub__(self, other):
        return self + (-self._join(other))

    def __rsub__(self, other):
        return self._join(other) - self

    def __mul__(self, other):
        if isinstance(other, DensePolynomial):
            return multiply(self, other)
        c = _coerce(other, self.backend)
        return DensePolynomial(tuple(c * a for a in self.coeffs), self.backend)

    __rmul__ = __mul__

    def derivative(self):
        return differentiate(self)

    # conversion -------------------------------------------------------

    def to_double(self):
        if self.backend == DOUBLE:
            return self
        return DensePolynomial(tuple(float(c) for c in self.coeffs), DOUBLE)

    def to_numpy(self):
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def to_json(self):
        """JSON array of coefficient strings, lowest power first."""
        return json.dumps([format_scalar(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text):
        items = [parse_scalar(s) for s in json.loads(text)]
        return cls(tuple(items), backend_of(*items))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{format_scalar(c)}" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return " + ".join(terms)


def evaluate(p: DensePolynomial, x):
    """Horner evaluation; exact when both ``p`` and ``x`` are rational.

    ``x`` may be a numpy array, in which case the coefficients are used as
    doubles and the result broadcasts like ``x``.
    """
    if isinstance(x, np.ndarray) or not isinstance(x, Rational) or p.backend == DOUBLE:
        coeffs = [float(c) for c in p.coeffs]
        if isinstance(x, np.ndarray):
            acc = np.zeros_like(x, dtype=np.result_type(x, float))
        else:
            acc = 0.0
    else:
        coeffs = p.coeffs
        x = Fraction(x)
        acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def evaluate_homogeneous(p: DensePolynomial, num, den, degree=None):
    """Return ``sum_k c_k num**k den**(degree-k)``, i.e. ``den**degree * p(num/den)``.

    Used to evaluate ``p(tan u) cos(u)**d`` and similar products without
    forming the (possibly overflowing) polynomial value first.
    """
    degree = p.degree if degree is None else degree
    if degree < p.degree:
        raise ValueError("homogenizing degree below polynomial degree")
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    shape = np.broadcast(num, den).shape
    if p.is_zero():
        return np.zeros(shape)
    cs = [float(c) for c in p.coeffs]
    d = p.degree
    acc = np.full(shape, cs[d])
    for k in range(d - 1, -1, -1):
        acc = acc * num + cs[k] * den ** (d - k)
    return acc * den ** (degree - d)


def differentiate(p: DensePolynomial) -> DensePolynomial:
    return DensePolynomial(tuple(k * c for k, c in enumerate(p.coeffs) if k > 0), p.backend)


def multiply(p: DensePolynomial, q: DensePolynomial) -> DensePolynomial:
    if p.backend != q.backend:
        raise ValueError("mixed backends; convert with to_double() first")
    if p.is_zero() or q.is_zero():
        return DensePolynomial((), p.backend)
    zero = _coerce(0, p.backend)
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return DensePolynomial(tuple(out), p.backend)


X = DensePolynomial((0, 1))
ONE = DensePolynomial((1,))
S = DensePolynomial((1, 0, 1))
