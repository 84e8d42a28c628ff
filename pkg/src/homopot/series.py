"""Truncated bivariate power series and Taylor jets.

Jets of a potential at a base point are computed by plain series
arithmetic on the defining expression (add, multiply, invert, raise to a
rational power), which is exact over Gaussian rationals and uniform
across potential kinds.  The derivative table handed to the variational
machinery uses the order/slot convention

    d[i][j] = d^{i+1} V / dq1^{i-j+1} dq2^j  (c),   0 <= j <= i+1 <= L+1,

so row i collects the derivatives of total order i+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .scalars import GaussianRational, rational_nth_root, scalar_is_zero, to_complex


class Jet2:
    """Bivariate Taylor expansion truncated above a total order.

    coeffs maps (a, b) with a+b <= order to the coefficient of x^a y^b.
    The scalar domain is GaussianRational (exact=True) or complex.
    """

    __slots__ = ("order", "coeffs", "exact")

    def __init__(self, order: int, coeffs=None, exact: bool = True):
        self.order = order
        self.coeffs = dict(coeffs or {})
        self.exact = exact
        if not exact:
            self.coeffs = {k: complex(v) if not isinstance(v, complex) else v
                           for k, v in self.coeffs.items()}

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, value, order: int, exact: bool = True):
        value = value if exact else to_complex(value)
        return cls(order, {(0, 0): value} if not scalar_is_zero(value) else {}, exact)

    @classmethod
    def variable(cls, which: int, base_value, order: int, exact: bool = True):
        """The affine jet base_value + x (which=0) or base_value + y (which=1)."""
        mono = (1, 0) if which == 0 else (0, 1)
        one = GaussianRational(1) if exact else 1.0 + 0j
        coeffs = {mono: one}
        bv = base_value if exact else to_complex(base_value)
        if not scalar_is_zero(bv):
            coeffs[(0, 0)] = bv
        return cls(order, coeffs, exact)

    def to_inexact(self) -> "Jet2":
        if not self.exact:
            return self
        return Jet2(self.order, {k: to_complex(v) for k, v in self.coeffs.items()}, exact=False)

    # -- basic accessors -----------------------------------------------

    def coeff(self, a: int, b: int):
        zero = GaussianRational(0) if self.exact else 0j
        return self.coeffs.get((a, b), zero)

    @property
    def const_term(self):
        return self.coeff(0, 0)

    def _store(self, coeffs: dict) -> "Jet2":
        if self.exact:
            coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        else:
            coeffs = {k: v for k, v in coeffs.items() if v != 0}
        return Jet2(self.order, coeffs, self.exact)

    # -- ring operations -----------------------------------------------

    def _align(self, other):
        if isinstance(other, Jet2):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            if self.exact != other.exact:
                return self.to_inexact(), other.to_inexact()
            return self, other
        return self, Jet2.constant(other, self.order, self.exact)

    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            out[k] = out.get(k, GaussianRational(0) if a.exact else 0j) + v
        return a._store(out)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(self.order, {k: -v for k, v in self.coeffs.items()}, self.exact)

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        out = {}
        zero = GaussianRational(0) if a.exact else 0j
        for (i1, j1), v1 in a.coeffs.items():
            for (i2, j2), v2 in b.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j > a.order:
                    continue
                key = (i, j)
                out[key] = out.get(key, zero) + v1 * v2
        return a._store(out)

    __rmul__ = __mul__

    def scale(self, s):
        """Multiply by a scalar; Fractions stay exact on the exact path."""
        if self.exact and isinstance(s, (int, Fraction)):
            return Jet2(self.order, {k: v * GaussianRational(s) for k, v in self.coeffs.items()}, True)
        if self.exact and isinstance(s, GaussianRational):
            return Jet2(self.order, {k: v * s for k, v in self.coeffs.items()}, True)
        me = self.to_inexact()
        sc = to_complex(s) if isinstance(s, (GaussianRational, Fraction, int)) else complex(s)
        return Jet2(me.order, {k: v * sc for k, v in me.coeffs.items()}, False)

    def pow_int(self, n: int) -> "Jet2":
        if n < 0:
            return self.inverse().pow_int(-n)
        out = Jet2.constant(GaussianRational(1) if self.exact else 1.0 + 0j, self.order, self.exact)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Jet2":
        """1/f for f with nonzero constant term, via the geometric series."""
        c0 = self.const_term
        if scalar_is_zero(c0, 1e-300):
            raise ZeroDivisionError("jet has zero constant term")
        u = self.scale(1 / c0 if not self.exact else GaussianRational(1) / c0) - 1
        # 1/f = (1/c0) * sum (-u)^m
        acc = Jet2.constant(GaussianRational(1) if self.exact else 1.0 + 0j, self.order, self.exact)
        term = acc
        for _ in range(self.order):
            term = term * (-u)
            acc = acc + term
        return acc.scale(GaussianRational(1) / c0 if self.exact else 1 / c0)

    def __truediv__(self, other):
        a, b = self._align(other)
        return a * b.inverse()

    def rational_power(self, e: Fraction) -> "Jet2":
        """f^e for rational e via the binomial series around the constant term.

        Exact when e is an integer or the constant term has an exact
        denominator-of-e root in Q(i); otherwise the computation drops to
        complex floating point (principal branch).
        """
        e = Fraction(e)
        if e.denominator == 1:
            return self.pow_int(int(e))
        c0 = self.const_term
        if scalar_is_zero(c0, 1e-300):
            raise ZeroDivisionError("rational power of a jet vanishing at the base point")
        lead = _scalar_rational_power(c0, e, self.exact)
        target = self
        if lead is None:
            target = self.to_inexact()
            lead = _complex_principal_power(to_complex(c0), e)
        u = target.scale(GaussianRational(1) / c0 if target.exact else 1 / to_complex(c0)) - 1
        one = GaussianRational(1) if target.exact else 1.0 + 0j
        acc = Jet2.constant(one, target.order, target.exact)
        term = acc
        binom = Fraction(1)
        for m in range(1, target.order + 1):
            binom *= Fraction(e - m + 1, m)
            term = term * u
            acc = acc + term.scale(binom)
        return acc.scale(lead)

    def __repr__(self):
        return f"Jet2(order={self.order}, terms={len(self.coeffs)}, exact={self.exact})"


def _complex_principal_power(z: complex, e: Fraction) -> complex:
    import cmath
    if z == 0:
        return 0j
    return cmath.exp(float(e) * cmath.log(z))


def _scalar_rational_power(c0, e: Fraction, exact: bool):
    """c0^e in the exact domain, or None when no exact value exists."""
    if not exact:
        return _complex_principal_power(to_complex(c0), e)
    if not isinstance(c0, GaussianRational):
        c0 = GaussianRational(c0)
    root = c0
    # peel the denominator as iterated exact roots (denominators here are tiny)
    den = e.denominator
    if c0.is_real() and c0.re > 0:
        r = rational_nth_root(c0.re, den)
        if r is None:
            return None
        root = GaussianRational(r)
    elif den == 2:
        root = c0.sqrt_exact()
        if root is None:
            return None
    else:
        if c0 == GaussianRational(1):
            root = GaussianRational(1)
        else:
            return None
    return root ** e.numerator


@dataclass
class TaylorJet:
    """Exact (or floating) derivative table of a potential at a point.

    d[i][j] follows the convention in the module docstring; `value` is
    V(c) itself.  `degree` is carried along so consumers can check the
    Euler recurrence d[i][j] = (k - i) d[i-1][j] at normalized points.
    """

    base_point: tuple
    order: int
    degree: int
    value: object
    d: list = field(repr=False)  # d[i][j], 0 <= i <= order, 0 <= j <= i+1
    exact: bool = True

    @classmethod
    def from_series(cls, series: Jet2, base_point, order: int, degree: int):
        """Extract derivatives from a Taylor series: D(a,b) = a! b! * coeff."""
        d = []
        for i in range(order + 1):
            row = []
            for j in range(i + 2):
                a, b = i + 1 - j, j
                row.append(series.coeff(a, b) * (factorial(a) * factorial(b)))
            d.append(row)
        return cls(base_point=tuple(base_point), order=order, degree=degree,
                   value=series.const_term, d=d, exact=series.exact)

    def partial(self, a: int, b: int):
        """Derivative d^{a+b} V / dq1^a dq2^b (c); (0,0) gives V(c)."""
        if a == b == 0:
            return self.value
        i = a + b - 1
        return self.d[i][b]

    def gradient(self):
        return (self.d[0][0], self.d[0][1])

    def hessian(self):
        return ((self.d[1][0], self.d[1][1]),
                (self.d[1][1], self.d[1][2]))

    def d_symbol_values(self) -> dict:
        """Map variational-equation symbol names d_i_j to numeric values."""
        out = {}
        for i in range(self.order + 1):
            for j in range(i + 2):
                out[f"d_{i}_{j}"] = self.d[i][j]
        return out
