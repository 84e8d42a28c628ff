"""Exact scalars: Gaussian rationals and helpers for exact roots.

Everything downstream that claims exactness (degrees, eigenvalues, table
membership, multiplicity tests) is built on these.  A scalar is either a
:class:`GaussianRational` (exact path) or a Python ``complex`` (floating
path); the two support the same arithmetic so generic code can stay
agnostic.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction  # short alias used heavily in table data and tests


def is_integer(x) -> bool:
    """True when x is an exact integer (int or integral Fraction)."""
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    return False


def integer_nth_root(n: int, r: int):
    """Exact r-th root of a nonnegative integer, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    lo, hi = 0, 1 << ((n.bit_length() // r) + 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**r == n else None


def rational_nth_root(x: Fraction, r: int):
    """Exact r-th root of a rational, or None when it is irrational.

    Negative x is allowed for odd r.
    """
    x = Fraction(x)
    sign = 1
    if x < 0:
        if r % 2 == 0:
            return None
        sign, x = -1, -x
    pn = integer_nth_root(x.numerator, r)
    if pn is None:
        return None
    pd = integer_nth_root(x.denominator, r)
    if pd is None:
        return None
    return sign * Fraction(pn, pd)


def rational_sqrt(x: Fraction):
    return rational_nth_root(x, 2)


class GaussianRational:
    """Complex number with exact rational real and imaginary parts.

    Invariants come free from fractions.Fraction: reduced form, positive
    denominator, arbitrary-precision integers, no rounding ever.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors -------------------------------------------------

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_rational_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, complex):
            return complex(self) + other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other)) if not isinstance(other, complex) else complex(self) - other

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, complex):
            return complex(self) * other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, complex):
            return complex(self) / other
        o = GaussianRational.coerce(other)
        n2 = o.re * o.re + o.im * o.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n2,
                                (self.im * o.re - self.re * o.im) / n2)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("GaussianRational powers must be integers")
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    # -- conversions / protocol --------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def sqrt_exact(self):
        """Exact square root when one exists in Q(i), else None.

        sqrt(a+bi) = x+yi needs x^2 = (|z|+a)/2, y^2 = (|z|-a)/2 with |z|
        rational, so everything reduces to rational perfect squares.
        """
        if self.is_zero():
            return GaussianRational(0)
        if self.im == 0:
            r = rational_sqrt(self.re)
            if r is not None:
                return GaussianRational(r)
            r = rational_sqrt(-self.re)
            if r is not None:
                return GaussianRational(0, r)  # principal root of a negative rational
            return None
        mod = rational_sqrt(self.norm2())
        if mod is None:
            return None
        x = rational_sqrt((mod + self.re) / 2)
        y = rational_sqrt((mod - self.re) / 2)
        if x is None or y is None:
            return None
        if self.im < 0:
            y = -y
        return GaussianRational(x, y)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(re=0, im=0) -> GaussianRational:
    """Tiny constructor used all over the tests."""
    return GaussianRational(re, im)


# -- scalar-domain helpers (exact GaussianRational or floating complex) --

def to_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(x)


def scalar_is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, GaussianRational):
        return x.is_zero()
    return abs(x) <= tol


def scalar_is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, Fraction))


def parse_rational(text: str) -> Fraction:
    """Parse 'p', 'p/q' or a decimal literal into an exact Fraction."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))
