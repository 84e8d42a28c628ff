"""Planar homogeneous potentials with exact coefficient arithmetic.

Four kinds are supported:

* polynomial      V = sum a_ij q1^i q2^j, all i+j = k
* rational        V = P/Q with P, Q homogeneous, deg P - deg Q = k
* radial          V = a (q1^2+q2^2)^(k/2)
* polar           V = r^k U(theta), U a trigonometric polynomial

Coefficients are Gaussian rationals; rigid transforms and Darboux
normalization can push a potential onto a floating-point (complex)
coefficient path, tracked by the `exact` flag.  Taylor jets at a point
are produced by truncated series arithmetic (see series.py), never by
repeated symbolic differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .scalars import GaussianRational, scalar_is_zero, to_complex
from .series import Jet2, TaylorJet

POLYNOMIAL = "polynomial"
RATIONAL = "rational"
RADIAL = "radial"
POLAR = "polar"


class PotentialError(ValueError):
    """Domain error for potential construction or evaluation."""


class SingularPointError(PotentialError):
    """The potential is not defined (or not smooth) at the requested point."""


def _coerce_coeff(v, exact: bool):
    if exact:
        return v if isinstance(v, GaussianRational) else GaussianRational(v)
    return to_complex(v)


class HomoPoly:
    """Homogeneous bivariate polynomial: exponent pairs -> coefficients.

    Every stored pair (i, j) satisfies i + j = degree and carries a
    nonzero coefficient.
    """

    __slots__ = ("degree", "terms", "exact")

    def __init__(self, degree: int, terms: dict, exact: bool = True):
        self.degree = int(degree)
        self.exact = exact
        clean = {}
        for (i, j), v in terms.items():
            if i < 0 or j < 0 or i + j != self.degree:
                raise PotentialError(
                    f"exponent pair ({i},{j}) does not match degree {self.degree}")
            v = _coerce_coeff(v, exact)
            if not scalar_is_zero(v):
                clean[(i, j)] = v
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, HomoPoly) and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items()) if self.exact else None))

    def evaluate(self, x, y):
        exact_pt = all(isinstance(t, (int, Fraction, GaussianRational)) for t in (x, y))
        if self.exact and exact_pt:
            x = GaussianRational.coerce(x)
            y = GaussianRational.coerce(y)
            acc = GaussianRational(0)
            for (i, j), v in self.terms.items():
                acc = acc + v * x**i * y**j
            return acc
        xc, yc = to_complex(x), to_complex(y)
        acc = 0j
        for (i, j), v in self.terms.items():
            acc += to_complex(v) * xc**i * yc**j
        return acc

    def partial(self, axis: int) -> "HomoPoly":
        out = {}
        for (i, j), v in self.terms.items():
            if axis == 0 and i > 0:
                out[(i - 1, j)] = out.get((i - 1, j), _zero(self.exact)) + v * i
            if axis == 1 and j > 0:
                out[(i, j - 1)] = out.get((i, j - 1), _zero(self.exact)) + v * j
        return HomoPoly(max(self.degree - 1, 0), out, self.exact)

    def scale(self, s) -> "HomoPoly":
        if self.exact and isinstance(s, (int, Fraction, GaussianRational)):
            g = GaussianRational.coerce(s) if not isinstance(s, GaussianRational) else s
            return HomoPoly(self.degree, {k: v * g for k, v in self.terms.items()}, True)
        sc = to_complex(s)
        return HomoPoly(self.degree, {k: to_complex(v) * sc for k, v in self.terms.items()}, False)

    def substitute_linear(self, R) -> "HomoPoly":
        """V(R q) for a 2x2 matrix R; stays homogeneous of the same degree."""
        exact = self.exact and all(
            isinstance(e, (int, Fraction, GaussianRational)) for row in R for e in row)
        a, b = R[0]
        c, d = R[1]
        lin1 = {(1, 0): _coerce_coeff(a, exact), (0, 1): _coerce_coeff(b, exact)}
        lin2 = {(1, 0): _coerce_coeff(c, exact), (0, 1): _coerce_coeff(d, exact)}
        out = {}
        for (i, j), v in self.terms.items():
            mono = {(0, 0): _coerce_coeff(1, exact)}
            for _ in range(i):
                mono = _dict_mul(mono, lin1, exact)
            for _ in range(j):
                mono = _dict_mul(mono, lin2, exact)
            vv = _coerce_coeff(v, exact)
            for key, coef in mono.items():
                out[key] = out.get(key, _zero(exact)) + vv * coef
        return HomoPoly(self.degree, out, exact)

    def restrict_line(self) -> "object":
        """p(s) = V(1, s) as a univariate polynomial (exact kinds only)."""
        from .upoly import UPoly
        if not self.exact:
            raise PotentialError("line restriction requires exact coefficients")
        coeffs = [GaussianRational(0)] * (self.degree + 1)
        for (i, j), v in self.terms.items():
            coeffs[j] = coeffs[j] + v
        return UPoly(coeffs)

    def jet(self, c, order: int, exact: bool) -> Jet2:
        jx = Jet2.variable(0, c[0], order, exact)
        jy = Jet2.variable(1, c[1], order, exact)
        acc = Jet2.constant(0, order, exact)
        xpow = {0: Jet2.constant(1, order, exact)}
        ypow = {0: Jet2.constant(1, order, exact)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        for (i, j), v in self.terms.items():
            term = power(xpow, jx, i) * power(ypow, jy, j)
            acc = acc + term.scale(v)
        return acc

    def __repr__(self):
        return f"HomoPoly(degree={self.degree}, terms={len(self.terms)}, exact={self.exact})"


def _zero(exact: bool):
    return GaussianRational(0) if exact else 0j


def _dict_mul(a: dict, b: dict, exact: bool) -> dict:
    out = {}
    for (i1, j1), v1 in a.items():
        for (i2, j2), v2 in b.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, _zero(exact)) + v1 * v2
    return out


# -- harmonic building blocks for the polar kind -----------------------

def harmonic_pair(m: int):
    """(Re (q1+i q2)^m, Im (q1+i q2)^m) as integer-coefficient HomoPolys."""
    re_terms, im_terms = {}, {}
    from math import comb
    for t in range(m + 1):
        coef = comb(m, t)
        r = t % 4  # i^t cycles through 1, i, -1, -i
        tgt = re_terms if r in (0, 2) else im_terms
        sgn = -1 if r in (2, 3) else 1
        key = (m - t, t)
        tgt[key] = tgt.get(key, GaussianRational(0)) + GaussianRational(sgn * coef)
    return HomoPoly(m, re_terms), HomoPoly(m, im_terms)


class TrigPoly:
    """Finite trigonometric polynomial a0 + sum a_m cos(m t) + b_m sin(m t).

    Coefficients are Gaussian rationals; the polar analysis pipeline
    additionally requires them to be real (checked by callers).
    """

    __slots__ = ("const", "cos", "sin")

    def __init__(self, const=0, cos=None, sin=None):
        self.const = GaussianRational.coerce(const) if not isinstance(const, GaussianRational) else const
        self.cos = {int(m): GaussianRational.coerce(v) if not isinstance(v, GaussianRational) else v
                    for m, v in (cos or {}).items() if not scalar_is_zero(GaussianRational.coerce(v) if not isinstance(v, GaussianRational) else v)}
        self.sin = {int(m): GaussianRational.coerce(v) if not isinstance(v, GaussianRational) else v
                    for m, v in (sin or {}).items() if not scalar_is_zero(GaussianRational.coerce(v) if not isinstance(v, GaussianRational) else v)}
        if any(m <= 0 for m in self.cos) or any(m <= 0 for m in self.sin):
            raise PotentialError("trig frequencies must be positive integers")

    def is_constant(self) -> bool:
        return not self.cos and not self.sin

    def is_real(self) -> bool:
        return (self.const.is_real() and all(v.is_real() for v in self.cos.values())
                and all(v.is_real() for v in self.sin.values()))

    def max_frequency(self) -> int:
        return max([0] + list(self.cos) + list(self.sin))

    def __eq__(self, other):
        return (isinstance(other, TrigPoly) and self.const == other.const
                and self.cos == other.cos and self.sin == other.sin)

    def evaluate(self, theta: float) -> float:
        import math
        acc = complex(self.const)
        for m, v in self.cos.items():
            acc += complex(v) * math.cos(m * theta)
        for m, v in self.sin.items():
            acc += complex(v) * math.sin(m * theta)
        return acc.real if abs(acc.imag) < 1e-300 else acc

    def evaluate_quarter(self, quarter: int):
        """Exact value at theta = quarter * pi/2 (quarter integer)."""
        q = quarter % 4
        acc = self.const
        cos_tab = [1, 0, -1, 0]
        sin_tab = [0, 1, 0, -1]
        for m, v in self.cos.items():
            acc = acc + v * cos_tab[(m * q) % 4]
        for m, v in self.sin.items():
            acc = acc + v * sin_tab[(m * q) % 4]
        return acc

    def derivative(self) -> "TrigPoly":
        # d/dt cos(mt) = -m sin(mt);  d/dt sin(mt) = m cos(mt)
        return TrigPoly(0,
                        cos={m: v * m for m, v in self.sin.items()},
                        sin={m: -(v * m) for m, v in self.cos.items()})

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly(other)
        cos = dict(self.cos)
        for m, v in other.cos.items():
            cos[m] = cos.get(m, GaussianRational(0)) + v
        sin = dict(self.sin)
        for m, v in other.sin.items():
            sin[m] = sin.get(m, GaussianRational(0)) + v
        return TrigPoly(self.const + other.const, cos, sin)

    def __neg__(self):
        return TrigPoly(-self.const, {m: -v for m, v in self.cos.items()},
                        {m: -v for m, v in self.sin.items()})

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly(other)
        return self + (-other)

    def scale(self, s) -> "TrigPoly":
        g = s if isinstance(s, GaussianRational) else GaussianRational.coerce(s)
        return TrigPoly(self.const * g, {m: v * g for m, v in self.cos.items()},
                        {m: v * g for m, v in self.sin.items()})

    def __mul__(self, other):
        """Product via product-to-sum identities; stays a trig polynomial."""
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        out = TrigPoly(self.const * other.const)
        half = Fraction(1, 2)

        def add_cos(t, m, v):
            if scalar_is_zero(v):
                return t
            if m == 0:
                return t + TrigPoly(v)
            m = abs(m)
            return t + TrigPoly(0, cos={m: v})

        def add_sin(t, m, v):
            if scalar_is_zero(v) or m == 0:
                return t
            if m < 0:
                m, v = -m, -v
            return t + TrigPoly(0, sin={m: v})

        out = out + TrigPoly(0, {m: v * self.const for m, v in other.cos.items()},
                             {m: v * self.const for m, v in other.sin.items()})
        out = out + TrigPoly(0, {m: v * other.const for m, v in self.cos.items()},
                             {m: v * other.const for m, v in self.sin.items()})
        for m1, a1 in self.cos.items():
            for m2, a2 in other.cos.items():
                v = a1 * a2 * half
                out = add_cos(out, m1 - m2, v)
                out = add_cos(out, m1 + m2, v)
            for m2, b2 in other.sin.items():
                v = a1 * b2 * half
                out = add_sin(out, m1 + m2, v)
                out = add_sin(out, m2 - m1, v)
        for m1, b1 in self.sin.items():
            for m2, a2 in other.cos.items():
                v = b1 * a2 * half
                out = add_sin(out, m1 + m2, v)
                out = add_sin(out, m1 - m2, v)
            for m2, b2 in other.sin.items():
                v = b1 * b2 * half
                out = add_cos(out, m1 - m2, v)
                out = add_cos(out, m1 + m2, -v)
        return out

    def shift(self, cos_d: GaussianRational, sin_d: GaussianRational) -> "TrigPoly":
        """U(theta + d) given cos d and sin d (exact complex rotation allowed)."""
        cm, sm = {}, {}  # cos(m d), sin(m d) via the angle-addition recurrence
        cm[0], sm[0] = GaussianRational(1), GaussianRational(0)
        M = self.max_frequency()
        for m in range(1, M + 1):
            cm[m] = cm[m - 1] * cos_d - sm[m - 1] * sin_d
            sm[m] = sm[m - 1] * cos_d + cm[m - 1] * sin_d
        cos, sin = {}, {}
        for m, a in self.cos.items():
            # cos(m(theta+d)) = cos cos - sin sin
            cos[m] = cos.get(m, GaussianRational(0)) + a * cm[m]
            sin[m] = sin.get(m, GaussianRational(0)) - a * sm[m]
        for m, b in self.sin.items():
            sin[m] = sin.get(m, GaussianRational(0)) + b * cm[m]
            cos[m] = cos.get(m, GaussianRational(0)) + b * sm[m]
        return TrigPoly(self.const, cos, sin)

    def flip(self) -> "TrigPoly":
        """U(-theta)."""
        return TrigPoly(self.const, dict(self.cos), {m: -v for m, v in self.sin.items()})

    def __repr__(self):
        return f"TrigPoly(const={self.const}, cos={len(self.cos)}, sin={len(self.sin)})"


@dataclass(frozen=True)
class Potential:
    """A planar homogeneous potential of integer degree."""

    kind: str
    degree: int
    poly: Optional[HomoPoly] = None          # polynomial kind
    num: Optional[HomoPoly] = None           # rational kind
    den: Optional[HomoPoly] = None
    a: Optional[GaussianRational] = None     # radial kind
    U: Optional[TrigPoly] = None             # polar kind

    # -- constructors ----------------------------------------------------

    @staticmethod
    def polynomial(poly: HomoPoly) -> "Potential":
        if poly.is_zero():
            raise PotentialError("zero polynomial is not a potential")
        return Potential(kind=POLYNOMIAL, degree=poly.degree, poly=poly)

    @staticmethod
    def rational(num: HomoPoly, den: HomoPoly) -> "Potential":
        if den.is_zero():
            raise PotentialError("zero denominator")
        if num.is_zero():
            raise PotentialError("zero potential")
        return Potential(kind=RATIONAL, degree=num.degree - den.degree, num=num, den=den)

    @staticmethod
    def radial(a, k: int) -> "Potential":
        a = a if isinstance(a, GaussianRational) else GaussianRational.coerce(a)
        if a.is_zero():
            raise PotentialError("zero radial coefficient")
        return Potential(kind=RADIAL, degree=int(k), a=a)

    @staticmethod
    def polar(U: TrigPoly, k: int) -> "Potential":
        return Potential(kind=POLAR, degree=int(k), U=U)

    @property
    def exact(self) -> bool:
        if self.kind == POLYNOMIAL:
            return self.poly.exact
        if self.kind == RATIONAL:
            return self.num.exact and self.den.exact
        return True

    # -- evaluation -------------------------------------------------------

    def __call__(self, x, y):
        j = jet_at(self, (x, y), 0)
        return j.value

    def gradient(self, point):
        j = jet_at(self, point, 0)
        return j.gradient()

    def hessian(self, point):
        j = jet_at(self, point, 1)
        return j.hessian()

    def text(self) -> str:
        from .parse import print_potential
        return print_potential(self)

    def to_json(self) -> dict:
        return potential_to_json(self)

    def __repr__(self):
        return f"Potential({self.kind}, k={self.degree})"


# -- jets --------------------------------------------------------------


def jet_at(V: Potential, c, L: int) -> TaylorJet:
    """Exact (when possible) Taylor jet of V at c up to derivative order L+1."""
    order = L + 1
    exact_pt = all(isinstance(t, (int, Fraction, GaussianRational)) for t in c)
    exact = V.exact and exact_pt
    c = tuple(GaussianRational.coerce(t) if exact else to_complex(t) for t in c)

    if V.kind == POLYNOMIAL:
        series = V.poly.jet(c, order, exact)
    elif V.kind == RATIONAL:
        den = V.den.jet(c, order, exact)
        if scalar_is_zero(den.const_term, 1e-14):
            raise SingularPointError(f"denominator vanishes at {c}")
        series = V.num.jet(c, order, exact) / den
    elif V.kind == RADIAL:
        series = _radial_series(c, order, exact, Fraction(V.degree, 2)).scale(V.a)
    elif V.kind == POLAR:
        series = _polar_series(V.U, V.degree, c, order, exact)
    else:
        raise PotentialError(f"unknown potential kind {V.kind}")
    return TaylorJet.from_series(series, c, L, V.degree)


def _radial_series(c, order: int, exact: bool, half_power: Fraction) -> Jet2:
    jx = Jet2.variable(0, c[0], order, exact)
    jy = Jet2.variable(1, c[1], order, exact)
    r2 = jx * jx + jy * jy
    if scalar_is_zero(r2.const_term, 1e-14):
        raise SingularPointError("radial potential jet at an isotropic point (q1^2+q2^2 = 0)")
    return r2.rational_power(half_power)


def _polar_series(U: TrigPoly, k: int, c, order: int, exact: bool) -> Jet2:
    acc = None
    if not scalar_is_zero(U.const):
        acc = _radial_series(c, order, exact, Fraction(k, 2)).scale(U.const)
    for m in sorted(set(U.cos) | set(U.sin)):
        re_m, im_m = harmonic_pair(m)
        part = None
        av = U.cos.get(m)
        bv = U.sin.get(m)
        if av is not None and not scalar_is_zero(av):
            part = re_m.jet(c, order, exact).scale(av)
        if bv is not None and not scalar_is_zero(bv):
            t = im_m.jet(c, order, exact).scale(bv)
            part = t if part is None else part + t
        if part is None:
            continue
        radial = _radial_series(c, order, exact, Fraction(k - m, 2))
        term = part * radial
        acc = term if acc is None else acc + term
    if acc is None:
        raise PotentialError("polar potential with identically zero angular part")
    return acc


# -- rigid transforms ---------------------------------------------------


def orthogonality_defect(R) -> float:
    """max |(R^T R - I)_{ab}| as a float, exact zeros included."""
    entries = [[to_complex(e) for e in row] for row in R]
    (a, b), (c, d) = entries
    g11 = a * a + c * c - 1
    g12 = a * b + c * d
    g22 = b * b + d * d - 1
    return max(abs(g11), abs(g12), abs(g22))


def transform(V: Potential, R, scale=1) -> Potential:
    """The potential q -> scale * V(R q) for complex-orthogonal R."""
    defect = orthogonality_defect(R)
    if defect > 1e-9:
        raise PotentialError(f"matrix is not complex-orthogonal (defect {defect:.3e})")
    if isinstance(scale, (GaussianRational, int, Fraction)):
        scale_g = GaussianRational.coerce(scale) if not isinstance(scale, GaussianRational) else scale
        if scale_g.is_zero():
            raise PotentialError("zero scale")
    else:
        scale_g = complex(scale)
        if scale_g == 0:
            raise PotentialError("zero scale")

    if V.kind == POLYNOMIAL:
        return Potential.polynomial(V.poly.substitute_linear(R).scale(scale_g))
    if V.kind == RATIONAL:
        return Potential.rational(V.num.substitute_linear(R).scale(scale_g),
                                  V.den.substitute_linear(R))
    if V.kind == RADIAL:
        if not isinstance(scale_g, GaussianRational):
            raise PotentialError("radial kind keeps exact coefficients; scale must be exact")
        return Potential.radial(V.a * scale_g, V.degree)
    if V.kind == POLAR:
        return _transform_polar(V, R, scale_g)
    raise PotentialError(f"unknown potential kind {V.kind}")


def _transform_polar(V: Potential, R, scale_g) -> Potential:
    entries = []
    for row in R:
        for e in row:
            if not isinstance(e, (int, Fraction, GaussianRational)):
                raise PotentialError("polar transforms need exact rotation entries")
            entries.append(GaussianRational.coerce(e) if not isinstance(e, GaussianRational) else e)
    a, b, c, d = entries
    det = a * d - b * c
    U = V.U
    if det == GaussianRational(1):
        # rotation by delta with cos = a, sin = c: angle shifts by +delta
        U2 = U.shift(a, c)
    elif det == GaussianRational(-1):
        U2 = U.flip().shift(a, c)
    else:
        raise PotentialError("orthogonal matrix with determinant != +-1")
    if not isinstance(scale_g, GaussianRational):
        raise PotentialError("polar kind keeps exact coefficients; scale must be exact")
    return Potential.polar(U2.scale(scale_g), V.degree)


def rotation_to_axis(c1, c2):
    """(R, gamma) with gamma^2 = c1^2+c2^2 and R^T c = (gamma, 0).

    Works for complex points as long as c is non-isotropic; gamma is the
    exact square root when one exists in Q(i), else the principal complex
    root.
    """
    exact = all(isinstance(t, (int, Fraction, GaussianRational)) for t in (c1, c2))
    if exact:
        c1 = GaussianRational.coerce(c1)
        c2 = GaussianRational.coerce(c2)
        n = c1 * c1 + c2 * c2
        if n.is_zero():
            raise PotentialError("isotropic point: c1^2+c2^2 = 0")
        g = n.sqrt_exact()
        if g is not None:
            return ((c1 / g, -(c2 / g)), (c2 / g, c1 / g)), g
        c1, c2 = complex(c1), complex(c2)
    import cmath
    n = c1 * c1 + c2 * c2
    if abs(n) < 1e-300:
        raise PotentialError("isotropic point: c1^2+c2^2 = 0")
    g = cmath.sqrt(n)
    return ((c1 / g, -c2 / g), (c2 / g, c1 / g)), g


def euler_defect(V: Potential, point):
    """q . grad V - k V; identically zero for every homogeneous potential."""
    j = jet_at(V, point, 0)
    if j.exact:
        p0 = point[0] if isinstance(point[0], GaussianRational) else GaussianRational.coerce(point[0])
        p1 = point[1] if isinstance(point[1], GaussianRational) else GaussianRational.coerce(point[1])
    else:
        p0, p1 = to_complex(point[0]), to_complex(point[1])
    g1, g2 = j.gradient()
    return p0 * g1 + p1 * g2 - j.value * V.degree


# -- JSON serialization --------------------------------------------------


def _gauss_to_json(v):
    if isinstance(v, GaussianRational):
        if v.im == 0:
            return str(v.re)
        return {"re": str(v.re), "im": str(v.im)}
    return {"re_float": complex(v).real, "im_float": complex(v).imag}


def _gauss_from_json(obj):
    if isinstance(obj, str):
        return GaussianRational(Fraction(obj))
    if "re_float" in obj:
        return complex(obj["re_float"], obj["im_float"])
    return GaussianRational(Fraction(obj["re"]), Fraction(obj["im"]))


def _homopoly_to_json(p: HomoPoly) -> dict:
    return {
        "degree": p.degree,
        "terms": {f"{i},{j}": _gauss_to_json(v)
                  for (i, j), v in sorted(p.terms.items(), reverse=True)},
    }


def _homopoly_from_json(obj) -> HomoPoly:
    terms = {}
    exact = True
    for key, v in obj["terms"].items():
        i, j = (int(t) for t in key.split(","))
        val = _gauss_from_json(v)
        if isinstance(val, complex):
            exact = False
        terms[(i, j)] = val
    return HomoPoly(obj["degree"], terms, exact)


def _trig_to_json(U: TrigPoly) -> dict:
    return {
        "const": _gauss_to_json(U.const),
        "cos": {str(m): _gauss_to_json(v) for m, v in sorted(U.cos.items())},
        "sin": {str(m): _gauss_to_json(v) for m, v in sorted(U.sin.items())},
    }


def _trig_from_json(obj) -> TrigPoly:
    return TrigPoly(_gauss_from_json(obj["const"]),
                    {int(m): _gauss_from_json(v) for m, v in obj["cos"].items()},
                    {int(m): _gauss_from_json(v) for m, v in obj["sin"].items()})


def potential_to_json(V: Potential) -> dict:
    out = {"kind": V.kind, "degree": V.degree}
    if V.kind == POLYNOMIAL:
        out["terms"] = _homopoly_to_json(V.poly)["terms"]
    elif V.kind == RATIONAL:
        out["num"] = _homopoly_to_json(V.num)
        out["den"] = _homopoly_to_json(V.den)
    elif V.kind == RADIAL:
        out["a"] = _gauss_to_json(V.a)
    elif V.kind == POLAR:
        out["U"] = _trig_to_json(V.U)
    return out


def potential_from_json(obj: dict) -> Potential:
    kind = obj["kind"]
    k = int(obj["degree"])
    if kind == POLYNOMIAL:
        return Potential.polynomial(_homopoly_from_json({"degree": k, "terms": obj["terms"]}))
    if kind == RATIONAL:
        return Potential.rational(_homopoly_from_json(obj["num"]), _homopoly_from_json(obj["den"]))
    if kind == RADIAL:
        a = _gauss_from_json(obj["a"])
        if isinstance(a, complex):
            raise PotentialError("radial coefficient must be exact")
        return Potential.radial(a, k)
    if kind == POLAR:
        return Potential.polar(_trig_from_json(obj["U"]), k)
    raise PotentialError(f"unknown kind {kind!r}")
