"""Potential kinds, jets against an independent symbolic oracle, rigid
transforms, and the expression grammar."""

import math
import random
from fractions import Fraction

import pytest
import sympy

from homopot.parse import ParseError, parse_potential, print_potential
from homopot.potential import (HomoPoly, Potential, PotentialError,
                               SingularPointError, TrigPoly, euler_defect,
                               jet_at, potential_from_json, potential_to_json,
                               transform)
from homopot.scalars import GaussianRational, gr

from conftest import rand_fraction, rand_homopoly

Q1, Q2 = sympy.symbols("q1 q2")


def to_sympy(V: Potential):
    def poly_expr(p: HomoPoly):
        acc = sympy.Integer(0)
        for (i, j), v in p.terms.items():
            c = sympy.Rational(v.re.numerator, v.re.denominator) \
                + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator)
            acc += c * Q1**i * Q2**j
        return acc

    if V.kind == "polynomial":
        return poly_expr(V.poly)
    if V.kind == "rational":
        return poly_expr(V.num) / poly_expr(V.den)
    if V.kind == "radial":
        a = sympy.Rational(V.a.re.numerator, V.a.re.denominator)
        return a * (Q1**2 + Q2**2) ** sympy.Rational(V.degree, 2)
    raise NotImplementedError


def sympy_partial(expr, a: int, b: int, point):
    d = sympy.diff(expr, Q1, a, Q2, b)
    val = d.subs({Q1: sympy.Rational(point[0]), Q2: sympy.Rational(point[1])})
    return sympy.nsimplify(val)


def as_sympy_scalar(v):
    if isinstance(v, GaussianRational):
        return sympy.Rational(v.re.numerator, v.re.denominator) \
            + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator)
    return v


# -- parsing -----------------------------------------------------------------

def test_parse_examples():
    V = parse_potential("q1^2 + q2^2")
    assert V.kind == "polynomial" and V.degree == 2
    V = parse_potential("q1^3 - 3*q1*q2^2")
    assert V.kind == "polynomial" and V.degree == 3
    with pytest.raises(ParseError, match="non-homogeneous"):
        parse_potential("q1^2 + q2")


def test_parse_radial_and_polar():
    V = parse_potential("r^-3")
    assert V.kind == "radial" and V.degree == -3 and V.a == gr(1)
    V = parse_potential("5*r^-3")
    assert V.kind == "radial" and V.a == gr(5)
    V = parse_potential("r^-3*(1 + 1/10*cos(2*theta))")
    assert V.kind == "polar" and V.U.cos[2] == gr(Fraction(1, 10))


def test_parse_rational_kind():
    V = parse_potential("(q1^4 + q2^4)/(q1*q2)")
    assert V.kind == "rational" and V.degree == 2
    V = parse_potential("q1^4/q1^2")  # monomial content cancels
    assert V.kind == "polynomial" and V.degree == 2


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_potential("q1^2 +")
    with pytest.raises(ParseError, match="position"):
        parse_potential("q1 & q2")
    with pytest.raises(ParseError):
        parse_potential("q1/(q1 - q1)")
    with pytest.raises(ParseError):
        parse_potential("r^-3 + q1")
    with pytest.raises(ParseError):
        parse_potential("cos(theta^2)*r^2")


def test_implicit_multiplication():
    assert parse_potential("3q1^2q2") == parse_potential("3*q1^2*q2")


def test_parse_print_identity(rng):
    for _ in range(25):
        deg = rng.randint(1, 5)
        V = Potential.polynomial(rand_homopoly(rng, deg, gaussian=True))
        assert parse_potential(print_potential(V)) == V
    U = TrigPoly(Fraction(1, 3), cos={1: Fraction(-2, 5), 3: 1}, sin={2: Fraction(7, 2)})
    V = Potential.polar(U, -4)
    assert parse_potential(print_potential(V)) == V
    V = Potential.radial(Fraction(-3, 7), -5)
    assert parse_potential(print_potential(V)) == V
    V = parse_potential("(q1^4 + q2^4)/(q1*q2)")
    assert parse_potential(print_potential(V)) == V


def test_json_roundtrip(rng):
    for text in ("q1^3 - 3*q1*q2^2", "r^-3", "r^-3*(1 + 1/10*cos(2*theta))",
                 "(q1^4 + q2^4)/(q1*q2)", "(1+2*i)*q1^3"):
        V = parse_potential(text)
        assert potential_from_json(potential_to_json(V)) == V


# -- jets ----------------------------------------------------------------------

def test_jet_cubic_axis():
    V = parse_potential("q1^3")
    j = jet_at(V, (1, 0), 2)
    assert j.value == gr(1)
    assert j.d[0][0] == gr(3)
    assert j.d[1][0] == gr(6)
    assert j.d[1][1] == gr(0)
    assert j.d[1][2] == gr(0)


def test_jet_radial_closed_form():
    # derivatives of a (q1^2+q2^2)^{k/2}: grad = a k r^{k-2} q,
    # hess = a k r^{k-2} I + a k(k-2) r^{k-4} q q^T
    V = parse_potential("r^-3")
    j = jet_at(V, (1, 0), 1)
    assert j.d[0][0] == gr(-3)
    assert j.d[1][0] == gr(12)
    assert j.d[1][2] == gr(-3)  # equals k, the multiple-point eigenvalue
    a, k = 2.0, -3
    j2 = jet_at(parse_potential("2*r^-3"), (0.6, 0.8), 1)
    r2 = 1.0
    g_expect = a * k * (0.6, 0.8)[0]
    assert abs(complex(j2.d[0][0]) - g_expect) < 1e-12
    h11 = a * k + a * k * (k - 2) * 0.36
    assert abs(complex(j2.d[1][0]) - h11) < 1e-12


def test_jet_mixed_gradient():
    j = jet_at(parse_potential("q1^2*q2"), (1, 1), 0)
    assert j.d[0][0] == gr(2) and j.d[0][1] == gr(1)


@pytest.mark.parametrize("text,point", [
    ("q1^3 - 3*q1*q2^2", (2, 3)),
    ("(1+2*i)*q1^4 + q2^4 - q1^2*q2^2", (1, 2)),
    ("(q1^5 + q2^5)/(q1*q2)", (2, 1)),
    ("q1^4/(q1^2 + q2^2)", (1, 1)),
])
def test_jets_match_sympy(text, point):
    V = parse_potential(text)
    expr = to_sympy(V)
    j = jet_at(V, point, 3)
    for i in range(4):
        for jj in range(i + 2):
            a, b = i + 1 - jj, jj
            expect = sympy_partial(expr, a, b, point)
            got = as_sympy_scalar(j.d[i][jj])
            assert sympy.simplify(got - expect) == 0, (i, jj)


def test_radial_jet_matches_sympy():
    V = parse_potential("r^-3")
    expr = to_sympy(V)
    j = jet_at(V, (2, 0), 2)   # r^2 = 4, exact square root available
    for i in range(3):
        for jj in range(i + 2):
            a, b = i + 1 - jj, jj
            expect = sympy_partial(expr, a, b, (2, 0))
            got = as_sympy_scalar(j.d[i][jj])
            assert sympy.simplify(got - expect) == 0


def test_polar_jet_matches_finite_differences():
    V = parse_potential("r^-3*(1 + 1/10*cos(2*theta))")

    def direct(x, y):
        r = math.hypot(x, y)
        th = math.atan2(y, x)
        return r**-3 * (1 + math.cos(2 * th) / 10)

    x0, y0 = 1.1, 0.7
    j = jet_at(V, (x0, y0), 1)
    h = 1e-5
    fd1 = (direct(x0 + h, y0) - direct(x0 - h, y0)) / (2 * h)
    fd2 = (direct(x0, y0 + h) - direct(x0, y0 - h)) / (2 * h)
    assert abs(complex(j.d[0][0]) - fd1) < 1e-8
    assert abs(complex(j.d[0][1]) - fd2) < 1e-8
    fd11 = (direct(x0 + h, y0) - 2 * direct(x0, y0) + direct(x0 - h, y0)) / h**2
    assert abs(complex(j.d[1][0]) - fd11) < 1e-5


def test_jet_singularities():
    with pytest.raises(SingularPointError):
        jet_at(parse_potential("q1^3/q2"), (1, 0), 1)
    with pytest.raises(SingularPointError):
        jet_at(parse_potential("r^-3"), (1, gr(0, 1)), 1)  # isotropic point


def test_euler_recurrence_at_normalized_point():
    # at a normalized Darboux point (1,0): d[i][j] = (k - i) d[i-1][j] for j <= i
    for text in ("q1^3 - 1/2*q1*q2^2 + q2^3", "r^-3"):
        V = parse_potential(text)
        k = V.degree
        j = jet_at(V, (1, 0), 4)
        for i in range(1, 5):
            for jj in range(i + 1):
                assert j.d[i][jj] == j.d[i - 1][jj] * (k - i), (text, i, jj)


# -- Euler identity -------------------------------------------------------------

def test_euler_defect_exact_zero(rng):
    for _ in range(100):
        deg = rng.randint(1, 6)
        V = Potential.polynomial(rand_homopoly(rng, deg, gaussian=rng.random() < 0.3))
        q = (rand_fraction(rng), rand_fraction(rng))
        assert euler_defect(V, q) == gr(0)


def test_euler_defect_rational_kind(rng):
    for _ in range(100):
        num = rand_homopoly(rng, rng.randint(2, 5))
        den = rand_homopoly(rng, rng.randint(1, 2))
        V = Potential.rational(num, den)
        q = (rand_fraction(rng, 5, 3) + 11, rand_fraction(rng, 5, 3) + 7)
        try:
            d = euler_defect(V, q)
        except SingularPointError:
            continue
        assert d == gr(0)


def test_euler_defect_float_kinds(rng):
    for _ in range(100):
        V = parse_potential("r^-3*(1 + 1/10*cos(2*theta))")
        x, y = rng.uniform(0.5, 2), rng.uniform(0.5, 2)
        assert abs(complex(euler_defect(V, (x, y)))) < 1e-12
    assert euler_defect(parse_potential("r^-3"), (3, 4)) == gr(0)


def test_euler_example():
    V = parse_potential("q1^3 - 3*q1*q2^2")
    assert euler_defect(V, (2, 1)) == gr(0)
    # on the zero set of V the identity still holds
    assert V(1, gr(Fraction(1, 3)) * 0 + gr(1) * 0 + gr(1)) is not None
    assert euler_defect(V, (gr(1), gr(0, 1))) == gr(0)


# -- transforms -----------------------------------------------------------------

ROT90 = ((0, -1), (1, 0))
PYTH = ((Fraction(3, 5), Fraction(-4, 5)), (Fraction(4, 5), Fraction(3, 5)))


def test_transform_examples():
    assert transform(parse_potential("q1^2"), ROT90, 1).text() == "q2^2"
    assert transform(parse_potential("r^-3"), ROT90, 1).text() == "r^-3"
    assert transform(parse_potential("q1^3"), ((1, 0), (0, 1)),
                     Fraction(1, 8)).text() == "1/8*q1^3"


def test_transform_requires_orthogonal():
    with pytest.raises(PotentialError, match="orthogonal"):
        transform(parse_potential("q1^2"), ((1, 1), (0, 1)), 1)


def test_transform_composition(rng):
    R1, R2 = PYTH, ROT90
    R12 = tuple(tuple(sum(R1[i][t] * R2[t][j] for t in range(2)) for j in range(2))
                for i in range(2))
    for _ in range(10):
        V = Potential.polynomial(rand_homopoly(rng, rng.randint(1, 4)))
        lhs = transform(transform(V, R2, Fraction(2)), R1, Fraction(3, 2))
        rhs = transform(V, R12, Fraction(3))
        q = (rand_fraction(rng), rand_fraction(rng))
        assert lhs(*q) == rhs(*q)


def test_transform_polar_rotation():
    V = parse_potential("r^-3*(1 + 1/10*cos(2*theta))")
    Vt = transform(V, PYTH, 1)
    # pointwise: Vt(q) = V(R q)
    x, y = 0.9, 0.4
    Rx = 3 / 5 * x - 4 / 5 * y
    Ry = 4 / 5 * x + 3 / 5 * y
    assert abs(complex(Vt(x, y)) - complex(V(Rx, Ry))) < 1e-12


def test_degree_zero_denominator_guard():
    with pytest.raises(PotentialError):
        Potential.rational(HomoPoly(2, {(2, 0): gr(1)}), HomoPoly(1, {}))
