"""Darboux point location, the three equivalent multiplicity tests, and
normalization."""

import random
from fractions import Fraction

import pytest

from homopot.darboux import (DarbouxError, classify, direction_polynomial,
                             find_darboux_points, normalize)
from homopot.parse import parse_potential
from homopot.potential import Potential, jet_at, transform
from homopot.scalars import gr, to_complex

from conftest import planted_potential


def test_direction_polynomial_examples():
    W = direction_polynomial(parse_potential("q1^3"))
    assert W.coeffs == [gr(0), gr(3)]          # W(s) = 3s
    W = direction_polynomial(parse_potential("q1^2*q2"))
    assert W.coeffs == [gr(-1), gr(0), gr(2)]  # W(s) = 2s^2 - 1
    with pytest.raises(DarbouxError):
        direction_polynomial(parse_potential("q1^2 + q2^2"))  # k = 2 excluded


def test_find_points_cubic_axis():
    ds = find_darboux_points(parse_potential("q1^3"))
    assert not ds.continuum
    assert len(ds.points) == 1
    p = ds.points[0]
    assert p.c == (gr(1), gr(0))
    assert p.spectrum == (gr(6), gr(0))
    assert not p.multiple and p.exact
    # det(hess - 3I) = -9 != 0 on the axis point
    assert len(ds.degenerate_directions) == 1  # the q2 axis has grad V = 0


def test_find_points_radial():
    ds = find_darboux_points(parse_potential("r^-3"))
    assert ds.continuum
    p = ds.points[0]
    assert p.c == (gr(1), gr(0))
    assert p.spectrum == (gr(12), gr(-3))
    assert p.multiple and p.exact


def test_find_points_q1sq_q2():
    ds = find_darboux_points(parse_potential("q1^2*q2"))
    assert len(ds.points) == 2
    import math
    expected = 3 / math.sqrt(2)
    cs = sorted(abs(to_complex(p.c[0])) for p in ds.points)
    assert all(abs(c - expected) < 1e-9 for c in cs)
    for p in ds.points:
        assert abs(to_complex(p.c[1]) - 1.5) < 1e-9
        assert abs(to_complex(p.spectrum[1]) - (-3)) < 1e-9
        assert not p.multiple
        assert p.residual < 1e-10


def test_classify_requires_darboux_point():
    with pytest.raises(DarbouxError):
        classify(parse_potential("q1^3"), (gr(2), gr(0)))


def test_classify_isotropic():
    # V = (q1 + i q2)(q1 - i q2)^2 has the isotropic Darboux point (3/4, 3i/4)
    V = parse_potential("(q1 + i*q2)*(q1 - i*q2)^2")
    p = classify(V, (gr(Fraction(3, 4)), gr(0, Fraction(3, 4))))
    assert p.isotropic
    assert p.spectrum == (gr(6), gr(6))   # {k(k-1), k(k-1)}
    assert not p.multiple
    assert p.lambda_cap == 6
    ds = find_darboux_points(V)
    assert any(q.isotropic for q in ds.points)


def test_lambda_cap_nonreal_is_minus_inf(rng):
    # complex coefficients can give a non-real normal eigenvalue
    V = parse_potential("q1^3 + (1+2*i)*q1*q2^2")
    p = classify(V, (gr(1), gr(0)))
    assert p.spectrum[1] == gr(2, 4)
    assert p.lambda_cap == float("-inf")


def test_euler_identity_on_hessian(rng):
    # hess V(c) c = k(k-1) c at any Darboux point
    for _ in range(12):
        V = planted_potential(rng, rng.choice([3, 4, 5]), multiple=rng.random() < 0.5)
        jet = jet_at(V, (1, 0), 1)
        (h11, h12), (_, h22) = jet.hessian()
        k = V.degree
        assert h11 == gr(k * (k - 1))
        assert h12 == gr(0)


def test_euler_identity_off_axis_points():
    # same identity at points away from the normalized position
    for text in ("q1^2*q2", "q1^4/q2", "q1^3 - 3*q1*q2^2"):
        V = parse_potential(text)
        k = V.degree
        for p in find_darboux_points(V).points:
            jet = jet_at(V, p.c, 1)
            (h11, h12), (_, h22) = jet.hessian()
            c1, c2 = to_complex(p.c[0]), to_complex(p.c[1])
            lhs1 = to_complex(h11) * c1 + to_complex(h12) * c2
            lhs2 = to_complex(h12) * c1 + to_complex(h22) * c2
            assert abs(lhs1 - k * (k - 1) * c1) < 1e-9, text
            assert abs(lhs2 - k * (k - 1) * c2) < 1e-9, text


def test_three_multiplicity_tests_agree(rng):
    # lambda = k  <=>  det(hess - kI) = 0  <=>  rank(hess - kI) < 2, exactly
    for _ in range(30):
        k = rng.choice([3, 4, 5, 6])
        V = planted_potential(rng, k, multiple=rng.random() < 0.5)
        p = classify(V, (gr(1), gr(0)))
        jet = jet_at(V, (1, 0), 1)
        (h11, h12), (_, h22) = jet.hessian()
        a11, a12, a22 = h11 - gr(k), h12, h22 - gr(k)
        det = a11 * a22 - a12 * a12
        rank = exact_rank_2x2(a11, a12, a12, a22)
        lam_test = p.spectrum[1] == gr(k)
        assert (det.is_zero()) == lam_test == (rank < 2)
        assert p.multiple == lam_test


def exact_rank_2x2(a, b, c, d):
    rows = [(a, b), (c, d)]
    rank = 0
    # gaussian elimination over Q(i)
    if not rows[0][0].is_zero() or not rows[0][1].is_zero():
        rank += 1
        pivot = rows[0]
        if not pivot[0].is_zero():
            f = rows[1][0] / pivot[0]
            red = (rows[1][0] - f * pivot[0], rows[1][1] - f * pivot[1])
        else:
            f = rows[1][1] / pivot[1]
            red = (rows[1][0] - f * pivot[0], rows[1][1] - f * pivot[1])
        if not red[0].is_zero() or not red[1].is_zero():
            rank += 1
    elif not rows[1][0].is_zero() or not rows[1][1].is_zero():
        rank = 1
    return rank


def _pythagorean_rotation(m: int, n: int):
    h = Fraction(m * m + n * n)
    a = Fraction(m * m - n * n) / h
    c = Fraction(2 * m * n) / h
    return ((a, -c), (c, a))


def _complex_rotation(t: Fraction):
    # cos d = (t^2+1)/(2t), sin d = i (t^2-1)/(2t): exact complex orthogonal
    a = gr((t * t + 1) / (2 * t))
    c = gr(0, (t * t - 1) / (2 * t))
    return ((a, -c), (c, a))


def test_rotation_equivariance(rng):
    # Darboux points of V(R q) are R^T images of those of V
    rotations = [_pythagorean_rotation(2, 1), _pythagorean_rotation(3, 2),
                 _pythagorean_rotation(4, 1), _complex_rotation(Fraction(2))]
    for R in rotations:
        Rc = [[to_complex(e) for e in row] for row in R]
        for text in ("q1^3", "q1^2*q2", "q1^3 - 3*q1*q2^2"):
            V = parse_potential(text)
            Vr = transform(V, R, 1)
            pts = find_darboux_points(V).points
            pts_r = find_darboux_points(Vr).points
            assert len(pts) == len(pts_r)
            # R^T c for each original point must appear among the transformed
            images = []
            for p in pts:
                c1, c2 = to_complex(p.c[0]), to_complex(p.c[1])
                images.append((Rc[0][0] * c1 + Rc[1][0] * c2,
                               Rc[0][1] * c1 + Rc[1][1] * c2))
            for img in images:
                assert any(abs(img[0] - to_complex(q.c[0])) < 1e-8
                           and abs(img[1] - to_complex(q.c[1])) < 1e-8
                           for q in pts_r), (img, text)


def test_radial_circle_points_multiple(rng):
    V = parse_potential("r^-3")
    for c in [(gr(1), gr(0)), (gr(Fraction(3, 5)), gr(Fraction(4, 5))),
              (gr(Fraction(-5, 13)), gr(Fraction(12, 13)))]:
        p = classify(V, c)
        assert p.multiple
        assert p.spectrum[1] == gr(-3)


def test_normalize_swap():
    Vn, c = normalize(parse_potential("q2^3"), (0, 1))
    assert Vn.text() == "q1^3"
    assert c == (gr(1), gr(0))


def test_normalize_scaling():
    # the Darboux point of 8 q1^3 is (1/8, 0); after normalization V' = q1^3
    V = parse_potential("8*q1^3")
    ds = find_darboux_points(V)
    assert ds.points[0].c == (gr(Fraction(1, 8)), gr(0))
    Vn, c = normalize(V, ds.points[0])
    assert Vn.text() == "q1^3"


def test_normalize_jet_shape(rng):
    # jet of the normalized potential: (1, k, k(k-1), 0, lambda)
    for _ in range(8):
        V = planted_potential(rng, rng.choice([3, 4]), multiple=False)
        ds = find_darboux_points(V)
        src = next(p for p in ds.points if p.exact and not p.isotropic)
        Vn, c = normalize(V, src)
        j = jet_at(Vn, c, 2)
        k = V.degree
        assert j.value == gr(1)
        assert j.d[0][0] == gr(k)
        assert j.d[0][1] == gr(0)
        assert j.d[1][0] == gr(k * (k - 1))
        assert j.d[1][1] == gr(0)
        assert j.d[1][2] == src.spectrum[1]


def test_normalize_rejects_isotropic():
    from homopot.potential import PotentialError
    V = parse_potential("(q1 + i*q2)*(q1 - i*q2)^2")
    with pytest.raises(PotentialError, match="isotropic"):
        normalize(V, (gr(Fraction(3, 4)), gr(0, Fraction(3, 4))))


def test_disguised_radial_polynomial():
    ds = find_darboux_points(parse_potential("(q1^2 + q2^2)^2"))
    assert ds.continuum
    assert ds.points[0].multiple
    assert ds.points[0].spectrum == (gr(12), gr(4))


def test_rational_kind_points():
    # V = q1^4/q2, direction roots s = +-i/2 are exact Gaussian rationals
    ds = find_darboux_points(parse_potential("q1^4/q2"))
    assert len(ds.points) == 2
    assert all(p.exact for p in ds.points)
    for p in ds.points:
        g1, g2 = jet_at(parse_potential("q1^4/q2"), p.c, 0).gradient()
        assert g1 == p.c[0] * 3 and g2 == p.c[1] * 3


def test_sorted_deterministic(rng):
    V = parse_potential("q1^3 - 3*q1*q2^2")
    a = [tuple(map(to_complex, p.c)) for p in find_darboux_points(V).points]
    b = [tuple(map(to_complex, p.c)) for p in find_darboux_points(V).points]
    assert a == b
