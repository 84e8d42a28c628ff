import random
from fractions import Fraction

import pytest

from homopot.potential import HomoPoly, Potential
from homopot.scalars import GaussianRational


def rand_fraction(rng: random.Random, num_cap: int = 9, den_cap: int = 5) -> Fraction:
    return Fraction(rng.randint(-num_cap, num_cap), rng.randint(1, den_cap))


def rand_homopoly(rng: random.Random, degree: int, gaussian: bool = False) -> HomoPoly:
    terms = {}
    for i in range(degree + 1):
        if rng.random() < 0.25:
            continue
        re = rand_fraction(rng)
        im = rand_fraction(rng) if gaussian and rng.random() < 0.5 else 0
        v = GaussianRational(re, im)
        if not v.is_zero():
            terms[(degree - i, i)] = v
    if not terms:
        terms[(degree, 0)] = GaussianRational(1)
    return HomoPoly(degree, terms)


def planted_potential(rng: random.Random, degree: int, multiple: bool) -> Potential:
    """Random homogeneous polynomial with (1, 0) as an exact Darboux point.

    Coefficient of q1^k is 1 (so V(c)=1, d1V(c)=k) and of q1^{k-1} q2 is 0
    (so d2V(c)=0); the normal eigenvalue is 2*coeff(q1^{k-2} q2^2), forced
    to k when a multiple point is requested.
    """
    k = degree
    terms = {(k, 0): GaussianRational(1)}
    lam_half = Fraction(k, 2) if multiple else rand_fraction(rng)
    if multiple or lam_half != 0:
        terms[(k - 2, 2)] = GaussianRational(lam_half)
    for j in range(3, k + 1):
        if rng.random() < 0.6:
            v = rand_fraction(rng)
            if v:
                terms[(k - j, j)] = GaussianRational(v)
    return Potential.polynomial(HomoPoly(k, terms))


@pytest.fixture
def rng():
    return random.Random(20260810)
