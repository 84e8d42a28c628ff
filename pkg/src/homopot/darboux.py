"""Darboux points: location, classification, and normalization.

A Darboux point of a degree-k potential V solves grad V(c) = k c.  The
solver projectivizes first (roots of the direction polynomial W), then
recovers the radial scaling gamma^(k-2) = k / d1V(1,s) on the principal
branch.  Classification uses the Hessian spectrum {k(k-1), lambda}; a
point is multiple exactly when lambda = k, equivalently when
det(Hess - k I) vanishes, equivalently when the Jacobian of
q -> grad V(q) - kq drops rank.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .potential import (Potential, PotentialError, jet_at, transform,
                        rotation_to_axis, POLYNOMIAL, RATIONAL, RADIAL, POLAR)
from .scalars import GaussianRational, rational_nth_root, scalar_is_zero, to_complex
from .upoly import UPoly, roots

RESIDUAL_TOL = 1e-10
MULTIPLE_DET_TOL = 1e-9


class DarbouxError(PotentialError):
    pass


@dataclass
class DarbouxPoint:
    """A solution of grad V(c) = kc with its spectral data."""

    c: tuple
    spectrum: tuple               # (k(k-1), lambda)
    multiple: bool
    isotropic: bool
    direction_multiplicity: int = 1
    lambda_cap: object = None     # Lambda(c): real lambda, else -inf
    exact: bool = True
    residual: float = 0.0
    degenerate_direction: Optional[tuple] = None

    @property
    def eigenvalue(self):
        return self.spectrum[1]

    def to_json(self) -> dict:
        lam = self.spectrum[1]
        return {
            "c": [_scalar_json(t) for t in self.c],
            "spectrum": [_scalar_json(self.spectrum[0]), _scalar_json(lam)],
            "multiple": self.multiple,
            "isotropic": self.isotropic,
            "direction_multiplicity": self.direction_multiplicity,
            "lambda_cap": ("-inf" if self.lambda_cap == float("-inf")
                           else _scalar_json(self.lambda_cap)),
            "exact": self.exact,
            "residual": self.residual,
        }


def _scalar_json(v):
    if isinstance(v, GaussianRational):
        return str(v) if v.im != 0 else str(v.re)
    if isinstance(v, (int, Fraction)):
        return str(v)
    z = complex(v)
    if z.imag == 0:
        return z.real
    return {"re": z.real, "im": z.imag}


@dataclass
class DarbouxSet:
    points: list
    continuum: bool = False
    degenerate_directions: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "continuum": self.continuum,
            "points": [p.to_json() for p in self.points],
            "degenerate_directions": [[_scalar_json(t) for t in d]
                                      for d in self.degenerate_directions],
        }


def _check_analysis_degree(V: Potential):
    if V.degree in (0, 2):
        raise DarbouxError(f"degree k={V.degree} is excluded from the analysis")


def direction_polynomial(V: Potential) -> UPoly:
    """W(s) = numerator of s*d1V(1,s) - d2V(1,s); roots are directions (1,s)."""
    if V.kind not in (POLYNOMIAL, RATIONAL):
        raise DarbouxError("direction polynomial requires a polynomial or rational potential")
    _check_analysis_degree(V)
    if V.kind == POLYNOMIAL:
        p1 = V.poly.partial(0).restrict_line()
        p2 = V.poly.partial(1).restrict_line()
        s = UPoly([GaussianRational(0), GaussianRational(1)])
        return s * p1 - p2
    # rational kind: grad V = (P' Q - P Q')/Q^2; the common Q^2 drops out
    g1 = _grad_component_numer(V.num, V.den, 0)
    g2 = _grad_component_numer(V.num, V.den, 1)
    s = UPoly([GaussianRational(0), GaussianRational(1)])
    return s * g1 - g2


def _grad_component_numer(num, den, axis) -> UPoly:
    """Numerator of dV/dq_axis for V = num/den, restricted to (1, s)."""
    a = num.partial(axis).restrict_line() * den.restrict_line()
    b = num.restrict_line() * den.partial(axis).restrict_line()
    return a - b


def _gradient_on_line(V: Potential, s):
    """grad V at the point (1, s); exact when s is exact."""
    return jet_at(V, (GaussianRational(1), s) if isinstance(s, GaussianRational) else (1.0 + 0j, s), 0).gradient()


def _principal_scaling(rho, m: int):
    """gamma with gamma^m = rho, principal branch; exact when possible.

    Other branches give rotation-equivalent Darboux points and are not
    enumerated.  A negative real rho keeps the principal (complex) root.
    """
    if m == 0:
        raise DarbouxError("degree k=2 has no radial scaling")
    if isinstance(rho, GaussianRational):
        if m in (1, -1):
            return (rho if m == 1 else GaussianRational(1) / rho), True
        if m in (2, -2):
            base = rho if m == 2 else GaussianRational(1) / rho
            sq = base.sqrt_exact()  # the exact branch agrees with the principal root
            if sq is not None:
                return sq, True
        if rho.is_real() and rho.re > 0:
            base = rho.re if m > 0 else Fraction(1) / rho.re
            ex = rational_nth_root(base, abs(m))
            if ex is not None:
                return GaussianRational(ex), True
    z = to_complex(rho)
    if z == 0:
        raise DarbouxError("zero scaling candidate")
    return cmath.exp(cmath.log(z) / m), False


def classify(V: Potential, c, direction_multiplicity: int = 1,
             residual_tol: float = RESIDUAL_TOL) -> DarbouxPoint:
    """Hessian spectrum and multiplicity flags at a (verified) Darboux point."""
    k = V.degree
    _check_analysis_degree(V)
    jet = jet_at(V, c, 1)
    g1, g2 = jet.gradient()
    exact = jet.exact

    if exact:
        c0 = c[0] if isinstance(c[0], GaussianRational) else GaussianRational.coerce(c[0])
        c1 = c[1] if isinstance(c[1], GaussianRational) else GaussianRational.coerce(c[1])
        r1 = g1 - c0 * k
        r2 = g2 - c1 * k
        residual = 0.0
        if not (r1.is_zero() and r2.is_zero()):
            raise DarbouxError(f"{c} is not a Darboux point: grad V - kc = ({r1}, {r2})")
        iso = (c0 * c0 + c1 * c1).is_zero()
    else:
        c0, c1 = to_complex(c[0]), to_complex(c[1])
        scale = max(1.0, abs(k) * max(abs(c0), abs(c1)))
        residual = max(abs(to_complex(g1) - k * c0), abs(to_complex(g2) - k * c1))
        if residual > residual_tol * scale:
            raise DarbouxError(f"{c} is not a Darboux point (residual {residual:.2e})")
        iso = abs(c0 * c0 + c1 * c1) < 1e-10

    (h11, h12), (_, h22) = jet.hessian()
    kk1 = k * (k - 1)
    lam = h11 + h22 - kk1  # trace minus the forced eigenvalue

    if exact:
        det = (h11 - GaussianRational(k)) * (h22 - GaussianRational(k)) - h12 * h12
        multiple = det.is_zero()
        lam_real = lam.is_real()
        lam_cap = lam.re if lam_real else float("-inf")
    else:
        h11c, h12c, h22c = to_complex(h11), to_complex(h12), to_complex(h22)
        det = (h11c - k) * (h22c - k) - h12c * h12c
        scale = max(1.0, abs(h11c), abs(h12c), abs(h22c)) ** 2
        multiple = abs(det) < MULTIPLE_DET_TOL * scale
        lamc = to_complex(lam)
        lam_real = abs(lamc.imag) < 1e-9 * max(1.0, abs(lamc))
        lam_cap = lamc.real if lam_real else float("-inf")

    if iso:
        multiple = False  # spectrum {k(k-1), k(k-1)} (k != 2): never multiple
    return DarbouxPoint(
        c=tuple(c), spectrum=(GaussianRational(kk1) if exact else complex(kk1), lam),
        multiple=multiple, isotropic=iso,
        direction_multiplicity=direction_multiplicity,
        lambda_cap=lam_cap, exact=exact, residual=residual)


def _radial_representative(V: Potential) -> DarbouxPoint:
    # a * gamma^(k-2) = 1 picks the circle radius of the Darboux continuum
    rho = GaussianRational(1) / V.a
    gamma, exact = _principal_scaling(rho, V.degree - 2)
    return classify(V, (gamma, GaussianRational(0) if exact else 0j))


def _is_radial_polynomial(V: Potential):
    """The exact radial coefficient a when V == a*(q1^2+q2^2)^(k/2), else None."""
    if V.kind != POLYNOMIAL or V.degree % 2 != 0 or V.degree < 2:
        return None
    m = V.degree // 2
    from math import comb
    lead = V.poly.terms.get((V.degree, 0))
    if lead is None:
        return None
    expected = {}
    for t in range(m + 1):
        expected[(2 * (m - t), 2 * t)] = lead * comb(m, t)
    return lead if expected == V.poly.terms else None


def find_darboux_points(V: Potential, residual_tol: float = RESIDUAL_TOL) -> DarbouxSet:
    """All Darboux points of V (one representative for radial continuums)."""
    _check_analysis_degree(V)
    k = V.degree

    if V.kind == RADIAL:
        return DarbouxSet(points=[_radial_representative(V)], continuum=True)
    if V.kind == POLAR:
        return _polar_darboux_points(V, residual_tol)

    W = direction_polynomial(V)
    if W.is_zero():
        a = _is_radial_polynomial(V)
        if a is not None:
            return find_darboux_points(Potential.radial(a, k))
        raise DarbouxError(
            "every direction solves the direction equation but the potential "
            "is not radial: degenerate input")

    points = []
    degenerate = []
    for root in roots(W):
        s = root.value
        exact = root.exact
        one = GaussianRational(1) if exact else 1.0 + 0j
        try:
            g1, _ = _gradient_on_line(V, s)
        except PotentialError:
            continue  # W-root on the denominator's zero set: not a direction
        if scalar_is_zero(g1, 1e-12):
            degenerate.append((one, s))
            continue
        rho = (GaussianRational(k) / g1) if exact and isinstance(g1, GaussianRational) else k / to_complex(g1)
        gamma, gamma_exact = _principal_scaling(rho, k - 2)
        if exact and not gamma_exact:
            s = to_complex(s)
            one = 1.0 + 0j
        c = (gamma * one, gamma * s)
        points.append(classify(V, c, direction_multiplicity=root.multiplicity,
                                residual_tol=residual_tol))

    # the direction (0,1) escapes the (1,s) chart and is tested separately
    vert = _vertical_direction_point(V)
    if vert == "degenerate":
        degenerate.append((GaussianRational(0), GaussianRational(1)))
    elif vert is not None:
        points.append(vert)

    points.sort(key=_point_sort_key)
    return DarbouxSet(points=points, continuum=False, degenerate_directions=degenerate)


def _vertical_direction_point(V: Potential):
    try:
        g1, g2 = jet_at(V, (GaussianRational(0), GaussianRational(1)), 0).gradient()
    except PotentialError:
        return None  # singular along the vertical axis (rational kinds)
    if not scalar_is_zero(g1, 1e-13):
        return None  # (0,1) is not a Darboux direction
    if scalar_is_zero(g2, 1e-13):
        return "degenerate"
    k = V.degree
    rho = GaussianRational(k) / g2 if isinstance(g2, GaussianRational) else k / to_complex(g2)
    gamma, exact = _principal_scaling(rho, k - 2)
    zero = GaussianRational(0) if exact else 0j
    return classify(V, (zero, gamma))


def _polar_darboux_points(V: Potential, residual_tol: float = RESIDUAL_TOL) -> DarbouxSet:
    from .polar import critical_points
    if V.U.is_constant():
        return find_darboux_points(Potential.radial(V.U.const, V.degree))
    k = V.degree
    pts = []
    for theta in critical_points(V.U):
        u = V.U.evaluate(theta)
        if abs(complex(u)) < 1e-12:
            continue  # U(theta0)=0 gives no finite Darboux point on this ray
        radius = complex(u) ** (1.0 / (2 - k))
        import math
        c = (radius * math.cos(theta), radius * math.sin(theta))
        pts.append(classify(V, c, residual_tol=residual_tol))
    pts.sort(key=_point_sort_key)
    return DarbouxSet(points=pts, continuum=False)


def _point_sort_key(p: DarbouxPoint):
    z0, z1 = to_complex(p.c[0]), to_complex(p.c[1])
    return (round(z0.real, 10), round(z0.imag, 10), round(z1.real, 10), round(z1.imag, 10))


def normalize(V: Potential, point) -> tuple:
    """Rotate-and-rescale so the Darboux point sits at (1, 0) with V = 1.

    Returns (V', (1,0)); the jet of V' at the new point starts
    1 + k q1 + k(k-1) q1^2/2 + lambda q2^2/2 + O(q^3).
    """
    _check_analysis_degree(V)
    c = point.c if isinstance(point, DarbouxPoint) else tuple(point)
    R, gamma = rotation_to_axis(c[0], c[1])
    scale = gamma ** (V.degree - 2)
    Vn = transform(V, R, scale)
    new_c = (GaussianRational(1), GaussianRational(0)) if isinstance(gamma, GaussianRational) else (1.0 + 0j, 0j)
    # re-verify: the normalized point must still solve the Darboux equations
    classify(Vn, new_c)
    return Vn, new_c
