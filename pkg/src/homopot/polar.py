"""Classification pipeline for real-analytic potentials V = r^k U(theta).

Every critical point of U gives a Darboux point of V with spectrum
{k(k-1), U''(theta0)/U(theta0) + k}.  Choosing the extremum by the sign
pattern of max U / min U guarantees U(theta0) != 0 and a second
eigenvalue <= k, which for negative k pins the verdict: either the
eigenvalue is inadmissible (not integrable), or it equals k and the
point is multiple (only the rotation-invariant potential survives).
Degree -2 is unconditionally integrable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import morales
from .potential import PotentialError, TrigPoly
from .scalars import GaussianRational
from .upoly import UPoly, roots

Q = Fraction

RADIAL_INTEGRABLE = "radial_integrable"
DEGREE_MINUS_TWO = "degree_minus_two_integrable"
NON_INTEGRABLE = "non_integrable"
MULTIPLE_POINT = "multiple_point_found"
INDETERMINATE = "indeterminate"

CRITICAL_RESIDUAL_TOL = 1e-10


class PolarError(PotentialError):
    pass


def _z_poly(T: TrigPoly) -> UPoly:
    """z^M * T(theta) with z = e^{i theta}, as a polynomial in z."""
    M = T.max_frequency()
    coeffs = [GaussianRational(0)] * (2 * M + 1)
    coeffs[M] = coeffs[M] + T.const
    half = Q(1, 2)
    for m, a in T.cos.items():
        coeffs[M + m] = coeffs[M + m] + a * half
        coeffs[M - m] = coeffs[M - m] + a * half
    for m, b in T.sin.items():
        # sin(m t) = (z^m - z^-m)/(2i) = -i/2 z^m + i/2 z^-m
        coeffs[M + m] = coeffs[M + m] + b * GaussianRational(0, -half)
        coeffs[M - m] = coeffs[M - m] + b * GaussianRational(0, half)
    return UPoly(coeffs)


def critical_points(U: TrigPoly) -> list:
    """Sorted real roots of U' in [0, 2pi), via roots of the z-polynomial."""
    if not U.is_real():
        raise PolarError("U must have real coefficients")
    dU = U.derivative()
    if dU.is_constant():
        raise PolarError("U is constant: every angle is critical (radial case)")
    P = _z_poly(dU)
    thetas = []
    for root in roots(P):
        z = root.as_complex()
        if abs(abs(z) - 1.0) > 1e-8:
            continue
        theta = math.atan2(z.imag, z.real) % (2 * math.pi)
        thetas.append(_newton_polish(dU, theta))
    thetas.sort()
    out = []
    for th in thetas:
        if out and min(abs(th - out[-1]), 2 * math.pi - abs(th - out[-1])) < 1e-9:
            continue
        out.append(th)
    if out and abs((out[0] + 2 * math.pi) - out[-1]) < 1e-9:
        out.pop()
    for th in out:
        if abs(dU.evaluate(th)) > CRITICAL_RESIDUAL_TOL:
            raise PolarError(f"critical point residual too large at theta={th}")
    return out


def _newton_polish(dU: TrigPoly, theta: float, iters: int = 6) -> float:
    d2U = dU.derivative()
    for _ in range(iters):
        f = dU.evaluate(theta)
        fp = d2U.evaluate(theta)
        if abs(fp) < 1e-14:
            break
        step = f / fp
        if abs(step) > 0.5:
            break
        theta -= step
    return theta % (2 * math.pi)


def select_extremum(U: TrigPoly) -> float:
    """theta0 by the three-case sign rule; ties break to the smallest angle.

    Guarantees U(theta0) != 0, U'(theta0) = 0 and U''(theta0)/U(theta0) <= 0.
    """
    if U.is_constant():
        raise PolarError("U is constant (radial case)")
    crits = critical_points(U)
    values = [U.evaluate(t) for t in crits]
    vmax, vmin = max(values), min(values)
    tol = 1e-12 * max(1.0, abs(vmax), abs(vmin))

    def first_attaining(target):
        for t, v in zip(crits, values):
            if abs(v - target) <= tol:
                return t
        raise PolarError("extremum selection failed")

    if vmin >= -tol:                      # max U >= min U >= 0
        return first_attaining(vmax)
    if vmax >= tol:                       # max U > 0 > min U
        return first_attaining(vmax)
    if abs(vmax) <= tol:                  # max U = 0 >= min U
        return first_attaining(vmin)
    return first_attaining(vmin)          # 0 > max U >= min U


def _exact_quarter(theta: float) -> Optional[int]:
    q = round(theta / (math.pi / 2))
    if abs(theta - q * math.pi / 2) < 1e-9:
        return q % 4
    return None


@dataclass
class PolarVerdict:
    classification: str
    k: int
    theta0: Optional[float] = None
    lam: object = None                # Fraction when exact, float otherwise
    lam_exact: bool = False
    morales: Optional[morales.MoralesVerdict] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"classification": self.classification, "k": self.k, "note": self.note}
        if self.theta0 is not None:
            out["theta0"] = self.theta0
        if self.lam is not None:
            out["lambda"] = str(self.lam) if self.lam_exact else float(self.lam)
            out["lambda_exact"] = self.lam_exact
        if self.morales is not None:
            out["morales"] = self.morales.to_json()
        return out


def eigenvalue_at(U: TrigPoly, k: int, theta0: float):
    """lambda = U''(theta0)/U(theta0) + k, exact when theta0 is a quarter angle."""
    d2U = U.derivative().derivative()
    q = _exact_quarter(theta0)
    if q is not None:
        u = U.evaluate_quarter(q)
        upp = d2U.evaluate_quarter(q)
        if u.is_real() and upp.is_real() and not u.is_zero():
            return upp.re / u.re + k, True
    u = U.evaluate(theta0)
    upp = d2U.evaluate(theta0)
    return upp / u + k, False


def analyze_polar(U: TrigPoly, k: int, max_denominator: int = 1000,
                  k5_variant: str = morales.K5_PRINTED) -> PolarVerdict:
    """Integrability verdict for V = r^k U(theta) with k < 0."""
    if k >= 0:
        raise PolarError("the polar classification applies to negative degrees only")
    if not U.is_real():
        raise PolarError("U must have real coefficients")
    if k == -2:
        return PolarVerdict(DEGREE_MINUS_TWO, k,
                            note="every planar homogeneous potential of degree -2 "
                                 "is meromorphically integrable")
    if U.is_constant():
        if U.const.is_zero():
            raise PolarError("U is identically zero")
        return PolarVerdict(RADIAL_INTEGRABLE, k,
                            note="rotation-invariant potential; the angular momentum "
                                 "is a first integral")
    theta0 = select_extremum(U)
    lam, exact = eigenvalue_at(U, k, theta0)

    if exact:
        lam_q = Q(lam)
    else:
        lam_q = morales.reconstruct_rational(float(lam), max_denominator)
        if lam_q is None:
            return PolarVerdict(INDETERMINATE, k, theta0=theta0, lam=lam,
                                lam_exact=False,
                                note="eigenvalue is not recognizably rational; "
                                     "table membership undecided")
    if lam_q == k:
        return PolarVerdict(MULTIPLE_POINT, k, theta0=theta0, lam=lam_q,
                            lam_exact=True,
                            note="U''(theta0) = 0: multiple Darboux point; only the "
                                 "rotation-invariant potential is integrable with one")
    verdict = morales.admissible(k, lam_q, k5_variant)
    if verdict.admissible:
        # cannot happen for k < 0, k != -2 (the only admissible value <= k is k)
        return PolarVerdict(INDETERMINATE, k, theta0=theta0, lam=lam_q,
                            lam_exact=True, morales=verdict,
                            note="admissible eigenvalue below k: unexpected for "
                                 "negative degree")
    return PolarVerdict(NON_INTEGRABLE, k, theta0=theta0, lam=lam_q,
                        lam_exact=True, morales=verdict,
                        note="Hessian eigenvalue at the extremal Darboux point is "
                             "not in the admissibility table")


def darboux_point_from_theta(U: TrigPoly, k: int, theta0: float):
    """The Cartesian Darboux point U(theta0)^{1/(2-k)} (cos, sin)(theta0)."""
    u = complex(U.evaluate(theta0))
    radius = u ** (1.0 / (2 - k))
    return (radius * math.cos(theta0), radius * math.sin(theta0))
