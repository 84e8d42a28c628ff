"""Period integrals of (t^2-1)^alpha over figure loops, and the
commutativity obstructions built from them.

The loop gamma_j starts at t = 0, turns j times counter-clockwise around
+1 on a radius-1/2 circle, returns, then turns j times clockwise around
-1; the branch at the base point is fixed by (t^2-1)^alpha|_0 = e^{i pi
alpha}.  Closed form:

    int_{gamma_j} (t^2-1)^a dt
        = (1 - e^{2 i j pi a}) e^{i pi a} Gamma(a+1) sqrt(pi) / Gamma(a+3/2)

valid for every real a by analytic continuation; it vanishes identically
when Gamma(a+3/2) sits at a pole (a in {-3/2, -5/2, ...}), which the
commutativity classifier treats as its own branch.  The quadrature path
below is an independent numerical route to the same numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

Q = Fraction

NON_COMMUTATIVE = "non_commutative"
COMMUTATIVE_POSSIBLE = "commutative_possible"


# -- Lanczos gamma -------------------------------------------------------

_LANCZOS_G = 7
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def lanczos_gamma(x: float) -> float:
    """Gamma for real non-pole arguments (g=7, 9 coefficients, ~1e-13 rel)."""
    if x == int(x) and x <= 0:
        raise ValueError(f"gamma pole at {x}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * lanczos_gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


# -- exact phase helpers --------------------------------------------------

def _cis_pi(x: Fraction) -> complex:
    """e^{i pi x} with exact values at quarter multiples."""
    x = Q(x) % 2
    table = {Q(0): 1 + 0j, Q(1, 2): 1j, Q(1): -1 + 0j, Q(3, 2): -1j}
    if x in table:
        return table[x]
    return cmath.exp(1j * math.pi * float(x))


def _is_nonpos_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def gamma_pole_at(alpha: Fraction) -> bool:
    """True when Gamma(alpha + 3/2) is at a pole (alpha in -3/2 - N)."""
    return _is_nonpos_int(Q(alpha) + Q(3, 2))


# -- period values ---------------------------------------------------------

@dataclass
class PeriodValue:
    alpha: Fraction
    j: int
    value: complex
    method: str                       # "closed_form" | "quadrature"
    error_bound: Optional[float] = None
    gamma_pole: bool = False

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "j": self.j,
            "value": [self.value.real, self.value.imag],
            "method": self.method,
            "error_bound": self.error_bound,
            "gamma_pole": self.gamma_pole,
        }


def period_closed_form(alpha, j: int) -> PeriodValue:
    """The Gamma-function closed form of the loop period."""
    alpha = Q(alpha)
    if alpha.denominator == 1:
        if alpha < 0:
            raise ValueError(
                "negative integer alpha: Gamma(alpha+1) pole is outside the "
                "closed form's domain")
        return PeriodValue(alpha, j, 0j, "closed_form")
    if gamma_pole_at(alpha):
        # denominator pole dominates: the analytic continuation vanishes
        return PeriodValue(alpha, j, 0j, "closed_form", gamma_pole=True)
    two_ja = (2 * j * alpha) % 2
    if two_ja == 0:
        return PeriodValue(alpha, j, 0j, "closed_form")
    pref = 1 - _cis_pi(two_ja)
    phase = _cis_pi(alpha % 2)
    g1 = lanczos_gamma(float(alpha + 1))
    g2 = lanczos_gamma(float(alpha + Q(3, 2)))
    value = pref * phase * g1 * math.sqrt(math.pi) / g2
    return PeriodValue(alpha, j, value, "closed_form")


# -- quadrature along the concrete loop ------------------------------------

@dataclass
class LoopSpec:
    """Geometry of gamma_j: base point 0, radius-1/2 circles around +-1."""

    j: int
    radius: float = 0.5
    base_point: complex = 0j

    def pieces(self):
        """Smooth pieces (t(u), dt(u), u in [0,1]); quarter arcs per loop."""
        j, r = self.j, self.radius
        out = []

        def segment(a, b):
            out.append(("seg", a, b))

        def arcs(center, start_angle, turns):
            # one full turn = 4 quarter arcs; sign of `turns` = orientation
            n = 4 * abs(turns)
            sgn = 1 if turns > 0 else -1
            for q in range(n):
                a0 = start_angle + sgn * q * math.pi / 2
                out.append(("arc", center, a0, sgn * math.pi / 2))

        if j == 0:
            segment(0.0, 1 - r)
            segment(1 - r, 0.0)
            return out
        segment(0.0, 1 - r)
        arcs(1.0, math.pi, j)            # j ccw turns around +1
        segment(1 - r, 0.0)
        segment(0.0, -1 + r)
        arcs(-1.0, 0.0, -j)              # j cw turns around -1
        segment(-1 + r, 0.0)
        return out


_GL_NODES = {}


def _gl(n: int):
    if n not in _GL_NODES:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_NODES[n] = (x, w)
    return _GL_NODES[n]


class _BranchState:
    """Continuous arguments of (t-1) and (t+1) along the path."""

    __slots__ = ("th1", "th2")

    def __init__(self, th1: float, th2: float):
        self.th1 = th1
        self.th2 = th2


def _piece_param(piece):
    kind = piece[0]
    if kind == "seg":
        _, a, b = piece
        a, b = complex(a), complex(b)

        def t(u):
            return a + (b - a) * u

        def dt(u):
            return b - a
        return t, dt, a, b
    _, center, a0, da = piece
    r = 0.5

    def t(u):
        return center + r * cmath.exp(1j * (a0 + da * u))

    def dt(u):
        return r * 1j * da * cmath.exp(1j * (a0 + da * u))
    return t, dt, t(0.0), t(1.0)


def _integrate_piece(piece, alpha_f: float, state: _BranchState, tol: float):
    """Adaptive Gauss-Legendre over one smooth piece with branch tracking."""
    t, dt, t0, t1 = _piece_param(piece)

    def theta(u):
        tv = t(u)
        d1 = cmath.log((tv - 1) / (t0 - 1)).imag
        d2 = cmath.log((tv + 1) / (t0 + 1)).imag
        return state.th1 + d1, state.th2 + d2

    def f(u):
        tv = t(u)
        th1, th2 = theta(u)
        mag = alpha_f * (math.log(abs(tv - 1)) + math.log(abs(tv + 1)))
        return cmath.exp(mag + 1j * alpha_f * (th1 + th2)) * dt(u)

    def gl_on(a, b, n=24):
        x, w = _gl(n)
        mid, half = (a + b) / 2, (b - a) / 2
        acc = 0j
        for xi, wi in zip(x, w):
            acc += wi * f(mid + half * xi)
        return acc * half

    def adapt(a, b, whole, depth):
        m = (a + b) / 2
        left, right = gl_on(a, m), gl_on(m, b)
        err = abs(whole - left - right)
        if err < tol or depth >= 24:
            return left + right, err
        vl, el = adapt(a, m, left, depth + 1)
        vr, er = adapt(m, b, right, depth + 1)
        return vl + vr, el + er

    value, err = adapt(0.0, 1.0, gl_on(0.0, 1.0), 0)

    # advance the running branch arguments past this piece
    if piece[0] == "arc":
        _, center, a0, da = piece
        if center == 1.0:
            state.th1 += da
            state.th2 += cmath.log((t1 + 1) / (t0 + 1)).imag
        else:
            state.th2 += da
            state.th1 += cmath.log((t1 - 1) / (t0 - 1)).imag
    else:
        state.th1 += cmath.log((t1 - 1) / (t0 - 1)).imag
        state.th2 += cmath.log((t1 + 1) / (t0 + 1)).imag
    return value, err


def period_quadrature(spec: LoopSpec, alpha, tol: float = 1e-10) -> PeriodValue:
    """Numerical analytic continuation of the period along the loop."""
    alpha = Q(alpha)
    if tol < 1e-12:
        raise ValueError("tol below the 1e-12 floor of the quadrature")
    pieces = spec.pieces()
    # branch determination at t=0: arg(t-1) = pi, arg(t+1) = 0
    state = _BranchState(math.pi, 0.0)
    alpha_f = float(alpha)
    piece_tol = tol / max(1, len(pieces)) / 4
    total = 0j
    err = 0.0
    for piece in pieces:
        v, e = _integrate_piece(piece, alpha_f, state, piece_tol)
        total += v
        err += e
    # loop closure on the Riemann surface: arg(t-1) gains 2 pi j, arg(t+1) loses it
    closure = max(abs(state.th1 - math.pi - 2 * math.pi * spec.j),
                  abs(state.th2 + 2 * math.pi * spec.j))
    if closure > 1e-9:
        raise ArithmeticError(f"branch tracking failed to close the loop ({closure:.2e})")
    return PeriodValue(alpha, spec.j, total, "quadrature", error_bound=err)


# -- determinant of the period matrix ----------------------------------------

def det_A(alpha, beta, j1: int, j2: int) -> complex:
    """det [[P(alpha,j1), P(alpha,j2)], [P(beta,j1), P(beta,j2)]]."""
    a1 = period_closed_form(alpha, j1).value
    a2 = period_closed_form(alpha, j2).value
    b1 = period_closed_form(beta, j1).value
    b2 = period_closed_form(beta, j2).value
    return a1 * b2 - a2 * b1


def det_A_expsum(alpha, beta, j1: int, j2: int) -> complex:
    """The same determinant via the Gamma-prefactor times exponential sum."""
    alpha, beta = Q(alpha), Q(beta)
    if alpha.denominator == 1 or beta.denominator == 1:
        raise ValueError("exponential-sum form needs non-integer exponents")
    if gamma_pole_at(alpha) or gamma_pole_at(beta):
        return 0j
    pref = (_cis_pi((alpha + beta) % 2) * lanczos_gamma(float(alpha + 1))
            * math.pi * lanczos_gamma(float(beta + 1))
            / (lanczos_gamma(float(alpha + Q(3, 2)))
               * lanczos_gamma(float(beta + Q(3, 2)))))

    def e(x):
        return _cis_pi((2 * x) % 2)

    s = (e(j2 * alpha) + e(j1 * beta) - e(j2 * beta) - e(j1 * alpha)
         + e(j1 * alpha + j2 * beta) - e(j1 * beta + j2 * alpha))
    return pref * s


# -- commutativity classification of the iterated integral -------------------

REASON_ALPHA_MINUS_BETA = "alpha_minus_beta_integer"
REASON_POLE_ALPHA = "gamma_pole_alpha"
REASON_POLE_BETA = "gamma_pole_beta"


@dataclass
class CommutativityClass:
    verdict: str
    reason: Optional[str] = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


def commutativity_class(alpha, beta) -> CommutativityClass:
    """Monodromy commutativity for the double integral of (t^2-1)^alpha
    against (t^2-1)^beta; requires non-integer rational exponents."""
    alpha, beta = Q(alpha), Q(beta)
    if alpha.denominator == 1 or beta.denominator == 1:
        raise ValueError("commutativity classification requires alpha, beta not in Z")
    if (alpha - beta).denominator == 1:
        return CommutativityClass(COMMUTATIVE_POSSIBLE, REASON_ALPHA_MINUS_BETA)
    if gamma_pole_at(alpha):
        return CommutativityClass(COMMUTATIVE_POSSIBLE, REASON_POLE_ALPHA)
    if gamma_pole_at(beta):
        return CommutativityClass(COMMUTATIVE_POSSIBLE, REASON_POLE_BETA)
    return CommutativityClass(NON_COMMUTATIVE)


def trig_vanishing_factor(alpha, beta) -> float:
    """16 (cos^2 pi a - 1)(cos^2 pi b - 1)(cos^2 pi b - cos^2 pi a).

    Vanishes whenever det_A(a, b, 1, -1) does (conjugate-cleared form);
    used as a numeric cross-check of the classification.
    """
    ca, cb = math.cos(math.pi * float(alpha)), math.cos(math.pi * float(beta))
    return 16 * (ca * ca - 1) * (cb * cb - 1) * (cb * cb - ca * ca)


# -- commutativity verdict for the variational-equation integrals ------------

@dataclass
class GVerdict:
    l: int
    k: int
    verdict: str
    reason: str
    checklist: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "l": self.l, "k": self.k, "verdict": self.verdict,
            "reason": self.reason,
            "checklist": {name: {"value": str(val), "triggered": hit}
                          for name, (val, hit) in self.checklist.items()},
        }


def g_verdict(l: int, k: int) -> GVerdict:
    """Commutativity verdict for the iterated integral with exponents
    alpha = 1/k, beta = -(k+1)/k.

    For |k| > 2 all five exclusion conditions fail and the monodromy is
    non-commutative; k = 1 (with l >= 1) is non-commutative through the
    dilogarithmic primitive instead.
    """
    if l < 0:
        raise ValueError("level l must be >= 0")
    if k in (-2, -1, 0, 2):
        raise ValueError(f"k = {k} is outside the verdict's domain")
    if k == 1 and l == 0:
        raise ValueError("k = 1 requires level l >= 1")
    alpha = Q(1, k)
    beta = Q(-(k + 1), k)
    checks = {
        "alpha_integer": alpha,                      # 1/k in Z
        "beta_integer": beta,                        # -(k+1)/k in Z
        "gamma_pole_beta": -Q(3, 2) - beta,          # (k+1)/k - 3/2 in N
        "gamma_pole_alpha": -Q(3, 2) - alpha,        # -3/2 - 1/k in N
        "alpha_minus_beta_integer": alpha - beta,    # (k+2)/k in Z
    }
    checklist = {}
    any_hit = False
    for name, val in checks.items():
        if name in ("alpha_integer", "beta_integer", "alpha_minus_beta_integer"):
            hit = val.denominator == 1
        else:
            hit = val.denominator == 1 and val >= 0
        checklist[name] = (val, hit)
        any_hit = any_hit or hit

    if k == 1:
        return GVerdict(l, k, NON_COMMUTATIVE, "dilogarithm", checklist)
    if any_hit:
        # cannot happen for |k| > 2; guard for completeness
        return GVerdict(l, k, COMMUTATIVE_POSSIBLE, "exclusion condition met", checklist)
    return GVerdict(l, k, NON_COMMUTATIVE, "all five exclusion conditions fail", checklist)
