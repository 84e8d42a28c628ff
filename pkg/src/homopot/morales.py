"""Admissible Hessian eigenvalues at Darboux points (the integrability table).

For a potential of degree k and eigenvalue lambda, meromorphic
integrability forces (k, lambda) into a fixed table: two quadratic
families in an integer parameter i valid for every nonzero k, sporadic
rows for |k| in {3,4,5}, and everything for k = +-2.  Membership is
decided exactly over the rationals by solving each row's quadratic.

The published k=5 row breaks the (10/3 + 10i)^2 pattern of its sibling
and reads (4 + 6i)^2; both variants ship, selected by k5_variant
("printed" keeps the published value, "tenj" uses (4 + 10i)^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

Q = Fraction

K5_PRINTED = "printed"
K5_TENJ = "tenj"


@dataclass(frozen=True)
class TableRow:
    """lambda(i) = A i^2 + B i + C for integer i (or all of C when all_c)."""

    row_id: str
    A: Fraction = Q(0)
    B: Fraction = Q(0)
    C: Fraction = Q(0)
    all_c: bool = False
    formula: str = ""

    def value(self, i: int) -> Fraction:
        return self.A * i * i + self.B * i + self.C

    def to_json(self) -> dict:
        if self.all_c:
            return {"row": self.row_id, "lambda": "C", "formula": self.formula}
        return {"row": self.row_id, "A": str(self.A), "B": str(self.B),
                "C": str(self.C), "formula": self.formula}


def _square_row(row_id: str, base: Fraction, coef: Fraction,
                offset: Fraction, step: Fraction, formula: str) -> TableRow:
    # base + coef*(offset + step*i)^2, expanded
    return TableRow(row_id,
                    A=coef * step * step,
                    B=2 * coef * offset * step,
                    C=base + coef * offset * offset,
                    formula=formula)


_SPORADIC = {
    -5: [
        _square_row("k=-5 sporadic a", Q(-49, 8), Q(1, 8), Q(10, 3), Q(10),
                    "-49/8 + (10/3 + 10i)^2/8"),
        _square_row("k=-5 sporadic b", Q(-49, 8), Q(1, 8), Q(4), Q(10),
                    "-49/8 + (4 + 10i)^2/8"),
    ],
    -4: [
        _square_row("k=-4 sporadic", Q(-9, 2), Q(1, 2), Q(4, 3), Q(4),
                    "-9/2 + (4/3 + 4i)^2/2"),
    ],
    -3: [
        _square_row("k=-3 sporadic a", Q(-25, 8), Q(1, 8), Q(2), Q(6),
                    "-25/8 + (2 + 6i)^2/8"),
        _square_row("k=-3 sporadic b", Q(-25, 8), Q(1, 8), Q(3, 2), Q(6),
                    "-25/8 + (3/2 + 6i)^2/8"),
        _square_row("k=-3 sporadic c", Q(-25, 8), Q(1, 8), Q(6, 5), Q(6),
                    "-25/8 + (6/5 + 6i)^2/8"),
        _square_row("k=-3 sporadic d", Q(-25, 8), Q(1, 8), Q(12, 5), Q(6),
                    "-25/8 + (12/5 + 6i)^2/8"),
    ],
    3: [
        _square_row("k=3 sporadic a", Q(-1, 8), Q(1, 8), Q(2), Q(6),
                    "-1/8 + (2 + 6i)^2/8"),
        _square_row("k=3 sporadic b", Q(-1, 8), Q(1, 8), Q(3, 2), Q(6),
                    "-1/8 + (3/2 + 6i)^2/8"),
        _square_row("k=3 sporadic c", Q(-1, 8), Q(1, 8), Q(6, 5), Q(6),
                    "-1/8 + (6/5 + 6i)^2/8"),
        _square_row("k=3 sporadic d", Q(-1, 8), Q(1, 8), Q(12, 5), Q(6),
                    "-1/8 + (12/5 + 6i)^2/8"),
    ],
    4: [
        _square_row("k=4 sporadic", Q(-1, 2), Q(1, 2), Q(4, 3), Q(4),
                    "-1/2 + (4/3 + 4i)^2/2"),
    ],
}


def _k5_rows(variant: str):
    rows = [_square_row("k=5 sporadic a", Q(-9, 8), Q(1, 8), Q(10, 3), Q(10),
                        "-9/8 + (10/3 + 10i)^2/8")]
    if variant == K5_PRINTED:
        rows.append(_square_row("k=5 sporadic b (printed)", Q(-9, 8), Q(1, 8), Q(4), Q(6),
                                "-9/8 + (4 + 6i)^2/8"))
    elif variant == K5_TENJ:
        rows.append(_square_row("k=5 sporadic b (tenj)", Q(-9, 8), Q(1, 8), Q(4), Q(10),
                                "-9/8 + (4 + 10i)^2/8"))
    else:
        raise ValueError(f"unknown k5 variant {variant!r}")
    return rows


def table_rows(k: int, k5_variant: str = K5_PRINTED) -> list:
    """Every table row applicable to degree k."""
    if k == 0:
        raise ValueError("degree k = 0 has no table")
    rows = [
        TableRow("family 1", A=Q(k * k, 2), B=Q(k * (k - 2), 2), C=Q(0),
                 formula="i*k*(i*k + k - 2)/2"),
        TableRow("family 2", A=Q(k * k, 2), B=Q(k * k, 2), C=Q(k - 1, 2),
                 formula="(i*k + k - 1)*(i*k + 1)/2"),
    ]
    if abs(k) == 2:
        rows.append(TableRow(f"k={k} all of C", all_c=True, formula="C"))
    if k == 5:
        rows.extend(_k5_rows(k5_variant))
    elif k in _SPORADIC:
        rows.extend(_SPORADIC[k])
    return rows


@dataclass
class MoralesVerdict:
    admissible: bool
    k: int
    lam: Fraction
    witness: Optional[tuple] = None       # (row_id, i) re-evaluating to lam
    certificate: Optional[list] = None    # per-row discriminant data

    def to_json(self) -> dict:
        out = {"k": self.k, "lambda": str(self.lam), "admissible": self.admissible}
        if self.witness is not None:
            out["witness"] = {"row": self.witness[0], "i": self.witness[1]}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _fraction_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    pn, pd = x.numerator, x.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Q(rn, rd)
    return None


def _solve_row(row: TableRow, lam: Fraction):
    """Integer solutions of row.value(i) = lam plus the discriminant."""
    disc = row.B * row.B - 4 * row.A * (row.C - lam)
    sols = []
    root = _fraction_sqrt(disc)
    if root is not None:
        for sgn in (1, -1) if root != 0 else (1,):
            i = (-row.B + sgn * root) / (2 * row.A)
            if i.denominator == 1:
                sols.append(int(i))
    return sols, disc


def admissible(k: int, lam, k5_variant: str = K5_PRINTED) -> MoralesVerdict:
    """Exact membership of (k, lambda) in the table.

    lam must be an exact rational; floats go through
    reconstruct_rational first.
    """
    if k == 0:
        raise ValueError("degree k = 0 has no table")
    if isinstance(lam, float):
        raise TypeError("lam must be exact; use reconstruct_rational for floats")
    lam = Q(lam)
    certificate = []
    for row in table_rows(k, k5_variant):
        if row.all_c:
            return MoralesVerdict(True, k, lam, witness=(row.row_id, 0))
        sols, disc = _solve_row(row, lam)
        if sols:
            i = sols[0]
            assert row.value(i) == lam
            return MoralesVerdict(True, k, lam, witness=(row.row_id, i))
        certificate.append({"row": row.row_id, "discriminant": str(disc)})
    return MoralesVerdict(False, k, lam, certificate=certificate)


def reconstruct_rational(x: float, max_denominator: int = 64,
                         tol: float = 1e-9) -> Optional[Fraction]:
    """Small-denominator rational near x, or None when indeterminate."""
    from math import isfinite
    if not isfinite(x):
        return None
    cand = Q(x).limit_denominator(max_denominator)
    if abs(x - float(cand)) < tol:
        return cand
    return None


def admissible_values_at_most(k: int, bound: Fraction,
                              k5_variant: str = K5_PRINTED) -> dict:
    """All admissible lambda <= bound, as {lambda: (row_id, i)}.

    Each row is a positive-leading-coefficient quadratic in i, so its
    sublevel set {lambda(i) <= bound} is a finite integer interval,
    enumerated exactly.
    """
    if abs(k) == 2:
        raise ValueError("k = +-2 admits every lambda; no finite enumeration")
    out = {}
    for row in table_rows(k, k5_variant):
        # solve A i^2 + B i + (C - bound) <= 0 exactly
        disc = row.B * row.B - 4 * row.A * (row.C - Q(bound))
        if disc < 0:
            continue
        from math import floor, ceil, sqrt
        r = sqrt(float(disc))
        lo = (-float(row.B) - r) / (2 * float(row.A))
        hi = (-float(row.B) + r) / (2 * float(row.A))
        for i in range(floor(lo) - 2, ceil(hi) + 3):  # float guard margin
            val = row.value(i)
            if val <= bound and val not in out:
                out[val] = (row.row_id, i)
    return out


def eigenvalue_gap_scan(k: int, max_den: int = 100, max_num: int = 10**4,
                      k5_variant: str = K5_PRINTED) -> list:
    """Admissible rationals lambda <= k with |num| <= max_num, den <= max_den.

    The key step behind the negative-degree classification: for
    k in {-1,-3,-4,-5,-6,-7} the list is exactly [k].
    """
    found = admissible_values_at_most(k, Q(k), k5_variant)
    return sorted(v for v in found
                  if abs(v.numerator) <= max_num and v.denominator <= max_den)
