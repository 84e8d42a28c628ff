"""Analysis orchestration: the full Darboux/eigenvalue-table pipeline and
batch runs with machine-readable reports.

Overall verdicts:

* non_integrable_by_morales_ramis - some Darboux point carries an
  eigenvalue outside the table, or a multiple Darboux point exists on a
  potential that is not rotation-invariant (uniqueness of the radial
  case).
* multiple_point_radial_candidate - the rotation-invariant potential:
  a continuum of multiple Darboux points, integrable via the angular
  momentum.
* indeterminate - some eigenvalue could not be pinned to a rational.
* passes_first_order_tests - every eigenvalue is admissible.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import morales
from .darboux import DarbouxError, DarbouxSet, find_darboux_points
from .parse import parse_potential
from .potential import Potential, potential_to_json, potential_from_json
from .scalars import GaussianRational

__version__ = "0.1.0"

NON_INTEGRABLE = "non_integrable_by_morales_ramis"
PASSES = "passes_first_order_tests"
RADIAL_CANDIDATE = "multiple_point_radial_candidate"
INDETERMINATE = "indeterminate"

ST_ADMISSIBLE = "admissible"
ST_INADMISSIBLE = "inadmissible"
ST_INDETERMINATE = "indeterminate"


@dataclass
class AnalyzeOptions:
    quad_tol: float = 1e-10
    residual_tol: float = 1e-10
    max_denominator: int = 1000
    k5_variant: str = morales.K5_PRINTED
    include_timing: bool = False


@dataclass
class PointVerdict:
    status: str
    lam: object = None              # Fraction when decided exactly
    lam_exact: bool = False
    morales: Optional[morales.MoralesVerdict] = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.lam is not None:
            out["lambda"] = str(self.lam) if self.lam_exact else self.lam
            out["lambda_exact"] = self.lam_exact
        if self.morales is not None:
            out["morales"] = self.morales.to_json()
        return out


@dataclass
class AnalysisReport:
    input_text: str
    potential: Potential
    verdict: str
    darboux: DarbouxSet
    point_verdicts: list
    notes: list = field(default_factory=list)
    version: str = __version__
    elapsed_seconds: Optional[float] = None

    @property
    def n_points(self) -> int:
        return len(self.darboux.points)

    @property
    def n_multiple(self) -> int:
        return sum(1 for p in self.darboux.points if p.multiple)

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "input": self.input_text,
            "potential": potential_to_json(self.potential),
            "degree": self.potential.degree,
            "kind": self.potential.kind,
            "verdict": self.verdict,
            "darboux": self.darboux.to_json(),
            "points": [pv.to_json() for pv in self.point_verdicts],
            "multiplicity_summary": {
                "n_points": self.n_points,
                "n_multiple": self.n_multiple,
                "continuum": self.darboux.continuum,
            },
            "notes": self.notes,
            "version": self.version,
        }
        if include_timing and self.elapsed_seconds is not None:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out

    def to_text(self) -> str:
        lines = [f"potential: {self.input_text}",
                 f"kind: {self.potential.kind}, degree k = {self.potential.degree}",
                 f"darboux points: {self.n_points}"
                 + (" (continuum, one representative shown)" if self.darboux.continuum else ""),
                 f"multiple points: {self.n_multiple}"]
        for p, pv in zip(self.darboux.points, self.point_verdicts):
            lam = pv.lam if pv.lam is not None else p.spectrum[1]
            lines.append(f"  c = {_fmt_point(p.c)}  lambda = {lam}"
                         f"  multiple = {p.multiple}  -> {pv.status}"
                         + (f" ({pv.reason})" if pv.reason else ""))
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _fmt_point(c) -> str:
    def one(v):
        if isinstance(v, GaussianRational):
            return str(v)
        z = complex(v)
        if abs(z.imag) < 1e-14:
            return f"{z.real:.12g}"
        return f"({z.real:.12g}{z.imag:+.12g}i)"
    return f"({one(c[0])}, {one(c[1])})"


def _eigenvalue_verdict(point, k: int, opts: AnalyzeOptions) -> PointVerdict:
    lam = point.spectrum[1]
    if isinstance(lam, GaussianRational):
        if not lam.is_real():
            return PointVerdict(ST_INADMISSIBLE, lam=None,
                                reason="non-real Hessian eigenvalue (table rows are real)")
        lam_q = lam.re
        verdict = morales.admissible(k, lam_q, opts.k5_variant)
        return PointVerdict(ST_ADMISSIBLE if verdict.admissible else ST_INADMISSIBLE,
                            lam=lam_q, lam_exact=True, morales=verdict,
                            reason="exact rational eigenvalue")
    z = complex(lam)
    if abs(z.imag) > 1e-8 * max(1.0, abs(z)):
        return PointVerdict(ST_INADMISSIBLE, lam=None,
                            reason="non-real Hessian eigenvalue (table rows are real)")
    lam_q = morales.reconstruct_rational(z.real, opts.max_denominator)
    if lam_q is None:
        return PointVerdict(ST_INDETERMINATE, lam=z.real, lam_exact=False,
                            reason="eigenvalue not recognizably rational")
    verdict = morales.admissible(k, lam_q, opts.k5_variant)
    return PointVerdict(ST_ADMISSIBLE if verdict.admissible else ST_INADMISSIBLE,
                        lam=lam_q, lam_exact=True, morales=verdict,
                        reason=f"rational reconstruction of {z.real!r}")


def analyze(source, options: Optional[AnalyzeOptions] = None) -> AnalysisReport:
    """The full pipeline: parse, locate Darboux points, classify, test the
    table, aggregate."""
    opts = options or AnalyzeOptions()
    started = time.perf_counter()
    if isinstance(source, Potential):
        V = source
        text = V.text()
    else:
        text = str(source)
        V = parse_potential(text)
    if V.degree in (0, 2):
        raise DarbouxError(f"degree k={V.degree} is excluded from the analysis")

    dset = find_darboux_points(V, residual_tol=opts.residual_tol)
    notes = []
    if dset.degenerate_directions:
        notes.append(f"{len(dset.degenerate_directions)} degenerate direction(s) "
                     "with no finite Darboux point")
    point_verdicts = [_eigenvalue_verdict(p, V.degree, opts) for p in dset.points]

    is_radial = dset.continuum
    any_multiple = any(p.multiple for p in dset.points)
    any_inadmissible = any(pv.status == ST_INADMISSIBLE for pv in point_verdicts)
    any_indeterminate = any(pv.status == ST_INDETERMINATE for pv in point_verdicts)

    if is_radial and any_multiple:
        verdict = RADIAL_CANDIDATE
        notes.append("rotation-invariant potential: integrable (angular momentum)")
    elif any_inadmissible:
        verdict = NON_INTEGRABLE
    elif any_multiple and V.degree != -2:
        verdict = NON_INTEGRABLE
        notes.append("multiple Darboux point on a non-radial potential: only the "
                     "rotation-invariant potential admits one while integrable")
    elif any_indeterminate:
        verdict = INDETERMINATE
    else:
        verdict = PASSES
        if not dset.points:
            notes.append("no Darboux points found: first-order tests are vacuous")

    return AnalysisReport(
        input_text=text, potential=V, verdict=verdict, darboux=dset,
        point_verdicts=point_verdicts, notes=notes,
        elapsed_seconds=time.perf_counter() - started)


# -- batch runs ---------------------------------------------------------------


@dataclass
class BatchResult:
    reports: list                    # (filename, AnalysisReport)
    errors: list                     # (filename, message)
    summary_rows: list               # (file, k, n_points, n_multiple, verdict)

    @property
    def exit_code(self) -> int:
        return 1 if self.errors else 0

    def summary_csv(self) -> str:
        lines = ["file,k,n_points,n_multiple,verdict"]
        for row in self.summary_rows:
            lines.append(",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def _read_potential_file(path: Path) -> Potential:
    text = path.read_text().strip()
    if path.suffix == ".json":
        return potential_from_json(json.loads(text))
    return parse_potential(text)


def _analyze_file(path: Path, opts: AnalyzeOptions):
    try:
        return path.name, analyze(_read_potential_file(path), opts), None
    except (ValueError, KeyError, TypeError, OSError) as exc:
        return path.name, None, exc


def batch(directory, options: Optional[AnalyzeOptions] = None,
          max_workers: int = 4) -> BatchResult:
    """Analyze every potential file in a directory.

    Files run concurrently; the summary order is by filename regardless
    of scheduling.
    """
    opts = options or AnalyzeOptions()
    base = Path(directory)
    if not base.is_dir():
        raise NotADirectoryError(str(base))
    files = [p for p in sorted(base.iterdir(), key=lambda p: p.name)
             if not p.is_dir() and not p.name.startswith(".")]
    reports, errors, rows = [], [], []
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(lambda p: _analyze_file(p, opts), files))
    for name, rep, exc in results:
        if exc is not None:
            errors.append((name, str(exc)))
            rows.append((name, "", "", "", f"error: {exc.__class__.__name__}"))
            continue
        reports.append((name, rep))
        rows.append((name, rep.potential.degree, rep.n_points,
                     rep.n_multiple, rep.verdict))
    return BatchResult(reports=reports, errors=errors, summary_rows=rows)


def report_json_text(report: AnalysisReport, include_timing: bool = False) -> str:
    """Canonical byte-stable JSON rendering."""
    return json.dumps(report.to_json(include_timing=include_timing),
                      indent=2, sort_keys=True) + "\n"
