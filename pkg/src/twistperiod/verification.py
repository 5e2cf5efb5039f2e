"""Numerical verification of the twisted-period relation, single and bulk.

For a minimal model E and square-free d, the relation under test is

    d > 0:  Omega(E^d) = (utilde / sqrt(d)) * Omega(E)
    d < 0:  Omega(E^d) = (utilde / sqrt(|d|)) * c_inf(E^d) * |Omega^-(E)|

where E^d is the quadratic twist, utilde the scaling factor of its minimal
model, Omega the real period and Omega^- the imaginary period. Both sides are
compared in absolute value at a configurable precision and tolerance.

scan() runs the per-prime table over a stream of curves and twist parameters,
optionally escalating to a full period verification when a filter on the
utilde result matches, writing JSON-lines incrementally so an interrupted run
can resume by skipping pairs already present in the results file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TextIO, Union

from mpmath import mp, mpf

from .minimality import UTildeResult, compute_utilde, minimize
from .periods import (
    DEFAULT_PRECISION_BITS,
    _check_precision,
    _nstr,
    imaginary_period,
    real_components,
    real_period,
)
from .twisting import twist
from .weierstrass import WeierstrassModel

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one (curve, d) verification."""

    curve: WeierstrassModel
    d: int
    utilde: str
    case_labels: list[str]
    lhs: mpf
    rhs: mpf
    abs_rel_error: mpf
    passed: bool
    precision_bits: int

    def to_json_dict(self) -> dict:
        with mp.workprec(self.precision_bits):
            return {
                "curve": [str(a) for a in self.curve.ainvs],
                "d": self.d,
                "utilde": self.utilde,
                "case_labels": list(self.case_labels),
                "lhs": _nstr(self.lhs),
                "rhs": _nstr(self.rhs),
                "abs_rel_error": mp.nstr(self.abs_rel_error, 8),
                "passed": self.passed,
                "precision_bits": self.precision_bits,
            }


def verify_twist_period_relation(
    m: WeierstrassModel,
    d: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Measure both sides of the twisted-period relation for (m, d).

    m is minimized first, so the report refers to the curve m defines rather
    than the particular model. Passing means the relative gap between the two
    sides is at most `tolerance`.
    """
    precision_bits = _check_precision(precision_bits)
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    minimal = minimize(m).minimal
    report = compute_utilde(minimal, d)
    twisted = twist(minimal, d)
    with mp.workprec(precision_bits + 16):
        utilde = mpf(report.utilde.numerator) / report.utilde.denominator
        lhs = real_period(twisted, precision_bits)
        if d > 0:
            rhs = utilde / mp.sqrt(d) * real_period(minimal, precision_bits)
        else:
            omega_minus, _, _ = imaginary_period(minimal, precision_bits)
            rhs = (
                utilde
                / mp.sqrt(-d)
                * real_components(twisted)
                * abs(mp.im(omega_minus))
            )
        abs_rel_error = abs(lhs - rhs) / abs(rhs)
        passed = bool(abs_rel_error <= mpf(tolerance))
    return VerificationReport(
        curve=m,
        d=d,
        utilde=str(report.utilde),
        case_labels=report.case_labels(),
        lhs=lhs,
        rhs=rhs,
        abs_rel_error=abs_rel_error,
        passed=passed,
        precision_bits=precision_bits,
    )


# ---------------------------------------------------------------------------
# Bulk scanning
# ---------------------------------------------------------------------------

FilterFn = Callable[[UTildeResult], bool]


def _has_odd_prime_factor(report: UTildeResult) -> bool:
    n = abs(int(2 * report.utilde))
    while n % 2 == 0:
        n //= 2
    return n > 1


FILTERS: dict[str, FilterFn] = {
    "all": lambda report: True,
    "none": lambda report: False,
    "odd-prime": _has_odd_prime_factor,
    "nontrivial": lambda report: report.utilde != 1,
}

CurveEntry = Union[WeierstrassModel, tuple[str, WeierstrassModel]]


def iter_curve_file(path: str) -> Iterable[dict]:
    """Parse a JSON-lines curve file into {'label', 'model'} dicts.

    Each line is either a coefficient array ([a1,a2,a3,a4,a6] or short [A,B])
    or an object {"label": ..., "curve": [...]}. Malformed or singular lines
    yield {'label', 'error'} entries instead of raising, so a scan can record
    them and keep going.
    """
    with open(path, "r", encoding="utf-8") as handle:
        for index, line in enumerate(handle):
            line = line.strip()
            if not line:
                continue
            label = f"curve-{index}"
            try:
                data = json.loads(line)
                if isinstance(data, dict):
                    label = str(data.get("label", label))
                    coeffs = data["curve"]
                else:
                    coeffs = data
                yield {"label": label, "model": WeierstrassModel.from_ainvs(coeffs)}
            except Exception as exc:  # recorded, never fatal
                yield {"label": label, "error": f"{type(exc).__name__}: {exc}"}


def _existing_keys(path: str) -> set[tuple[str, Optional[int]]]:
    keys: set[tuple[str, Optional[int]]] = set()
    if not path or not os.path.exists(path):
        return keys
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                keys.add((record["label"], record.get("d")))
            except (json.JSONDecodeError, KeyError):
                continue
    return keys


def _normalize_entries(curves: Iterable[CurveEntry | dict]) -> Iterable[dict]:
    for index, entry in enumerate(curves):
        if isinstance(entry, dict):
            yield entry
        elif isinstance(entry, WeierstrassModel):
            yield {"label": f"curve-{index}", "model": entry}
        else:
            label, model = entry
            yield {"label": str(label), "model": model}


def scan(
    curves: Iterable[CurveEntry | dict],
    d_values: Iterable[int],
    filter: Union[str, FilterFn] = "odd-prime",
    precision_bits: int = DEFAULT_PRECISION_BITS,
    tolerance: float = DEFAULT_TOLERANCE,
    results_path: Optional[str] = None,
    resume: bool = True,
    stream: Optional[TextIO] = None,
) -> list[dict]:
    """Run the twist table (and, when the filter matches, full verification)
    over every (curve, d) pair.

    Pairs already present in `results_path` are skipped when `resume` is set,
    and each finished record is appended and flushed immediately, so an
    interrupted scan can be rerun with the same arguments. Per-pair failures
    become {'error': ...} records rather than aborting the scan. Records come
    back (and are written) in input order, d-major within each curve.
    """
    if isinstance(filter, str):
        try:
            filter_fn = FILTERS[filter]
        except KeyError:
            raise ValueError(
                f"unknown filter {filter!r}; available: {sorted(FILTERS)}"
            ) from None
    else:
        filter_fn = filter
    d_list = [int(d) for d in d_values]
    done = _existing_keys(results_path) if (resume and results_path) else set()
    records: list[dict] = []
    out = stream
    opened = None
    if results_path is not None:
        opened = open(results_path, "a", encoding="utf-8")
        out = opened
    try:
        for entry in _normalize_entries(curves):
            label = entry["label"]
            if "error" in entry:
                record = {"label": label, "d": None, "error": entry["error"]}
                if (label, None) not in done:
                    _emit(record, records, out)
                continue
            model = entry["model"]
            for d in d_list:
                if (label, d) in done:
                    continue
                record = {"label": label, "curve": [str(a) for a in model.ainvs], "d": d}
                try:
                    report = compute_utilde(model, d)
                    record.update(report.to_json_dict())
                    if filter_fn(report):
                        verification = verify_twist_period_relation(
                            model, d, precision_bits, tolerance
                        )
                        vdict = verification.to_json_dict()
                        record.update(
                            verified=True,
                            passed=vdict["passed"],
                            lhs=vdict["lhs"],
                            rhs=vdict["rhs"],
                            abs_rel_error=vdict["abs_rel_error"],
                        )
                    else:
                        record.update(verified=False, passed=None)
                except Exception as exc:  # recorded, never fatal
                    record["error"] = f"{type(exc).__name__}: {exc}"
                _emit(record, records, out)
    finally:
        if opened is not None:
            opened.close()
    return records


def _emit(record: dict, records: list[dict], out: Optional[TextIO]) -> None:
    records.append(record)
    if out is not None:
        out.write(json.dumps(record) + "\n")
        out.flush()
