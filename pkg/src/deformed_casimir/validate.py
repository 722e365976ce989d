"""Cross-representation consistency reports and the coefficient audit.

Every method available in a dimension is evaluated at one beta* and
compared against the reference integral.  Exact representations must agree
to a fixed relative tolerance; series are judged against their own error
model.  Series outside their validity window are reported as skipped.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional

from .energy import coefficients as coef
from .energy import compute, methods_for
from .energy.series import LARGE_BETA_MIN, SMALL_BETA_MAX
from .energy.types import BetaStar, Dimension, Method, as_beta
from .errors import ConvergenceError, DomainError, PrecisionFloorError
from .quadrature import QuadratureSpec
from .specialfn import catalan, zeta

OK = "ok"
SKIPPED = "skipped"
FAILED = "failed"

_EXACT = (Method.INTEGRAL, Method.DOUBLE_INTEGRAL, Method.MODE_SUM)
_SERIES = (Method.SERIES_SMALL, Method.SERIES_LARGE)


@dataclass(frozen=True)
class ToleranceMatrix:
    """Pass thresholds.

    ``exact`` is the relative tolerance between two exact representations.
    A series passes when its distance to the reference is within
    ``series_factor`` times its own error estimate (first omitted term plus
    the exponentially small endpoint piece), plus the reference's error.
    """

    exact: float = 1e-7
    series_factor: float = 3.0

    def __post_init__(self):
        if not (self.exact > 0 and self.series_factor > 0):
            raise DomainError("tolerances must be positive")


@dataclass(frozen=True)
class Entry:
    method: Method
    eps_star: Optional[float]
    error_estimate: Optional[float]
    status: str
    note: str = ""


@dataclass(frozen=True)
class Comparison:
    method_a: Method
    method_b: Method
    relative_deviation: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    dimension: Dimension
    beta_star: BetaStar
    entries: tuple
    pairwise: tuple = field(default=())

    @property
    def overall_pass(self) -> bool:
        if not any(e.status == OK for e in self.entries):
            return False
        if any(e.status == FAILED for e in self.entries):
            return False
        return all(c.passed for c in self.pairwise)

    @property
    def skipped(self) -> list[Entry]:
        return [e for e in self.entries if e.status == SKIPPED]

    def to_text(self) -> str:
        verdict = "PASS" if self.overall_pass else "FAIL"
        lines = [
            f"validation dim={int(self.dimension)} beta_star={_fmt(self.beta_star.value)} "
            f"overall={verdict}"
        ]
        for e in self.entries:
            if e.status == OK:
                lines.append(
                    f"entry {e.method.value} eps_star={_fmt(e.eps_star)} "
                    f"err_est={_fmt(e.error_estimate)} {e.status}"
                )
            else:
                lines.append(f"entry {e.method.value} {e.status}: {e.note}")
        for c in self.pairwise:
            lines.append(
                f"pair {c.method_a.value} {c.method_b.value} "
                f"rel_dev={_fmt(c.relative_deviation)} tol={_fmt(c.tolerance)} "
                f"{'PASS' if c.passed else 'FAIL'}"
            )
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """Entry rows in the sweep schema, a blank line, then pairwise rows.

        Skipped and failed entries appear with empty numeric fields.
        """
        out = io.StringIO()
        dim, beta = int(self.dimension), _fmt(self.beta_star.value)
        out.write("dim,beta_star,method,eps_star,err_est\n")
        for e in self.entries:
            value = _fmt(e.eps_star) if e.status == OK else ""
            err = _fmt(e.error_estimate) if e.status == OK else ""
            out.write(f"{dim},{beta},{e.method.value},{value},{err}\n")
        out.write("\n")
        out.write("dim,beta_star,method_a,method_b,rel_dev,tolerance,pass\n")
        for c in self.pairwise:
            out.write(
                f"{dim},{beta},{c.method_a.value},{c.method_b.value},"
                f"{_fmt(c.relative_deviation)},{_fmt(c.tolerance)},"
                f"{'true' if c.passed else 'false'}\n"
            )
        return out.getvalue()


def _fmt(x) -> str:
    return f"{x:.17g}"


def _outside_window(method, b):
    if method is Method.SERIES_SMALL and b > SMALL_BETA_MAX:
        return f"small-beta* series valid for beta* <= {SMALL_BETA_MAX}"
    if method is Method.SERIES_LARGE and b <= LARGE_BETA_MIN:
        return f"large-beta* series valid for beta* > {LARGE_BETA_MIN}"
    return None


def _evaluate(dimension, beta, method, spec):
    reason = _outside_window(method, beta.value)
    if reason:
        return Entry(method, None, None, SKIPPED, reason)
    try:
        res = compute(dimension, beta, method.value, spec)
    except PrecisionFloorError as exc:
        return Entry(method, None, None, SKIPPED, str(exc))
    except (ConvergenceError, DomainError, ArithmeticError) as exc:
        return Entry(method, None, None, FAILED, f"{type(exc).__name__}: {exc}")
    if not (math.isfinite(res.eps_star) and math.isfinite(res.error_estimate)):
        return Entry(method, None, None, FAILED, "non-finite result")
    return Entry(method, res.eps_star, res.error_estimate, OK)


def cross_validate(
    dimension,
    beta_star,
    spec: Optional[QuadratureSpec] = None,
    tolerances: ToleranceMatrix = ToleranceMatrix(),
) -> ValidationReport:
    """Evaluate every method at one point and compare each to the integral.

    Parameters
    ----------
    dimension : Dimension or int
    beta_star : BetaStar or float
    spec : QuadratureSpec, optional
        Accuracy request for the quadrature-based methods.
    tolerances : ToleranceMatrix

    Returns
    -------
    ValidationReport
        Entries in canonical method order.  Failures of individual methods
        are recorded as ``failed`` entries; the report itself never raises
        for numerical trouble.
    """
    dimension = Dimension(dimension)
    beta = as_beta(beta_star)
    spec = spec or QuadratureSpec()
    if beta.value == 0.0:
        entry = Entry(Method.CLOSED_FORM, -1.0, 0.0, OK)
        return ValidationReport(dimension, beta, (entry,), ())

    entries = tuple(_evaluate(dimension, beta, m, spec) for m in methods_for(dimension))
    exact_ok = [e for e in entries if e.status == OK and e.method in _EXACT]
    if not exact_ok:
        return ValidationReport(dimension, beta, entries, ())

    ref = exact_ok[0]
    scale = abs(ref.eps_star)
    pairs = []
    for e in entries:
        if e is ref or e.status != OK:
            continue
        dev = abs(e.eps_star - ref.eps_star) / scale
        if e.method in _SERIES:
            tol = (tolerances.series_factor * e.error_estimate + ref.error_estimate) / scale
        else:
            tol = tolerances.exact
        pairs.append(Comparison(ref.method, e.method, dev, tol, dev <= tol))
    return ValidationReport(dimension, beta, entries, tuple(pairs))


# -- coefficient audit --------------------------------------------------------

@dataclass(frozen=True)
class AuditRow:
    series_id: str
    order: int
    generated: float
    printed: float
    relative_deviation: float
    passed: bool


AUDIT_TOLERANCE = 1e-13


def _printed_table():
    pi = math.pi
    G = catalan()
    z3, z5, z7 = zeta(3), zeta(5), zeta(7)
    return {
        "1D-small": {2: -1 / 20, 4: -1 / 168, 6: -1 / 320, 8: -5 / 1408},
        "1D-large": {1: 3.0, 2: -4.0, 3: pi ** 2 / 4, 5: -pi ** 4 / 120, 7: pi ** 6 / 2016},
        "3D-small": {2: -1 / 7, 4: -3 / 112, 6: -5 / 264},
        "3D-large": {
            0: 0.5 * (math.log(2) - 0.25),
            1: -(pi / 2 - 16 / 15),
            2: pi ** 2 / 24,
        },
        "2D-small": {
            0: z3 / (16 * pi ** 2),
            2: -9 * z5 / (128 * pi ** 4),
            4: -225 * z7 / (2048 * pi ** 6),
        },
        "2D-large": {
            0: (pi / 2 - 2 / 3) / 3,
            1: -(G / 4 - 1 / 24) * pi,
            2: 2 * pi ** 2 / 45,
        },
    }


def _generated_table():
    small = {
        d: {2 * m: float(c) for m, c in enumerate(coef.small_coefficients(d, 5))}
        for d in (1, 2, 3)
    }
    return {
        "1D-small": small[1],
        "1D-large": coef.large_1d(7),
        "3D-small": small[3],
        "3D-large": coef.large_3d(2),
        "3D-large-moments": coef.large_3d_via_moments(2),
        "2D-small": small[2],
        "2D-large": coef.large_2d(2),
    }


def coefficient_audit(tolerance: float = AUDIT_TOLERANCE) -> list[AuditRow]:
    """Compare each printed series coefficient with its general-term generator.

    ``order`` is the power of beta* (small series) or of 1/beta* inside the
    bracket (large series).  The 3D large bracket is checked twice: once
    from the zeta-value form and once from the moments I(n).
    """
    printed = _printed_table()
    printed["3D-large-moments"] = printed["3D-large"]
    generated = _generated_table()
    rows = []
    for series_id, table in printed.items():
        for order, want in table.items():
            got = generated[series_id][order]
            dev = abs(got - want) / abs(want)
            rows.append(AuditRow(series_id, order, got, want, dev, dev <= tolerance))
    return rows


def audit_to_text(rows) -> str:
    lines = [
        f"{r.series_id} order={r.order} generated={_fmt(r.generated)} "
        f"printed={_fmt(r.printed)} rel_dev={r.relative_deviation:.3g} "
        f"{'PASS' if r.passed else 'FAIL'}"
        for r in rows
    ]
    return "\n".join(lines) + "\n"
