"""Command-line front end.

Exit codes: 0 success, 1 validation or audit failure, 2 bad arguments or
domain errors, 3 numerical convergence failure.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import energy
from .energy.types import Dimension, Method, PhysicalSetup
from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureSpec
from .validate import ToleranceMatrix, audit_to_text, coefficient_audit, cross_validate

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

CSV_HEADER = "dim,beta_star,method,eps_star,err_est"
METHOD_CHOICES = ["auto"] + [m.value for m in Method if m is not Method.CLOSED_FORM]


def csv_row(result) -> str:
    return (
        f"{int(result.dimension)},{result.beta_star.value:.17g},{result.method.value},"
        f"{result.eps_star:.17g},{result.error_estimate:.17g}"
    )


@dataclass(frozen=True)
class SweepSpec:
    dimensions: tuple
    beta_min: float
    beta_max: float
    points: int
    scale: str = "logarithmic"
    method: str = "auto"

    def __post_init__(self):
        if not (np.isfinite(self.beta_min) and np.isfinite(self.beta_max)):
            raise DomainError("sweep bounds must be finite")
        if not self.beta_min > 0:
            raise DomainError(f"beta_min must be > 0, got {self.beta_min}")
        if not self.beta_max > self.beta_min:
            raise DomainError("beta_max must exceed beta_min")
        if self.points < 2:
            raise DomainError(f"points must be >= 2, got {self.points}")
        if self.scale not in ("linear", "logarithmic"):
            raise DomainError(f"unknown scale {self.scale!r}")

    def grid(self) -> np.ndarray:
        if self.scale == "linear":
            g = np.linspace(self.beta_min, self.beta_max, self.points)
        else:
            g = np.geomspace(self.beta_min, self.beta_max, self.points)
        g[0], g[-1] = self.beta_min, self.beta_max
        return g


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.rel_tol)


def _point(task):
    dim, beta, method, rel_tol = task
    return csv_row(energy.compute(dim, beta, method, QuadratureSpec(rel_tol=rel_tol)))


def sweep_rows(spec: SweepSpec, rel_tol: float = 1e-12, jobs: int = 1) -> list[str]:
    """CSV rows for a sweep: grouped by dimension, beta* ascending within each."""
    tasks = [
        (d, float(b), spec.method, rel_tol)
        for d in spec.dimensions
        for b in spec.grid()
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_point, tasks))
    return [_point(t) for t in tasks]


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sweep-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- subcommands ------------------------------------------------------------

def cmd_compute(args, out):
    result = energy.compute(args.dim, args.beta_star, args.method, _spec(args), args.order)
    if not args.no_header:
        out.write(CSV_HEADER + "\n")
    out.write(csv_row(result) + "\n")
    return EXIT_OK


def cmd_sweep(args, out):
    spec = SweepSpec(
        tuple(args.dim), args.beta_min, args.beta_max, args.points, args.scale, args.method
    )
    rows = sweep_rows(spec, args.rel_tol, args.jobs)
    text = CSV_HEADER + "\n" + "".join(r + "\n" for r in rows)
    if args.out:
        _write_atomic(args.out, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_validate(args, out):
    tolerances = ToleranceMatrix(args.exact_tol, args.series_factor)
    report = cross_validate(args.dim, args.beta_star, _spec(args), tolerances)
    out.write(report.to_csv() if args.format == "csv" else report.to_text())
    return EXIT_OK if report.overall_pass else EXIT_FAILED


def cmd_physical(args, out):
    setup = PhysicalSetup(args.beta, args.a, args.hbar_c)
    beta_star = energy.beta_star_from_physical(setup)
    result = energy.compute(args.dim, beta_star, "auto", _spec(args))
    out.write("dim,beta_star,eps_star,eps_physical\n")
    out.write(
        f"{args.dim},{beta_star.value:.17g},{result.eps_star:.17g},"
        f"{energy.eps_physical(result, setup):.17g}\n"
    )
    return EXIT_OK


def cmd_audit(args, out):
    rows = coefficient_audit()
    out.write(audit_to_text(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILED


# -- parser -------------------------------------------------------------------

def _positive(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _common(p, dims_many=False):
    if dims_many:
        p.add_argument("--dim", type=int, choices=[1, 2, 3], nargs="+", required=True)
    else:
        p.add_argument("--dim", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--rel-tol", type=_positive, default=1e-12)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deformed-casimir",
        description="Casimir energy of a scalar field with a minimal-length deformation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate eps* at one point")
    _common(p)
    p.add_argument("--beta-star", type=float, required=True)
    p.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    p.add_argument("--order", type=int, default=None,
                   help="series order (highest power kept)")
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="tabulate eps* over a beta* grid")
    _common(p, dims_many=True)
    p.add_argument("--beta-min", type=float, required=True)
    p.add_argument("--beta-max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--scale", choices=["linear", "logarithmic"], default="logarithmic")
    p.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    p.add_argument("--out", default=None, help="CSV path; stdout if omitted")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="cross-check all methods at one point")
    _common(p)
    p.add_argument("--beta-star", type=float, required=True)
    p.add_argument("--exact-tol", type=_positive, default=ToleranceMatrix.exact)
    p.add_argument("--series-factor", type=_positive, default=ToleranceMatrix.series_factor)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("physical", help="convert physical parameters and evaluate")
    _common(p)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--hbar-c", type=float, default=1.0)
    p.set_defaults(func=cmd_physical)

    p = sub.add_parser("audit", help="check printed series coefficients")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
