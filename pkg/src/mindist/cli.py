"""Command line front end: estimation on CSV data and benchmark campaigns.

``mindist estimate {lr,ar,2stage}`` fits user data; ``mindist bench
{lr,ar,2stage}`` runs a seeded Monte Carlo comparison against the classical
baseline and writes a bias/SE/MSE table.

Exit codes: 0 success, 1 estimation or campaign failure, 2 input parse
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from io import StringIO

import numpy as np

from .ar_mde import ARData, koul_ar_mde
from .errors import EstimationError
from .lr_mde import RegressionData, koul_lr_mde
from .measures import measure_from_name
from .simulate import FAMILIES, ErrorDistribution, default_config, monte_carlo
from .two_stage import koul_2stage_mde

EXIT_OK = 0
EXIT_ESTIMATION = 1
EXIT_PARSE = 2


class CsvFormatError(Exception):
    """Malformed input CSV; message names the offending row/column."""


def _read_csv_matrix(path: str, header: bool) -> np.ndarray:
    rows: list[list[float]] = []
    width: int | None = None
    try:
        handle = open(path, newline="")
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        for lineno, record in enumerate(reader, start=1):
            if header and lineno == 1:
                continue
            if not record or all(cell.strip() == "" for cell in record):
                continue
            values: list[float] = []
            for colno, cell in enumerate(record, start=1):
                try:
                    values.append(float(cell))
                except ValueError as exc:
                    raise CsvFormatError(
                        f"row {lineno}, column {colno}: not a number: {cell!r}"
                    ) from exc
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise CsvFormatError(
                    f"row {lineno}: expected {width} columns, got {len(values)}"
                )
            rows.append(values)
    if not rows:
        raise CsvFormatError(f"{path} contains no data rows")
    return np.asarray(rows, dtype=float)


def _regression_input(matrix: np.ndarray, path: str) -> RegressionData:
    if matrix.shape[1] < 2:
        raise CsvFormatError(
            f"{path}: regression input needs a response column plus at least "
            f"one covariate column, got {matrix.shape[1]} column(s)"
        )
    return RegressionData(matrix[:, 0], matrix[:, 1:])


def _series_input(matrix: np.ndarray, path: str) -> np.ndarray:
    if matrix.shape[1] != 1:
        raise CsvFormatError(
            f"{path}: autoregression input must have exactly one column, got {matrix.shape[1]}"
        )
    return matrix[:, 0]


def _diag_doc(diag) -> dict:
    return {
        "iterations": diag.iterations,
        "converged": diag.converged,
        "simplex_spread": diag.simplex_spread,
    }


def _estimate_doc(args) -> dict:
    matrix = _read_csv_matrix(args.input, args.header)
    if args.kind == "lr":
        data = _regression_input(matrix, args.input)
        fit = koul_lr_mde(data, measure=measure_from_name(args.measure))
        return {
            "betahat": fit.betahat.tolist(),
            "residuals": fit.residuals.tolist(),
            "objective": fit.objective_at_min,
            "diagnostics": _diag_doc(fit.diagnostics),
        }
    if args.kind == "ar":
        series = _series_input(matrix, args.input)
        fit = koul_ar_mde(ARData(series, args.order), measure_from_name(args.measure))
        return {
            "rhohat": fit.rhohat.tolist(),
            "residuals": fit.residuals.tolist(),
            "objective": fit.objective_at_min,
            "diagnostics": _diag_doc(fit.diagnostics),
        }
    data = _regression_input(matrix, args.input)
    result = koul_2stage_mde(
        data.y,
        data.x,
        args.order,
        reg_measure=measure_from_name(args.reg_measure),
        ar_measure=measure_from_name(args.ar_measure),
    )
    return {
        stage_name: {
            "betahat": stage.betahat.tolist(),
            "rhohat": stage.rhohat.tolist(),
            "residuals": stage.residuals.tolist(),
            "rho_degenerate": stage.rho_degenerate,
        }
        for stage_name, stage in (("stage1", result.stage1), ("stage2", result.stage2))
    }


def _doc_to_csv(doc: dict) -> str:
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "index", "value"])

    def emit(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key, sub in value.items():
                emit(f"{prefix}.{key}" if prefix else key, sub)
        elif isinstance(value, list):
            for i, sub in enumerate(value):
                writer.writerow([prefix, i, repr(sub)])
        else:
            writer.writerow([prefix, "", repr(value)])

    emit("", doc)
    return buf.getvalue()


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as handle:
            handle.write(text)


def cmd_estimate(args) -> int:
    try:
        doc = _estimate_doc(args)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    text = json.dumps(doc, indent=2) if args.format == "json" else _doc_to_csv(doc)
    _write_output(text, args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    dist = ErrorDistribution(args.dist, 0.0, args.scale)
    cfg = default_config(
        args.kind,
        dist,
        replications=args.reps,
        seed=args.seed,
        n=args.n,
        reg_measure=getattr(args, "reg_measure", None) or args.measure,
        ar_measure=getattr(args, "ar_measure", None) or args.measure,
    )
    try:
        report = monte_carlo(cfg, workers=args.workers)
    except (EstimationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    text = report.to_json() if args.format == "json" else report.to_csv()
    _write_output(text, args.output)
    return EXIT_OK


def _add_common_output_args(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument(
        "--format", choices=("csv", "json"), default=default_format, help="output format"
    )
    parser.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mindist",
        description="Minimum distance estimation for regression and autoregression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="fit estimators to CSV data")
    est_sub = est.add_subparsers(dest="kind", required=True)

    est_lr = est_sub.add_parser(
        "lr", help="linear regression (CSV: response first, covariates after)"
    )
    est_lr.add_argument("input", help="input CSV path")
    est_lr.add_argument("--measure", choices=("lebesgue", "degenerate"), default="lebesgue")
    est_lr.add_argument("--header", action="store_true", help="skip the first CSV row")
    _add_common_output_args(est_lr, "json")
    est_lr.set_defaults(func=cmd_estimate)

    est_ar = est_sub.add_parser("ar", help="autoregression (single-column CSV)")
    est_ar.add_argument("input", help="input CSV path")
    est_ar.add_argument("--order", type=int, required=True, help="autoregression order")
    est_ar.add_argument("--measure", choices=("lebesgue", "degenerate"), default="lebesgue")
    est_ar.add_argument("--header", action="store_true", help="skip the first CSV row")
    _add_common_output_args(est_ar, "json")
    est_ar.set_defaults(func=cmd_estimate)

    est_2s = est_sub.add_parser(
        "2stage", help="regression with AR errors (CSV: response first, covariates after)"
    )
    est_2s.add_argument("input", help="input CSV path")
    est_2s.add_argument("--order", type=int, required=True, help="AR order of the errors")
    est_2s.add_argument("--reg-measure", choices=("lebesgue", "degenerate"), default="lebesgue")
    est_2s.add_argument("--ar-measure", choices=("lebesgue", "degenerate"), default="lebesgue")
    est_2s.add_argument("--header", action="store_true", help="skip the first CSV row")
    _add_common_output_args(est_2s, "json")
    est_2s.set_defaults(func=cmd_estimate)

    bench = sub.add_parser("bench", help="run a seeded Monte Carlo comparison")
    bench_sub = bench.add_subparsers(dest="kind", required=True)
    for kind, help_text in (
        ("lr", "OLS vs regression MD (n=50, p=3)"),
        ("ar", "CLS vs autoregression MD (n=100, q=4)"),
        ("2stage", "Cochrane-Orcutt vs two-stage MD (n=50, p=4, q=1)"),
    ):
        b = bench_sub.add_parser(kind, help=help_text)
        b.add_argument("--n", type=int, default=None, help="sample size override")
        b.add_argument("--reps", type=int, default=300, help="number of replications")
        b.add_argument("--seed", type=int, default=1, help="campaign seed")
        b.add_argument("--dist", choices=FAMILIES, default="normal")
        b.add_argument("--scale", type=float, default=5.0, help="error scale")
        b.add_argument("--workers", type=int, default=1, help="worker processes")
        b.add_argument("--measure", choices=("lebesgue", "degenerate"), default="lebesgue")
        if kind == "2stage":
            b.add_argument(
                "--reg-measure", choices=("lebesgue", "degenerate"), default=None
            )
            b.add_argument(
                "--ar-measure", choices=("lebesgue", "degenerate"), default=None
            )
        _add_common_output_args(b, "csv")
        b.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
