"""Command-line harness.

Subcommands::

    qflip verify axes [--chi R --eta R] [--format json|csv] [--out PATH]
    qflip verify flipper [--seed N] [--format json|csv] [--out PATH]
    qflip verify general --a R --c R --theta R [--mu R --nu R] [--margin R]
    qflip sweep --grid N [--margin R] [--out PATH] [--format json|csv] [--jobs N]
    qflip check-pair --lhs p1,p2,... --rhs q1,q2,...

Exit codes: 0 on success, 1 when an experiment assertion fails, 2 on usage
errors.  ``QFLIP_JOBS`` sets the default worker count for ``sweep``.
"""

from __future__ import annotations

import argparse
import multiprocessing
import os
import sys
from dataclasses import dataclass
from math import pi

import numpy as np

from . import kernels
from .bloch import FlipParams
from .constructions import (
    AXES_PARAMS,
    DEFAULT_DEGENERACY_MARGIN,
    DEFAULT_FLIPPER_SEED,
    VerificationError,
    axes_experiment,
    flipper_experiment,
    general_flip_experiment,
)
from .cubic import CubicSpectrum, cubic_coefficients
from .ordering import DegenerateSpectraError, classify_ordering
from .report import CSV_HEADER, ReportRecord, fmt_float, json_line
from .schmidt import SpectrumTieError, Verdict, incomparable_3dim, verdict


@dataclass(frozen=True)
class SweepConfig:
    """Grid sweep configuration; interior sampling avoids the degenerate
    boundaries by construction (a, c at k/(N+1), theta at k*pi/(N+1))."""

    grid_n: int
    margin: float = DEFAULT_DEGENERACY_MARGIN
    eps_tie: float = 1e-12
    eps_spec: float = 1e-9
    output_path: str | None = None
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.grid_n < 2:
            raise ValueError("grid must be at least 2")
        if not 0.0 < self.margin < 1.0:
            raise ValueError("margin must lie in (0, 1)")
        if self.eps_tie <= 0.0 or self.eps_spec <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def _emit(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_record(record: ReportRecord, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        _emit([CSV_HEADER, record.to_csv_row()], out_path)
    else:
        _emit([record.to_json_line()], out_path)


def _cmd_verify_axes(args) -> int:
    result = axes_experiment(chi=args.chi, eta=args.eta)
    coeff_a, coeff_b, coeff_bp = cubic_coefficients(AXES_PARAMS)
    record = ReportRecord(
        experiment_id="verify-axes",
        params={
            "a": AXES_PARAMS.a,
            "c": AXES_PARAMS.c,
            "theta": AXES_PARAMS.theta,
            "chi": args.chi,
            "eta": args.eta,
        },
        lambda_initial=list(result.lambda_initial),
        lambda_final=list(result.lambda_final),
        A=coeff_a,
        B=coeff_b,
        Bprime=coeff_bp,
        ordering=result.ordering.label if result.ordering else None,
        verdict=str(result.verdict),
        max_analytic_numeric_error=result.max_err,
        degeneracy_flag=False,
    )
    _emit_record(record, args.format, args.out)
    return 0


def _cmd_verify_flipper(args) -> int:
    result = flipper_experiment(seed=args.seed)
    record = ReportRecord(
        experiment_id="verify-flipper",
        params={
            "seed": args.seed,
            "direction": [float(x) for x in result.direction],
            "bloch_initial": [float(x) for x in result.bloch_initial],
            "bloch_final": [float(x) for x in result.bloch_final],
        },
        lambda_initial=list(result.lambda_initial),
        lambda_final=list(result.lambda_final),
        verdict=str(result.verdict),
        max_analytic_numeric_error=result.max_err,
        degeneracy_flag=False,
    )
    _emit_record(record, args.format, args.out)
    return 0


def _cmd_verify_general(args) -> int:
    p = FlipParams(
        a=args.a, c=args.c, theta=args.theta, allow_boundary_theta=args.degenerate_mode
    )
    result = general_flip_experiment(p, mu=args.mu, nu=args.nu, margin=args.margin)
    record = ReportRecord(
        experiment_id="verify-general",
        params={
            "a": p.a,
            "c": p.c,
            "theta": p.theta,
            "mu": args.mu,
            "nu": args.nu,
            "margin": args.margin,
        },
        lambda_initial=list(result.numeric_initial),
        lambda_final=list(result.numeric_final),
        A=result.coeff_a,
        B=result.coeff_b,
        Bprime=result.coeff_bprime,
        ordering=result.ordering.label if result.ordering else None,
        verdict=str(result.verdict),
        max_analytic_numeric_error=result.max_err,
        degeneracy_flag=result.degenerate,
    )
    _emit_record(record, args.format, args.out)
    return 0


def _parse_probs(text: str, name: str) -> np.ndarray:
    try:
        values = np.array([float(x) for x in text.split(",") if x.strip() != ""])
    except ValueError as exc:
        raise ValueError(f"{name}: {exc}") from exc
    if values.size < 2:
        raise ValueError(f"{name} needs at least two entries")
    if np.any(values < -1e-12) or abs(values.sum() - 1.0) > 1e-6:
        raise ValueError(f"{name} must be a probability vector summing to 1")
    return np.sort(values)[::-1]


def _cmd_check_pair(args) -> int:
    lhs = _parse_probs(args.lhs, "--lhs")
    rhs = _parse_probs(args.rhs, "--rhs")
    v = verdict(lhs, rhs)
    closed_form = None
    if lhs.size == 3 and rhs.size == 3:
        try:
            closed_form = incomparable_3dim(lhs, rhs)
        except SpectrumTieError:
            closed_form = None
    record = ReportRecord(
        experiment_id="check-pair",
        params={"closed_form_incomparable": closed_form},
        lambda_initial=[float(x) for x in lhs],
        lambda_final=[float(x) for x in rhs],
        verdict=str(v),
    )
    _emit_record(record, args.format, args.out)
    return 0


def _eval_chunk(chunk):
    a, c, theta = chunk
    return kernels.grid_eval(a, c, theta)


def _run_sweep(cfg: SweepConfig) -> tuple[list[str], dict]:
    n = cfg.grid_n
    ticks = np.arange(1, n + 1) / (n + 1)
    a_axis, c_axis, t_axis = ticks, ticks, ticks * pi
    aa, cc, tt = np.meshgrid(a_axis, c_axis, t_axis, indexing="ij")
    flat_a, flat_c, flat_t = aa.ravel(), cc.ravel(), tt.ravel()

    if cfg.jobs == 1:
        data = kernels.grid_eval(flat_a, flat_c, flat_t)
    else:
        chunks = [
            (flat_a[s], flat_c[s], flat_t[s])
            for s in (
                slice(i * len(flat_a) // cfg.jobs, (i + 1) * len(flat_a) // cfg.jobs)
                for i in range(cfg.jobs)
            )
            if s.start != s.stop
        ]
        with multiprocessing.Pool(cfg.jobs) as pool:
            parts = pool.map(_eval_chunk, chunks)
        data = {
            key: np.concatenate([part[key] for part in parts]) for key in parts[0]
        }

    lines = []
    pattern_counts: dict[str, int] = {}
    non_incomparable = 0
    emitted = 0
    max_err_seen = 0.0
    degeneracy_mask = np.abs(data["degeneracy"]) > cfg.margin
    idx_a, idx_c, idx_t = np.unravel_index(np.arange(flat_a.size), (n, n, n))

    for i in range(flat_a.size):
        if not degeneracy_mask[i]:
            continue
        num_i = data["num_alpha"][i]
        num_f = data["num_beta"][i]
        v = verdict(num_i, num_f, eps=cfg.eps_tie)
        if v is not Verdict.INCOMPARABLE:
            non_incomparable += 1
        spec_i = CubicSpectrum(data["A"][i], data["B"][i], data["theta_i"][i], data["alpha"][i])
        spec_f = CubicSpectrum(data["A"][i], data["Bprime"][i], data["theta_f"][i], data["beta"][i])
        try:
            ordering = classify_ordering(spec_i, spec_f)
            label = ordering.label
            pattern_counts[label] = pattern_counts.get(label, 0) + 1
        except DegenerateSpectraError:
            label = None
        record = ReportRecord(
            experiment_id="sweep",
            params={
                "a": float(flat_a[i]),
                "c": float(flat_c[i]),
                "theta": float(flat_t[i]),
                "ia": int(idx_a[i]),
                "ic": int(idx_c[i]),
                "itheta": int(idx_t[i]),
            },
            lambda_initial=[float(x) for x in num_i],
            lambda_final=[float(x) for x in num_f],
            A=float(data["A"][i]),
            B=float(data["B"][i]),
            Bprime=float(data["Bprime"][i]),
            ordering=label,
            verdict=str(v),
            max_analytic_numeric_error=float(data["max_err"][i]),
            degeneracy_flag=False,
        )
        lines.append(record.to_csv_row() if cfg.fmt == "csv" else record.to_json_line())
        emitted += 1
        if data["max_err"][i] > max_err_seen:
            max_err_seen = float(data["max_err"][i])

    summary = {
        "experiment_id": "sweep-summary",
        "grid": n,
        "margin": cfg.margin,
        "points_total": int(flat_a.size),
        "points_emitted": emitted,
        "points_degenerate_skipped": int(flat_a.size - int(degeneracy_mask.sum())),
        "pattern_counts": dict(sorted(pattern_counts.items())),
        "max_analytic_numeric_error": max_err_seen,
        "non_incomparable_count": non_incomparable,
    }
    return lines, summary


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        grid_n=args.grid,
        margin=args.margin,
        output_path=args.out,
        fmt=args.format,
        jobs=args.jobs,
    )
    lines, summary = _run_sweep(cfg)
    if cfg.fmt == "csv":
        counts = ";".join(f"{k}={v}" for k, v in summary["pattern_counts"].items())
        summary_line = (
            f"# summary points_total={summary['points_total']}"
            f" points_emitted={summary['points_emitted']}"
            f" points_degenerate_skipped={summary['points_degenerate_skipped']}"
            f" max_analytic_numeric_error={fmt_float(summary['max_analytic_numeric_error'])}"
            f" non_incomparable_count={summary['non_incomparable_count']}"
            f" pattern_counts={counts}"
        )
        _emit([CSV_HEADER, *lines, summary_line], cfg.output_path)
    else:
        _emit([*lines, json_line(summary)], cfg.output_path)
    print(
        f"sweep: {summary['points_emitted']} records, "
        f"max analytic/numeric error {summary['max_analytic_numeric_error']:.3e}, "
        f"{summary['non_incomparable_count']} non-incomparable verdicts",
        file=sys.stderr,
    )
    if summary["non_incomparable_count"] > 0:
        print("sweep: non-incomparable verdicts found", file=sys.stderr)
        return 1
    return 0


def _add_output_flags(parser) -> None:
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--out", default=None, help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qflip",
        description="Certify that exact flipping of generic qubit triples forces "
        "LOCC-incomparable bipartite spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run one named experiment")
    vsub = p_verify.add_subparsers(dest="experiment", required=True)

    p_axes = vsub.add_parser("axes", help="x/y/z axis-state experiment")
    p_axes.add_argument("--chi", type=float, default=0.0)
    p_axes.add_argument("--eta", type=float, default=0.0)
    _add_output_flags(p_axes)
    p_axes.set_defaults(func=_cmd_verify_axes)

    p_flip = vsub.add_parser("flipper", help="incomparable pair implies a universal flipper")
    p_flip.add_argument("--seed", type=int, default=DEFAULT_FLIPPER_SEED)
    _add_output_flags(p_flip)
    p_flip.set_defaults(func=_cmd_verify_flipper)

    p_gen = vsub.add_parser("general", help="general three-state family point")
    p_gen.add_argument("--a", type=float, required=True)
    p_gen.add_argument("--c", type=float, required=True)
    p_gen.add_argument("--theta", type=float, required=True)
    p_gen.add_argument("--mu", type=float, default=0.0)
    p_gen.add_argument("--nu", type=float, default=0.0)
    p_gen.add_argument("--margin", type=float, default=DEFAULT_DEGENERACY_MARGIN)
    p_gen.add_argument(
        "--degenerate-mode",
        action="store_true",
        help="allow boundary theta (0 or pi) for deliberately degenerate runs",
    )
    _add_output_flags(p_gen)
    p_gen.set_defaults(func=_cmd_verify_general)

    p_sweep = sub.add_parser("sweep", help="evaluate the family over a full grid")
    p_sweep.add_argument("--grid", type=int, required=True, help="points per axis")
    p_sweep.add_argument("--margin", type=float, default=DEFAULT_DEGENERACY_MARGIN)
    p_sweep.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("QFLIP_JOBS", "1")),
        help="worker processes (default from QFLIP_JOBS, else 1)",
    )
    _add_output_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_pair = sub.add_parser("check-pair", help="verdict on two raw Schmidt vectors")
    p_pair.add_argument("--lhs", required=True, help="comma-separated probabilities")
    p_pair.add_argument("--rhs", required=True, help="comma-separated probabilities")
    _add_output_flags(p_pair)
    p_pair.set_defaults(func=_cmd_check_pair)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))
        return 2  # unreachable; parser.error exits


def entry() -> None:
    sys.exit(main())
