"""Command-line front end.

Subcommands::

    momest coeffs KIND A B [--mode canonical|verbatim] [--format text|json]
    momest estimate KIND --input FILE [--column NAME] [--format text|json]
    momest test KIND A0 B0 --input FILE [--sigma METHOD] [--format ...]
    momest simulate KIND A B --n N --replications B --seed S [--out DIR] ...

Exit codes (so pipelines can branch without parsing text):

* 0  success; for ``test``, the omnibus test did not reject at 5%
* 2  input or domain error (unparsable sample, infeasible moments, ...)
* 3  the omnibus test rejected at the 5% level
* 4  the covariance estimate was too close to singular for a joint test

Sample files are UTF-8, one decimal per line; ``#`` starts a comment.  With
``--column NAME`` the input is parsed as a headered CSV instead.  The only
environment variable consulted is ``MOMEST_OUTDIR``, the default output
directory of ``simulate``.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .asymptotics import (CoefficientMode, SigmaMethod,
                          covariance_exact_moments,
                          covariance_exact_quadrature, covariance_plugin,
                          influence_pair)
from .errors import MomestError, SampleParseError, SingularCovarianceError
from .estimation import empirical_moments, estimate
from .laws import LawKind, LawSpec
from .montecarlo import (DEFAULT_SIGMA_METHODS, SimulationConfig,
                         run_simulation)
from .reportio import render_json, write_report
from .significance import marginal_test, omnibus_test
from .special import QuadratureConfig

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REJECT = 3
EXIT_SINGULAR = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momest",
        description="Moment estimation, asymptotic covariances, marginal and "
                    "omnibus tests, and Monte-Carlo calibration runs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_law(p, hypothesized=False):
        p.add_argument("kind", type=LawKind.parse,
                       help="gamma | beta | uniform | fisher")
        names = ("a0", "b0") if hypothesized else ("a", "b")
        p.add_argument(names[0], type=float)
        p.add_argument(names[1], type=float)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    def add_input(p):
        p.add_argument("--input", required=True,
                       help="sample file; one value per line, or CSV with "
                            "--column")
        p.add_argument("--column", default=None,
                       help="read this column of a headered CSV")

    p = sub.add_parser("coeffs",
                       help="influence coefficients and exact covariance")
    add_law(p)
    p.add_argument("--mode", type=CoefficientMode.parse, default="canonical",
                   help="canonical | verbatim (alias: paper)")
    p.add_argument("--panels", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-doublings", type=int, default=16)
    add_format(p)

    p = sub.add_parser("estimate", help="moment estimates from a sample")
    p.add_argument("kind", type=LawKind.parse)
    add_input(p)
    add_format(p)

    p = sub.add_parser("test",
                       help="marginal and omnibus tests of (a0, b0)")
    add_law(p, hypothesized=True)
    add_input(p)
    p.add_argument("--sigma", type=SigmaMethod.parse, default="exact-moments",
                   help="exact-moments | exact-quadrature | plugin")
    p.add_argument("--mode", type=CoefficientMode.parse, default="canonical")
    add_format(p)

    p = sub.add_parser("simulate", help="replicated calibration study")
    add_law(p)
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--replications", "-B", type=int, required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="master seed (required: runs must be reproducible)")
    p.add_argument("--mode", type=CoefficientMode.parse, default="canonical")
    p.add_argument("--sigma-methods", nargs="+", type=SigmaMethod.parse,
                   default=None,
                   help="subset of exact-moments exact-quadrature plugin "
                        "replication")
    p.add_argument("--out", default=None,
                   help="output directory (default: $MOMEST_OUTDIR or "
                        "./momest-report)")
    p.add_argument("--workers", type=int, default=1,
                   help="process count; affects wall clock only, never bytes")
    return parser


def read_sample(path: str, column: Optional[str]) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SampleParseError(f"cannot read {path}: {exc}")
    values = (_parse_csv(text, column, path) if column is not None
              else _parse_lines(text, path))
    if not values:
        raise SampleParseError(f"{path}: no values found")
    return np.array(values)


def _parse_lines(text: str, path: str) -> list[float]:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        payload = line.split("#", 1)[0].strip()
        if not payload:
            continue
        try:
            values.append(float(payload))
        except ValueError:
            raise SampleParseError(
                f"{path}:{lineno}: could not parse {payload!r} as a number")
    return values


def _parse_csv(text: str, column: str, path: str) -> list[float]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or column not in reader.fieldnames:
        raise SampleParseError(
            f"{path}: no CSV column named {column!r} "
            f"(found {reader.fieldnames})")
    values = []
    for lineno, row in enumerate(reader, start=2):
        cell = (row.get(column) or "").strip()
        if not cell:
            continue
        try:
            values.append(float(cell))
        except ValueError:
            raise SampleParseError(
                f"{path}:{lineno}: could not parse {cell!r} as a number")
    return values


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(render_json(payload))
    else:
        print("\n".join(text_lines))


def _cov_dict(sigma) -> dict:
    return {"s11": sigma.s11, "s22": sigma.s22, "s12": sigma.s12,
            "det": sigma.det, "correlation": sigma.correlation,
            "method": sigma.method.value}


def cmd_coeffs(args) -> int:
    law = LawSpec(args.kind, args.a, args.b)
    h, l = influence_pair(law, args.mode)
    cfg = QuadratureConfig(panels=args.panels, tol=args.tol,
                           max_doublings=args.max_doublings)
    sig_m = covariance_exact_moments(law, h, l)
    sig_q = covariance_exact_quadrature(law, h, l, cfg)
    payload = {
        "law": str(law),
        "mode": args.mode.value,
        "influence_a": {"c1": h.c1, "c2": h.c2, "center": h.center},
        "influence_b": {"c1": l.c1, "c2": l.c2, "center": l.center},
        "sigma_exact_moments": _cov_dict(sig_m),
        "sigma_exact_quadrature": _cov_dict(sig_q),
    }
    lines = [
        f"law: {law}   mode: {args.mode.value}",
        f"influence of a_hat: c1={h.c1:.10g} c2={h.c2:.10g} "
        f"center={h.center:.10g}",
        f"influence of b_hat: c1={l.c1:.10g} c2={l.c2:.10g} "
        f"center={l.center:.10g}",
    ]
    for label, sig in (("exact-moments", sig_m), ("exact-quadrature", sig_q)):
        lines.append(
            f"sigma [{label}]: s11={sig.s11:.10g} s22={sig.s22:.10g} "
            f"s12={sig.s12:.10g} det={sig.det:.10g} "
            f"correlation={sig.correlation:.6f}")
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_estimate(args) -> int:
    values = read_sample(args.input, args.column)
    em = empirical_moments(values)
    est = estimate(args.kind, em)
    payload = {
        "law": args.kind.value,
        "n": em.n,
        "moments": {"mean": em.mean, "mean_sq": em.mean_sq,
                    "var_unbiased": em.var_unbiased,
                    "var_biased": em.var_biased},
        "a_hat": est.a_hat,
        "b_hat": est.b_hat,
    }
    lines = [
        f"law: {args.kind.value}   n: {em.n}",
        f"mean={em.mean:.10g} mean_sq={em.mean_sq:.10g} "
        f"S2={em.var_unbiased:.10g} var_biased={em.var_biased:.10g}",
        f"a_hat={est.a_hat:.10g} b_hat={est.b_hat:.10g}",
    ]
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_test(args) -> int:
    law0 = LawSpec(args.kind, args.a0, args.b0)
    values = read_sample(args.input, args.column)
    em = empirical_moments(values)
    est = estimate(args.kind, em)
    h, l = influence_pair(law0, args.mode)
    if args.sigma is SigmaMethod.EXACT_MOMENTS:
        sigma = covariance_exact_moments(law0, h, l)
    elif args.sigma is SigmaMethod.EXACT_QUADRATURE:
        sigma = covariance_exact_quadrature(law0, h, l)
    elif args.sigma is SigmaMethod.PLUGIN:
        sigma = covariance_plugin(values, h, l)
    else:
        raise MomestError(
            "replication sigma needs replicated runs; use simulate")
    rep_a = marginal_test(est.a_hat, args.a0, sigma.s11, em.n,
                          sigma.method.value)
    rep_b = marginal_test(est.b_hat, args.b0, sigma.s22, em.n,
                          sigma.method.value)
    rep_q = omnibus_test(est.a_hat, est.b_hat, args.a0, args.b0, em.n, sigma)

    def rep_dict(r):
        return {"statistic": r.statistic, "df": r.df, "p_value": r.p_value,
                "reject_at_5pct": r.reject_at_5pct,
                "sigma_method": r.sigma_method}

    payload = {
        "law": str(law0), "n": em.n,
        "a_hat": est.a_hat, "b_hat": est.b_hat,
        "marginal_a": rep_dict(rep_a),
        "marginal_b": rep_dict(rep_b),
        "omnibus": rep_dict(rep_q),
    }
    lines = [
        f"H0: {law0}   n={em.n}   sigma={sigma.method.value}",
        f"a_hat={est.a_hat:.10g} b_hat={est.b_hat:.10g}",
        f"marginal a: z={rep_a.statistic:+.6f} p={rep_a.p_value:.6f} "
        f"{'REJECT' if rep_a.reject_at_5pct else 'accept'}",
        f"marginal b: z={rep_b.statistic:+.6f} p={rep_b.p_value:.6f} "
        f"{'REJECT' if rep_b.reject_at_5pct else 'accept'}",
        f"omnibus:    Q={rep_q.statistic:.6f} (df=2) p={rep_q.p_value:.6f} "
        f"{'REJECT' if rep_q.reject_at_5pct else 'accept'}",
    ]
    _emit(args, lines, payload)
    return EXIT_REJECT if rep_q.reject_at_5pct else EXIT_OK


def cmd_simulate(args) -> int:
    law = LawSpec(args.kind, args.a, args.b)
    methods = (tuple(args.sigma_methods) if args.sigma_methods
               else DEFAULT_SIGMA_METHODS)
    cfg = SimulationConfig(law=law, n=args.n, replications=args.replications,
                           master_seed=args.seed,
                           coefficient_mode=args.mode,
                           sigma_methods=methods)
    outdir = args.out or os.environ.get("MOMEST_OUTDIR") or "momest-report"
    report = run_simulation(cfg, workers=max(1, args.workers))
    paths = write_report(report, outdir)
    print(f"{law}  n={cfg.n}  replications={cfg.replications}  "
          f"seed={cfg.master_seed}  mode={cfg.coefficient_mode.value}")
    print(f"feasible={report.feasible}  infeasible={report.infeasible_count}")
    ea, eb = report.error_a, report.error_b
    print(f"errors a: me={ea.me:+.4g} mae={ea.mae:.4g} rmse={ea.rmse:.4g}")
    print(f"errors b: me={eb.me:+.4g} mae={eb.mae:.4g} rmse={eb.rmse:.4g}")
    for key, rate in report.marginal_rates.items():
        print(f"marginal rejection {key}: {100.0 * rate:.2f}%")
    for key, rate in report.omnibus_rates.items():
        shown = "singular" if rate is None else f"{100.0 * rate:.2f}%"
        print(f"omnibus rejection {key}: {shown}")
    print(f"wrote {len(paths)} files to {Path(outdir).resolve()}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"coeffs": cmd_coeffs, "estimate": cmd_estimate,
                "test": cmd_test, "simulate": cmd_simulate}
    try:
        return handlers[args.command](args)
    except SingularCovarianceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except MomestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
