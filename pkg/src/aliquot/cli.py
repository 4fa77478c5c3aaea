"""Command-line toolkit: certified constants, means, traces, self-tests.

Verbs:

  alpha     upper bound for the per-prime constant (params N, L, M)
  beta      lower bound for the signed-series constant (per-j params)
  lambda    alpha + beta + their difference, the aliquot growth constant
  means     arithmetic and logarithmic means of s(n)/n by residue class
  trace     one aliquot sequence with classification
  selftest  quick oracle suite

Numeric flags accept scientific notation (1e6).  A JSON config file may
supply any flag's value; explicit flags override it.  Reports are written
as JSON (always) and CSV (tabular verbs) under --out.  Exit status: 0 on
success, 1 on parameter errors, 2 on resource or effort errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .alpha import AlphaParams, AlphaResult, alpha_upper_bound
from .beta import BetaJConfig, BetaSummary, beta_lower
from .errors import ParameterError, ResourceError, UnresolvedCofactorError
from .means import CSV_HEADER, mean_report
from .trajectory import trace

PAPER_E = (1.0, 0.75, 0.60, 0.48, 0.35, 0.28, 0.20, 0.15)
DEFAULT_ALPHA = {"N": 10**6, "L": 15, "M": 15}
DEFAULT_BETA_N = 10**7
DEFAULT_J = 8


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_flag(text: str) -> int:
    """Integer flag accepting scientific notation ('1e6')."""
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
        return int(value)


@dataclass
class LambdaReport:
    alpha_result: AlphaResult
    beta_result: BetaSummary
    lambda_upper: float
    mu_upper: float
    provenance: dict

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "lambda_upper": self.lambda_upper,
            "mu_upper": self.mu_upper,
            "alpha": self.alpha_result.to_json_dict(),
            "beta": self.beta_result.to_json_dict(),
            "provenance": self.provenance,
        }


def combine_lambda(
    alpha_result: AlphaResult, beta_result: BetaSummary, provenance: dict | None = None
) -> LambdaReport:
    """lambda <= alpha upper bound - beta lower bound, rounded pessimistically.

    mu = e^lambda is rounded upward as well; mu_upper < 1 exactly when
    lambda_upper < 0.
    """
    lam = alpha_result.upper_bound - beta_result.lower_bound
    lam = math.nextafter(lam, math.inf)
    mu = math.exp(lam)
    mu = math.nextafter(math.nextafter(mu, math.inf), math.inf)
    return LambdaReport(alpha_result, beta_result, lam, mu, provenance or {})


def _write_json(out_dir: Path, name: str, doc: dict) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.json"
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path


def _write_csv(out_dir: Path, name: str, header: list, rows: list[list]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _merged(args: argparse.Namespace, key: str, default):
    """Flag value, else config-file value, else default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    if args.config_values and key in args.config_values:
        return args.config_values[key]
    return default


def _beta_configs(args) -> list[BetaJConfig]:
    J = _merged(args, "J", DEFAULT_J)
    N = _merged(args, "Nj", DEFAULT_BETA_N)
    e_spec = _merged(args, "e", None)
    if e_spec is None:
        e_values = list(PAPER_E[:J])
        if J > len(PAPER_E):
            raise ParameterError(f"no default exponents beyond J={len(PAPER_E)}; pass --e")
    elif isinstance(e_spec, str):
        e_values = [float(t) for t in e_spec.split(",")]
    else:
        e_values = [float(t) for t in e_spec]
    if len(e_values) != J:
        raise ParameterError(f"expected {J} exponents, got {len(e_values)}")
    K2 = _merged(args, "K2", 64)
    return [BetaJConfig(j + 1, N, e_values[j], K2) for j in range(J)]


def _run_alpha(args, out_dir: Path) -> AlphaResult:
    params = AlphaParams(
        N=_merged(args, "N", DEFAULT_ALPHA["N"]),
        L=_merged(args, "L", DEFAULT_ALPHA["L"]),
        M=_merged(args, "M", DEFAULT_ALPHA["M"]),
    )
    result = alpha_upper_bound(
        params, block_size=args.block_size, workers=args.workers
    )
    doc = result.to_json_dict()
    doc["provenance"] = _provenance(args, {"N": params.N, "L": params.L, "M": params.M})
    path = _write_json(out_dir, "alpha", doc)
    print(f"alpha upper bound: {result.upper_bound!r}")
    print(f"  finite sums {result.sums.value!r} (radius {result.sums.error_radius:.3e})")
    print(f"  tail total  {result.tail_total!r}")
    print(f"report: {path}")
    return result


def _run_beta(args, out_dir: Path) -> BetaSummary | None:
    configs = _beta_configs(args)
    summary = beta_lower(
        configs,
        s_mode=_merged(args, "s_mode", "auto"),
        node_budget=_merged(args, "node_budget", 500_000),
        block_size=args.block_size,
        workers=args.workers,
        checkpoint_dir=args.checkpoint_dir,
        stop_after_blocks=args.stop_after_blocks,
    )
    if summary is None:
        print("beta run incomplete; progress checkpointed, rerun to resume")
        _write_json(out_dir, "beta", {"schema_version": 1, "status": "incomplete"})
        return None
    doc = summary.to_json_dict()
    doc["provenance"] = _provenance(
        args, {"configs": [r.to_json_dict() for r in summary.reports]}
    )
    path = _write_json(out_dir, "beta", doc)
    rows = [
        [
            r.config.j,
            r.config.N,
            r.config.e,
            repr(r.main.value),
            repr(r.main.error_radius),
            r.s_mode,
            r.s_set_size if r.s_set_size is not None else "",
            repr(r.s_corr.value),
            repr(r.s_bound),
            repr(r.error),
            repr(r.contribution_lower),
        ]
        for r in summary.reports
    ]
    _write_csv(
        out_dir,
        "beta",
        ["j", "N", "e", "main", "main_radius", "s_mode", "s_size", "s_correction",
         "s_tail_bound", "error_term", "contribution_lower"],
        rows,
    )
    print(f"beta lower bound: {summary.lower_bound!r}")
    print(f"report: {path}")
    return summary


def _provenance(args, params: dict) -> dict:
    return {
        "version": __version__,
        "params": params,
        "workers": args.workers,
        "block_size": args.block_size,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def _cmd_lambda(args, out_dir: Path) -> int:
    alpha_result = _run_alpha(args, out_dir)
    beta_result = _run_beta(args, out_dir)
    if beta_result is None:
        return 0
    report = combine_lambda(
        alpha_result,
        beta_result,
        _provenance(args, {"alpha": alpha_result.to_json_dict()["params"]}),
    )
    path = _write_json(out_dir, "lambda", report.to_json_dict())
    print(f"lambda upper bound: {report.lambda_upper!r}")
    print(f"mu upper bound:     {report.mu_upper!r}")
    print(f"report: {path}")
    return 0


def _cmd_means(args, out_dir: Path) -> int:
    mean_class = _merged(args, "mean_class", "even")
    N = _merged(args, "N", 10**4)
    report = mean_report(mean_class, N, block_size=args.block_size, workers=args.workers)
    doc = report.to_json_dict()
    doc["provenance"] = _provenance(args, {"class": mean_class, "N": N})
    path = _write_json(out_dir, "means", doc)
    _write_csv(out_dir, "means", CSV_HEADER, [report.csv_row()])
    print(f"arithmetic mean: {report.arithmetic.value!r} (limit {report.closed_form_limit!r})")
    print(f"log mean:        {report.logarithmic.value!r}")
    print(f"report: {path}")
    return 0


def _cmd_trace(args, out_dir: Path) -> int:
    record = trace(args.start, max_steps=_merged(args, "max_steps", 100),
                   rho_budget=_merged(args, "rho_budget", 500_000))
    doc = record.to_json_dict()
    path = _write_json(out_dir, "trace", doc)
    kind = record.classification.kind
    extra = ""
    if record.classification.cycle_length is not None:
        extra = (f" (length {record.classification.cycle_length},"
                 f" entry {record.classification.cycle_entry})")
    print(f"start {args.start}: {len(record.terms)} terms, {kind}{extra}")
    print(f"report: {path}")
    return 0


def _cmd_selftest(args, out_dir: Path) -> int:
    from .selftest import run_selftest

    ok = run_selftest()
    return 0 if ok else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="alq", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"alq {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--out", default="reports", help="report directory")
        p.add_argument("--config", default=None, help="JSON file with flag values")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--block-size", dest="block_size", type=_int_flag, default=1 << 20)

    p_alpha = sub.add_parser("alpha", help="certified upper bound for alpha")
    common(p_alpha)
    p_alpha.add_argument("--N", type=_int_flag, default=None, help="prime cutoff")
    p_alpha.add_argument("--L", type=_int_flag, default=None, help="dyadic depth")
    p_alpha.add_argument("--M", type=_int_flag, default=None, help="odd prime depth")

    def beta_flags(p):
        p.add_argument("--J", type=_int_flag, default=None, help="number of j terms")
        p.add_argument("--Nj", type=_int_flag, default=None, help="odd-sum cutoff (even)")
        p.add_argument("--e", default=None, help="comma-separated exponents, one per j")
        p.add_argument("--K2", type=_int_flag, default=None, help="dyadic truncation depth")
        p.add_argument("--s-mode", dest="s_mode", choices=("auto", "enumerate", "bound"),
                       default=None)
        p.add_argument("--node-budget", dest="node_budget", type=_int_flag, default=None)
        p.add_argument("--checkpoint-dir", dest="checkpoint_dir", default=None)
        p.add_argument("--stop-after-blocks", dest="stop_after_blocks", type=_int_flag,
                       default=None)

    p_beta = sub.add_parser("beta", help="certified lower bound for beta")
    common(p_beta)
    beta_flags(p_beta)

    p_lambda = sub.add_parser("lambda", help="alpha, beta, and their difference")
    common(p_lambda)
    p_lambda.add_argument("--N", type=_int_flag, default=None, help="alpha prime cutoff")
    p_lambda.add_argument("--L", type=_int_flag, default=None)
    p_lambda.add_argument("--M", type=_int_flag, default=None)
    beta_flags(p_lambda)

    p_means = sub.add_parser("means", help="means of s(n)/n by residue class")
    common(p_means)
    p_means.add_argument("--class", dest="mean_class", choices=("all", "even", "odd"),
                         default=None)
    p_means.add_argument("--N", type=_int_flag, default=None)

    p_trace = sub.add_parser("trace", help="trace one aliquot sequence")
    common(p_trace)
    p_trace.add_argument("start", type=_int_flag)
    p_trace.add_argument("--max-steps", dest="max_steps", type=_int_flag, default=None)
    p_trace.add_argument("--rho-budget", dest="rho_budget", type=_int_flag, default=None)

    p_self = sub.add_parser("selftest", help="run the oracle self-test suite")
    common(p_self)

    return parser


def _cmd_alpha(args, out_dir: Path) -> int:
    _run_alpha(args, out_dir)
    return 0


def _cmd_beta(args, out_dir: Path) -> int:
    # An early stop is a successful partial step; resuming finishes it.
    _run_beta(args, out_dir)
    return 0


_COMMANDS = {
    "alpha": _cmd_alpha,
    "beta": _cmd_beta,
    "lambda": _cmd_lambda,
    "means": _cmd_means,
    "trace": _cmd_trace,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.config_values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                args.config_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"cannot read config {args.config}: {exc}", file=sys.stderr)
            return 1
    out_dir = Path(args.out)
    try:
        return _COMMANDS[args.verb](args, out_dir)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 1
    except (ResourceError, UnresolvedCofactorError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
