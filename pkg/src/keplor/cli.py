"""Command-line frontend: every library computation behind one subcommand.

Output is a deterministic envelope: a single JSON object (sorted keys, floats
in shortest round-trip form) or line-delimited key=value text with
``--format text``.  Exit codes: 0 ok, 1 domain/validation error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable, Optional

from . import bayes_prior, contingency, effect_bounds, kepler
from .errors import DomainError, KeplorError

__all__ = ["build_parser", "run", "main"]


def _counts_argument(text: str) -> tuple[int, int, int, int]:
    parts = [piece.strip() for piece in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"expected four comma-separated counts n11,n12,n21,n22, got {text!r}"
        )
    counts = []
    for piece in parts:
        try:
            value = int(piece)
        except ValueError:
            raise argparse.ArgumentTypeError(f"count {piece!r} is not an integer")
        if value < 0:
            raise argparse.ArgumentTypeError(f"count {piece!r} is negative")
        counts.append(value)
    return tuple(counts)


def _add_format(parser: argparse.ArgumentParser, top_level: bool = False) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "text"),
        default="json" if top_level else argparse.SUPPRESS,
        help="output rendering (default json)",
    )


def _table_inputs(args: argparse.Namespace) -> dict:
    inputs: dict[str, Any] = {"correction": bool(args.correction)}
    if args.counts is not None:
        inputs["counts"] = ",".join(str(c) for c in args.counts)
    else:
        inputs["file"] = args.file
    return inputs


def _table_results(args: argparse.Namespace) -> dict:
    if args.counts is not None:
        table = contingency.TwoByTwoTable(*args.counts)
    else:
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                content = handle.read()
        except OSError as exc:
            raise DomainError(f"cannot read table file {args.file!r}: {exc}") from exc
        table = contingency.TwoByTwoTable.from_text(content.strip())
    proportions = contingency.estimate_proportions(table)
    estimate = contingency.estimate_odds_ratio(table, args.correction)
    return {
        "exposure_cases": proportions.exposure_cases,
        "exposure_controls": proportions.exposure_controls,
        "case_fraction": proportions.case_fraction,
        "total": proportions.total,
        "odds_ratio": estimate.odds_ratio,
        "log_odds": estimate.log_odds,
        "t_statistic": contingency.t_statistic(table, args.correction),
    }


def _validate_bounds(args: argparse.Namespace) -> Optional[str]:
    or_mode = args.or_value is not None
    pq_mode = args.p is not None or args.q is not None
    risk_mode = args.risk_exposed is not None or args.risk_unexposed is not None
    if int(or_mode) + int(pq_mode) + int(risk_mode) != 1:
        return (
            "choose exactly one input mode: --or, --p/--q, or "
            "--risk-exposed/--risk-unexposed"
        )
    if pq_mode and (args.p is None or args.q is None):
        return "--p and --q must be given together"
    if risk_mode and (args.risk_exposed is None or args.risk_unexposed is None):
        return "--risk-exposed and --risk-unexposed must be given together"
    if args.rr is not None and not or_mode:
        return "--rr applies only with --or"
    if args.prevalence is not None and not pq_mode:
        return "--prevalence applies only with --p/--q"
    if args.exposure is not None and not risk_mode:
        return "--exposure applies only with --risk-exposed/--risk-unexposed"
    return None


def _bounds_inputs(args: argparse.Namespace) -> dict:
    inputs: dict[str, Any] = {}
    for key, value in (
        ("or", args.or_value),
        ("rr", args.rr),
        ("p", args.p),
        ("q", args.q),
        ("prevalence", args.prevalence),
        ("risk_exposed", args.risk_exposed),
        ("risk_unexposed", args.risk_unexposed),
        ("exposure", args.exposure),
    ):
        if value is not None:
            inputs[key] = value
    return inputs


def _bounds_results(args: argparse.Namespace) -> dict:
    if args.or_value is not None:
        odds_ratio = args.or_value
        ceiling = effect_bounds.max_standardized_effect(odds_ratio)
        log_odds = math.log(odds_ratio)
        optimum = effect_bounds.optimal_risk(odds_ratio)
        results = {
            "log_odds": log_odds,
            "max_standardized_effect": ceiling,
            "bound_curve": effect_bounds.bound_curve(log_odds),
            "bound_curve_derivative": effect_bounds.bound_curve_derivative(log_odds),
            "optimal_risk_exposed": optimum.risk_exposed,
            "optimal_risk_unexposed": optimum.risk_unexposed,
            "optimal_exposure": optimum.exposure,
        }
        if args.rr is not None:
            results["min_variance_exposure"] = effect_bounds.min_variance_exposure(
                args.rr, odds_ratio
            )
        return results
    if args.p is not None:
        p, q = args.p, args.q
        for name, value in (("p", p), ("q", q)):
            if not 0.0 < value < 1.0:
                raise DomainError(f"--{name} must lie in (0, 1), got {value!r}")
        odds_ratio = (p / (1.0 - p)) / (q / (1.0 - q))
        w_min = effect_bounds.min_variance_prevalence(p, q)
        prevalence = args.prevalence if args.prevalence is not None else w_min
        risks = contingency.cohort_to_risk(
            contingency.CohortParams(p, q, prevalence)
        )
        return {
            "odds_ratio": odds_ratio,
            "max_standardized_effect": effect_bounds.max_standardized_effect(
                odds_ratio
            ),
            "min_variance_prevalence": w_min,
            "sigma_at_min": math.sqrt(
                effect_bounds.sigma2_by_prevalence(w_min, p, q)
            ),
            "prevalence_used": prevalence,
            "risk_exposed": risks.risk_exposed,
            "risk_unexposed": risks.risk_unexposed,
            "exposure": risks.exposure,
            "standardized_effect": effect_bounds.standardized_effect(risks),
        }
    exposure = args.exposure if args.exposure is not None else 0.5
    risks = contingency.RiskParams(args.risk_exposed, args.risk_unexposed, exposure)
    summary = effect_bounds.summarize_risk(risks)
    cohort = contingency.risk_to_cohort(risks)
    v_min = effect_bounds.min_variance_exposure(
        summary.risk_ratio, summary.odds_ratio
    )
    return {
        "odds_ratio": summary.odds_ratio,
        "risk_ratio": summary.risk_ratio,
        "log_odds": summary.log_odds,
        "sigma": summary.sigma,
        "standardized_effect": summary.standardized,
        "exposure_cases": cohort.exposure_cases,
        "exposure_controls": cohort.exposure_controls,
        "prevalence": cohort.prevalence,
        "min_variance_exposure": v_min,
        "sigma_at_min": math.sqrt(
            effect_bounds.sigma2_by_exposure(
                v_min, args.risk_exposed, args.risk_unexposed
            )
        ),
    }


def _constants_results(args: argparse.Namespace) -> dict:
    constants = effect_bounds.bound_constants()
    return {
        "tanh_root": constants.tanh_root,
        "peak_log_or": constants.peak_log_or,
        "peak_or": constants.peak_or,
        "laplace_limit": constants.laplace_limit,
        "peak_risk": constants.peak_risk,
        "series_radius": kepler.series_radius(),
    }


def _kepler_solve_results(args: argparse.Namespace) -> dict:
    solution = kepler.kepler_solve(
        kepler.KeplerProblem(args.m, args.eps), tol=args.tol
    )
    return {
        "eccentric_anomaly": solution.eccentric_anomaly,
        "residual": solution.residual,
        "method": solution.method,
        "iterations": solution.iterations_or_order,
        "mean_anomaly_check": kepler.mean_anomaly(
            solution.eccentric_anomaly, args.eps
        ),
    }


def _kepler_series_results(args: argparse.Namespace) -> dict:
    solution = kepler.kepler_series(kepler.KeplerProblem(args.m, args.eps), args.order)
    return {
        "eccentric_anomaly": solution.eccentric_anomaly,
        "residual": solution.residual,
        "method": solution.method,
        "order": solution.iterations_or_order,
    }


def _kepler_diverge_results(args: argparse.Namespace) -> dict:
    problem = kepler.KeplerProblem(args.m, args.eps)
    newton = kepler.kepler_solve(problem, tol=args.tol).eccentric_anomaly
    rows = []
    for order in range(1, args.max_order + 1):
        estimate = kepler.kepler_series(problem, order).eccentric_anomaly
        rows.append(
            {
                "order": order,
                "eccentric_anomaly": estimate,
                "abs_error": abs(estimate - newton),
            }
        )
    return {"newton_eccentric_anomaly": newton, "rows": rows}


def _prior_flattest_inputs(args: argparse.Namespace) -> dict:
    inputs: dict[str, Any] = {
        "or_threshold": args.or_threshold,
        "tail_mass": args.tail_mass,
    }
    if args.sigma is not None:
        inputs["sigma"] = args.sigma
    return inputs


def _prior_flattest_results(args: argparse.Namespace) -> dict:
    smallest = bayes_prior.flattest_sigma(args.or_threshold)
    assumed = args.sigma if args.sigma is not None else smallest
    spec = bayes_prior.flattest_prior(args.or_threshold, args.tail_mass, assumed)
    return {
        "assumed_sigma": spec.assumed_sigma,
        "flattest_sigma": smallest,
        "tail_quantile": bayes_prior.p_to_z(args.tail_mass),
        "prior_variance": spec.prior_variance,
    }


def _prior_pathway_results(args: argparse.Namespace) -> dict:
    result = bayes_prior.prevalence_pathway(args.or_value, args.risk_exposed)
    return {
        "risk_unexposed": result.risk_unexposed,
        "risk_ratio": result.risk_ratio,
        "prevalence": result.prevalence,
        "sigma": result.sigma,
    }


def _verify_results(args: argparse.Namespace) -> dict:
    report = effect_bounds.verify_bound(args.samples, args.seed)
    return {
        "samples": report.samples,
        "violations": report.violations,
        "max_gamma_observed": report.max_gamma_observed,
        "bound": report.bound,
        "argmax_risk_exposed": report.arg_max.risk_exposed,
        "argmax_risk_unexposed": report.arg_max.risk_unexposed,
        "argmax_exposure": report.arg_max.exposure,
    }


def _pz_inputs(args: argparse.Namespace) -> dict:
    if args.p is not None:
        return {"p": args.p}
    return {"z": args.z}


def _pz_results(args: argparse.Namespace) -> dict:
    if args.p is not None:
        return {"z": bayes_prior.p_to_z(args.p)}
    return {"p": bayes_prior.z_to_p(args.z)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keplor",
        description=(
            "Effect-size bounds for 2x2 tables, the Laplace limit constant, "
            "and Kepler solvers."
        ),
    )
    _add_format(parser, top_level=True)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def register(
        sub: argparse.ArgumentParser,
        name: str,
        results_fn: Callable[[argparse.Namespace], dict],
        inputs_fn: Callable[[argparse.Namespace], dict],
        validate_fn: Optional[Callable[[argparse.Namespace], Optional[str]]] = None,
    ) -> None:
        _add_format(sub)
        sub.set_defaults(
            command_name=name,
            results_fn=results_fn,
            inputs_fn=inputs_fn,
            validate_fn=validate_fn,
        )

    table = subparsers.add_parser("table", help="2x2 table estimators")
    source = table.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--counts",
        type=_counts_argument,
        help="four comma-separated counts n11,n12,n21,n22",
    )
    source.add_argument("--file", help="path to a file holding one counts line")
    table.add_argument(
        "--correction",
        action="store_true",
        help="add 0.5 to every cell before estimating",
    )
    register(table, "table", _table_results, _table_inputs)

    bounds = subparsers.add_parser(
        "bounds", help="standardized-effect ceiling and variance minimizers"
    )
    bounds.add_argument("--or", dest="or_value", type=float, help="odds ratio")
    bounds.add_argument(
        "--rr", type=float, help="risk ratio (with --or: variance-minimizing exposure)"
    )
    bounds.add_argument("--p", type=float, help="exposure probability among cases")
    bounds.add_argument("--q", type=float, help="exposure probability among controls")
    bounds.add_argument(
        "--prevalence", type=float, help="case prevalence (with --p/--q)"
    )
    bounds.add_argument("--risk-exposed", type=float, help="risk among the exposed")
    bounds.add_argument(
        "--risk-unexposed", type=float, help="risk among the unexposed"
    )
    bounds.add_argument(
        "--exposure", type=float, help="pooled exposure (with the risk pair)"
    )
    register(bounds, "bounds", _bounds_results, _bounds_inputs, _validate_bounds)

    constants = subparsers.add_parser(
        "constants", help="attainment constants and the series radius"
    )
    register(constants, "constants", _constants_results, lambda args: {})

    kepler_parser = subparsers.add_parser("kepler", help="Kepler-equation tools")
    kepler_sub = kepler_parser.add_subparsers(dest="kepler_command", required=True)

    solve = kepler_sub.add_parser("solve", help="Newton solve of M = E - eps*sin(E)")
    solve.add_argument("--m", type=float, required=True, help="mean anomaly (radians)")
    solve.add_argument("--eps", type=float, required=True, help="eccentricity")
    solve.add_argument("--tol", type=float, default=1e-12, help="residual tolerance")
    register(
        solve,
        "kepler solve",
        _kepler_solve_results,
        lambda args: {"m": args.m, "eps": args.eps, "tol": args.tol},
    )

    series = kepler_sub.add_parser("series", help="eccentricity power series")
    series.add_argument("--m", type=float, required=True, help="mean anomaly (radians)")
    series.add_argument("--eps", type=float, required=True, help="eccentricity")
    series.add_argument("--order", type=int, required=True, help="truncation order")
    register(
        series,
        "kepler series",
        _kepler_series_results,
        lambda args: {"m": args.m, "eps": args.eps, "order": args.order},
    )

    diverge = kepler_sub.add_parser(
        "diverge-table", help="series error against Newton, order by order"
    )
    diverge.add_argument("--m", type=float, required=True, help="mean anomaly (radians)")
    diverge.add_argument("--eps", type=float, required=True, help="eccentricity")
    diverge.add_argument(
        "--max-order", type=int, required=True, help="largest order to tabulate"
    )
    diverge.add_argument("--tol", type=float, default=1e-12, help="Newton tolerance")
    register(
        diverge,
        "kepler diverge-table",
        _kepler_diverge_results,
        lambda args: {
            "m": args.m,
            "eps": args.eps,
            "max_order": args.max_order,
            "tol": args.tol,
        },
    )

    prior = subparsers.add_parser("prior", help="prior-specification helpers")
    prior_sub = prior.add_subparsers(dest="prior_command", required=True)

    flattest = prior_sub.add_parser(
        "flattest", help="flattest prior variance from a tail statement"
    )
    flattest.add_argument(
        "--or-threshold", type=float, required=True, help="odds-ratio threshold (> 1)"
    )
    flattest.add_argument(
        "--tail-mass",
        type=float,
        required=True,
        help="probability that the odds ratio exceeds the threshold",
    )
    flattest.add_argument(
        "--sigma",
        type=float,
        help="assumed sigma (default: the smallest attainable one)",
    )
    register(
        flattest, "prior flattest", _prior_flattest_results, _prior_flattest_inputs
    )

    pathway = prior_sub.add_parser(
        "wm-pathway", help="sigma at the variance-minimizing prevalence"
    )
    pathway.add_argument(
        "--or", dest="or_value", type=float, required=True, help="odds ratio"
    )
    pathway.add_argument(
        "--risk-exposed", type=float, required=True, help="assumed risk among exposed"
    )
    register(
        pathway,
        "prior wm-pathway",
        _prior_pathway_results,
        lambda args: {"or": args.or_value, "risk_exposed": args.risk_exposed},
    )

    verify = subparsers.add_parser(
        "verify", help="brute-force check of the standardized-effect ceiling"
    )
    verify.add_argument("--samples", type=int, required=True, help="number of samples")
    verify.add_argument("--seed", type=int, required=True, help="random seed")
    register(
        verify,
        "verify",
        _verify_results,
        lambda args: {"samples": args.samples, "seed": args.seed},
    )

    pz = subparsers.add_parser("pz", help="p-value / normal statistic conversion")
    direction = pz.add_mutually_exclusive_group(required=True)
    direction.add_argument("--p", type=float, help="upper-tail p-value")
    direction.add_argument("--z", type=float, help="normal test statistic")
    register(pz, "pz", _pz_results, _pz_inputs)

    return parser


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_text(envelope: dict) -> str:
    lines = [f"command={envelope['command']}", f"status={envelope['status']}"]
    if "error_message" in envelope:
        lines.append(f"error_message={envelope['error_message']}")
    for key in sorted(envelope["inputs"]):
        lines.append(f"input.{key}={_format_value(envelope['inputs'][key])}")
    results = envelope["results"]
    for key in sorted(results):
        value = results[key]
        if isinstance(value, list):
            for index, row in enumerate(value):
                for field in sorted(row):
                    lines.append(
                        f"result.{key}[{index}].{field}={_format_value(row[field])}"
                    )
        else:
            lines.append(f"result.{key}={_format_value(value)}")
    return "\n".join(lines) + "\n"


def _render(envelope: dict, fmt: str) -> str:
    if fmt == "text":
        return _render_text(envelope)
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def run(argv: Optional[list[str]] = None) -> int:
    """Parse argv, execute, print the envelope; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    validate = getattr(args, "validate_fn", None)
    if validate is not None:
        message = validate(args)
        if message is not None:
            sys.stderr.write(f"keplor {args.command_name}: error: {message}\n")
            return 2
    inputs = args.inputs_fn(args)
    envelope: dict[str, Any] = {"command": args.command_name, "inputs": inputs}
    try:
        envelope["results"] = args.results_fn(args)
        envelope["status"] = "ok"
        code = 0
    except KeplorError as exc:
        envelope["results"] = {}
        envelope["status"] = "error"
        envelope["error_message"] = str(exc)
        code = 1
    fmt = getattr(args, "format", None) or "json"
    sys.stdout.write(_render(envelope, fmt))
    return code


def main() -> None:
    sys.exit(run())
