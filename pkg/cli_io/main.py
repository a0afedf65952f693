"""
Command Line Entry Point
simulate / phase-diagram / rate-check / classify / oracle
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from common.errors import SpikePcaError, ValidationError
from common.log import configure_logging, log_banner
from harness import (
    ExperimentConfig,
    RateSettings,
    fit_rate,
    measurement_tiers,
    phase_diagram,
    rate_points,
    rate_predictor,
    response_selector,
    sweep,
)
from oracles import bai_yin_edges, jung_limit_draws, k_constant, nadler_limit, predict_rate
from regime import classify
from spike_model import ScalingLaw, SingleSpike, SpectrumSpec, build_spectrum, resolve_n
from .charts import emit_rate_chart
from .config import parse_config
from .results import emit_results, write_json
from .svg import emit_phase_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

PHASE_SVG_NAME = "phase_diagram.svg"
PHASE_JSON_NAME = "phase.json"
FAILURES_JSON_NAME = "failures.json"
RATE_JSON_NAME = "rate_fit.json"
RATE_CHART_NAME = "rate_chart.png"
ORACLES = ('nadler', 'bai-yin', 'jung-sample', 'k-const')


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1, the validation code"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="Experiment config (JSON)")
    common.add_argument("--out", type=str, default=None, help="Output directory (overrides output_dir)")
    common.add_argument("--seed", type=int, default=None, help="Master seed override")
    common.add_argument("--threads", type=int, default=None,
                        help="Worker threads (default: SPIKE_PCA_THREADS or 1)")

    parser = _Parser(prog="spike_pca", description="Spike-model PCA consistency lab")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sim = sub.add_parser("simulate", parents=[common], help="Run the (d, replicate) grid and write results")
    sim.add_argument("--format", choices=("csv", "json"), default="csv", help="Result format (default: csv)")

    sub.add_parser("phase-diagram", parents=[common], help="Mean <u_hat_1, u_1>^2 over an (alpha, gamma) grid")

    rate = sub.add_parser("rate-check", parents=[common], help="Fit measured responses against predicted rates")
    rate.add_argument("--format", choices=("csv", "json"), default="csv", help="Result format (default: csv)")
    rate.add_argument("--no-chart", action="store_true", help="Skip the PNG rate chart")

    cls = sub.add_parser("classify", parents=[common], help="Print the regime report without simulating")
    cls.add_argument("--alpha", type=float, default=None, help="Single-spike index (instead of --config)")
    cls.add_argument("--gamma", type=float, default=0.0, help="Sample index")
    cls.add_argument("--fixed-n", type=int, default=None, help="Hold n fixed (HDLSS)")

    ora = sub.add_parser("oracle", parents=[common], help="Evaluate a closed-form limit")
    ora.add_argument("name", choices=ORACLES)
    ora.add_argument("--lambda1", type=float, default=None, help="Spike eigenvalue (nadler)")
    ora.add_argument("--c", type=float, default=None, help="Limit of d/n, or the spike constant (jung-sample)")
    ora.add_argument("--n", type=int, default=None, help="Fixed sample size (jung-sample)")
    ora.add_argument("--count", type=int, default=1, help="Number of draws (jung-sample)")
    ora.add_argument("--d", type=int, default=None, help="Dimension (k-const, with --config)")
    return parser


def _load(args: argparse.Namespace) -> ExperimentConfig:
    if args.config is None:
        raise ValidationError('config', f"--config is required for {args.command}")
    config = parse_config(args.config)
    changes: Dict[str, Any] = {}
    if args.seed is not None:
        changes['master_seed'] = args.seed
    if args.out is not None:
        changes['output_dir'] = Path(args.out)
    return dataclasses.replace(config, **changes) if changes else config


def _require(value: Any, flag: str, name: str) -> Any:
    if value is None:
        raise ValidationError(flag.lstrip('-'), f"{flag} is required for oracle {name}")
    return value


def _report_failures(failures: List[Dict[str, Any]], total: int) -> None:
    print(f"[WARNING] {len(failures)} of {total} trials failed")
    for f in failures:
        where = ", ".join(f"{k}={f[k]}" for k in ('d', 'n', 'replicate', 'seed') if k in f)
        print(f"[ERROR] {where}: {f['type']}: {f['error']}")


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load(args)
    configure_logging(config.output_dir)
    log_banner(logger, f"Simulate: d_grid={list(config.d_grid)}, {config.replicates} replicates")

    result = sweep(config, args.threads)
    total = len(config.d_grid) * config.replicates
    if result.records:
        files = emit_results(result.records, result.aggregates, args.format, config.output_dir, config.measures)
        print(f"[OK] {files.raw_rows} rows written to {files.raw_path}")
        print(f"[OK] {files.aggregate_rows} rows written to {files.aggregate_path}")

    print("\n" + "=" * 60)
    print("AGGREGATES (mean inner_sq)")
    print("=" * 60)
    for row in result.aggregates:
        value = row.mean.get('inner_sq')
        shown = "-" if value is None else f"{value:.6f}"
        print(f"d={row.d:<6} n={row.n:<6} j={row.j:<4} {shown}")

    if result.failures:
        path = write_json({'failures': result.failures}, config.output_dir / FAILURES_JSON_NAME)
        print(f"[ERROR] Failure list saved to {path}")
        _report_failures(result.failures, total)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_phase_diagram(args: argparse.Namespace) -> int:
    config = _load(args)
    if config.phase is None:
        raise ValidationError('phase', "config has no phase section")
    phase = config.phase
    configure_logging(config.output_dir)
    log_banner(logger, f"Phase diagram: {len(phase.gamma_grid)} x {len(phase.alpha_grid)} nodes at d={phase.d}")

    diagram = phase_diagram(
        phase.alpha_grid,
        phase.gamma_grid,
        d=phase.d,
        replicates=phase.replicates,
        master_seed=config.master_seed,
        spec_template=config.spec,
        dist=config.dist,
        basis=config.basis,
        solver=config.solver,
        threads=args.threads,
    )
    svg = emit_phase_svg(diagram.mean_inner_sq, diagram.labels, config.output_dir / PHASE_SVG_NAME,
                         alpha_values=diagram.alpha_values, gamma_values=diagram.gamma_values)
    write_json({
        'alpha_values': diagram.alpha_values,
        'gamma_values': diagram.gamma_values,
        'mean_inner_sq': diagram.mean_inner_sq,
        'labels': [[str(label) for label in row] for row in diagram.labels],
        'd': diagram.d,
        'replicates': diagram.replicates,
        'failures': diagram.failures,
    }, config.output_dir / PHASE_JSON_NAME)
    print(f"[OK] Phase diagram saved to {svg.path}")

    print("\n" + "=" * 60)
    print("MEAN <u_hat_1, u_1>^2 (rows: gamma descending)")
    print("=" * 60)
    print("gamma\\alpha " + " ".join(f"{a:>6.2f}" for a in diagram.alpha_values))
    for gamma, row in zip(diagram.gamma_values, diagram.mean_inner_sq):
        cells = " ".join("     -" if v is None else f"{v:>6.3f}" for v in row)
        print(f"{gamma:>11.2f} {cells}")

    if diagram.failures:
        _report_failures(diagram.failures, len(phase.alpha_grid) * len(phase.gamma_grid) * phase.replicates)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_rate_check(args: argparse.Namespace) -> int:
    config = _load(args)
    settings = config.rate or RateSettings()
    selector = response_selector(settings.response, settings.index)
    configure_logging(config.output_dir)
    log_banner(logger, f"Rate check: index {settings.index}, response {settings.response}")

    prediction = predict_rate(config.spec, config.law, config.d_grid[0], settings.index)
    result = sweep(config, args.threads)
    if result.records:
        emit_results(result.records, result.aggregates, args.format, config.output_dir, config.measures)

    predictor = rate_predictor(config.spec, config.law, settings.index, settings.power)
    points = rate_points(result.records, predictor, selector)
    fit = fit_rate(result.records, predictor, selector)
    write_json({
        'index': settings.index,
        'response': settings.response,
        'power': settings.power,
        'quantity': prediction.quantity.value,
        'theorem_case': prediction.theorem_case.value,
        'approximate': prediction.approximate,
        'slope': fit.slope,
        'intercept': fit.intercept,
        'r_squared': fit.r_squared,
        'o_constant': fit.o_constant,
        'n_points': fit.n_points,
        'dropped': fit.dropped,
        'points': [dataclasses.asdict(p) for p in points],
    }, config.output_dir / RATE_JSON_NAME)
    if not args.no_chart:
        emit_rate_chart(fit, points, config.output_dir / RATE_CHART_NAME)

    print("\n" + "=" * 60)
    print("RATE FIT")
    print("=" * 60)
    print(f"Quantity:    {prediction.quantity.value} ({prediction.theorem_case.value})")
    if prediction.approximate:
        print("[WARNING] rate for this clause is approximate")
    print(f"Slope:       {fit.slope:.6f}")
    print(f"Intercept:   {fit.intercept:.6f}")
    print(f"R^2:         {fit.r_squared:.6f}")
    print(f"O-constant:  {fit.o_constant:.6g}")
    print(f"Points:      {fit.n_points} ({fit.dropped} dropped)")

    if result.failures:
        _report_failures(result.failures, len(config.d_grid) * config.replicates)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    if args.config is not None:
        config = _load(args)
        spec, law = config.spec, config.law
    elif args.alpha is not None:
        spec = SpectrumSpec(SingleSpike(alpha=args.alpha))
        law = ScalingLaw(gamma=args.gamma, fixed_n=args.fixed_n)
    else:
        raise ValidationError('alpha', "classify needs --config or --alpha")

    report = classify(spec, law)
    for j in sorted(report.labels):
        print(f"index {j}: {report.labels[j]} ({report.cases[j].value})")
    print(f"noise: {report.noise_label} ({report.noise_case.value})")
    if report.noise_subspace_consistent:
        print("noise block: subspace consistent with span{u_k, k > m}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    name = args.name
    if name == 'nadler':
        print(nadler_limit(_require(args.lambda1, '--lambda1', name), _require(args.c, '--c', name)))
    elif name == 'bai-yin':
        upper, lower = bai_yin_edges(_require(args.c, '--c', name))
        print(f"{upper} {lower}")
    elif name == 'jung-sample':
        n = _require(args.n, '--n', name)
        c = _require(args.c, '--c', name)
        if args.count < 1:
            raise ValidationError('count', f"must be >= 1, got {args.count}")
        for value in jung_limit_draws(n, c, args.count, args.seed or 0):
            print(float(value))
    else:
        config = _load(args)
        d = _require(args.d, '--d', name)
        spectrum = build_spectrum(config.spec, d)
        m = measurement_tiers(config.spec, config.law, d).spike_count
        print(k_constant(spectrum, m, resolve_n(config.law, d)))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'simulate': cmd_simulate,
    'phase-diagram': cmd_phase_diagram,
    'rate-check': cmd_rate_check,
    'classify': cmd_classify,
    'oracle': cmd_oracle,
}


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand

    Returns:
        0 on success, 1 on usage or validation errors, 2 on numerical or I/O failures
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_VALIDATION

    if args.command in ('classify', 'oracle'):
        configure_logging()

    try:
        return COMMANDS[args.command](args)
    except SpikePcaError as e:
        print(f"[ERROR] {e}")
        if e.category == "validation":
            return EXIT_VALIDATION
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_NUMERICAL
