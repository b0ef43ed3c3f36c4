#!/usr/bin/env python3
"""
Oscillatory Quadrature Study Runner

Command-line front end for the product integration rule:
- table:     reproduce the convergence table for the built-in f1/f2 studies
             (errors against the rule itself at m=512)
- integrate: evaluate the rule on a sample file or a built-in function
- converge:  convergence report with a fitted log-log slope, against the
             m=512 rule or the independent reference integrator
- weights:   dump the per-sample rule weights w_j(y)
- approx:    uniform approximation error of the generalized Bernstein
             operator for several l

All reports are CSV with 17 significant digits; logs go to stderr.

Exit codes: 0 ok, 1 reference did not converge, 2 usage/parse, 3 I/O,
4 domain.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

# Add repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config.config_manager import StudyConfig, UnknownStudyError
from scripts.common.run_metrics import MetricNames, MetricUnits, RunMetrics
from scripts.quadrature import (
    ConvergenceError,
    DimensionError,
    DomainError,
    OscillatoryKernel,
    ReferenceConfig,
    SampleFileError,
    UnknownFunctionError,
    approximation_error,
    compute_weights,
    get_function,
    integrate_many,
    make_grid,
    read_sample_file,
    reference_integral,
    sample,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DOMAIN = 4

REPORT_COLUMNS = ['m', 'omega', 'y', 'value', 'error', 'reference_kind']

logger = logging.getLogger('oscquad')


def setup_logging(verbose: bool = False) -> logging.Logger:
    """
    Configure logging.

    Args:
        verbose: Enable debug logging

    Returns:
        Logger instance
    """
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    return logging.getLogger('oscquad')


def run_table(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    variant: str,
    ell: int,
    m_values: Sequence[int],
    omegas: Sequence[float],
    ys: Sequence[float],
    reference_m: int = 512,
    metrics: Optional[RunMetrics] = None
) -> pd.DataFrame:
    """
    Errors |I_{ref_m} - I_m| for every (omega, y, m) cell.

    Args:
        f: Vectorized integrand factor
        a: Half-width
        variant: 'sin' or 'cos'
        ell: Iteration parameter
        m_values: Degrees to evaluate
        omegas: Frequencies
        ys: Evaluation points
        reference_m: Degree of the self-reference
        metrics: Optional metrics collector

    Returns:
        DataFrame with REPORT_COLUMNS, sorted by (omega, y, m)
    """
    metrics = metrics or RunMetrics(enabled=False)
    rows = []
    for omega in omegas:
        kernel = OscillatoryKernel(variant, omega)
        with metrics.timer(f'Reference m={reference_m} omega={omega:g}'):
            reference = integrate_many(sample(f, make_grid(reference_m, a)), kernel, ell, ys)
        for m in m_values:
            if m == reference_m:
                values = reference
            else:
                values = integrate_many(sample(f, make_grid(m, a)), kernel, ell, ys)
            metrics.put_metric(MetricNames.CELLS_COMPUTED, len(ys), MetricUnits.COUNT)
            for y, value, ref in zip(ys, values, reference):
                rows.append({
                    'm': int(m), 'omega': float(omega), 'y': float(y), 'value': value,
                    'error': abs(ref - value), 'reference_kind': f'self_{reference_m}',
                })
            logger.debug(f"omega={omega:g} m={m}: errors {[abs(r - v) for r, v in zip(reference, values)]}")

    return _sorted_report(rows)


def run_converge(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    kernel: OscillatoryKernel,
    ell: int,
    m_values: Sequence[int],
    ys: Sequence[float],
    reference: str = 'self',
    reference_m: int = 512,
    oracle_config: Optional[ReferenceConfig] = None,
    metrics: Optional[RunMetrics] = None
) -> pd.DataFrame:
    """
    Convergence report against the self-reference or the reference integrator.

    Args:
        reference: 'self' (rule at reference_m) or 'oracle'

    Returns:
        DataFrame with REPORT_COLUMNS, sorted by (omega, y, m)
    """
    metrics = metrics or RunMetrics(enabled=False)
    if reference == 'oracle':
        with metrics.timer('Oracle'):
            ref_values = [reference_integral(f, kernel, a, y, oracle_config).value for y in ys]
        metrics.put_metric(MetricNames.REFERENCE_CALLS, len(ys), MetricUnits.COUNT)
        kind = 'oracle'
    else:
        with metrics.timer(f'Reference m={reference_m}'):
            ref_values = integrate_many(sample(f, make_grid(reference_m, a)), kernel, ell, ys)
        kind = f'self_{reference_m}'

    rows = []
    for m in m_values:
        values = integrate_many(sample(f, make_grid(m, a)), kernel, ell, ys)
        metrics.put_metric(MetricNames.CELLS_COMPUTED, len(ys), MetricUnits.COUNT)
        for y, value, ref in zip(ys, values, ref_values):
            rows.append({
                'm': int(m), 'omega': kernel.omega, 'y': float(y), 'value': value,
                'error': abs(ref - value), 'reference_kind': kind,
            })
    return _sorted_report(rows)


def _sorted_report(rows: List[Dict]) -> pd.DataFrame:
    report = pd.DataFrame(rows, columns=REPORT_COLUMNS)
    return report.sort_values(['omega', 'y', 'm'], kind='mergesort').reset_index(drop=True)


def fit_slope(m_values: Sequence[int], errors: Sequence[float]) -> Optional[float]:
    """
    Least-squares slope of log(error) against log(m).

    Zero errors (e.g. the self-reference row) are skipped.

    Returns:
        Slope, or None with fewer than two usable points
    """
    pairs = [(m, e) for m, e in zip(m_values, errors) if e > 0 and math.isfinite(e)]
    if len(pairs) < 2:
        return None
    log_m = np.log([p[0] for p in pairs])
    log_e = np.log([p[1] for p in pairs])
    slope, _ = np.polyfit(log_m, log_e, 1)
    return float(slope)


def write_csv(frame: pd.DataFrame, out: Optional[Path], float_format: str,
              trailer: Optional[str] = None) -> None:
    """
    Write a report to a file or stdout.

    Raises:
        OSError: If the file cannot be written
    """
    if out is None:
        frame.to_csv(sys.stdout, index=False, float_format=float_format, lineterminator='\n')
        if trailer is not None:
            sys.stdout.write(trailer + '\n')
        sys.stdout.flush()
        return

    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format=float_format, lineterminator='\n')
    if trailer is not None:
        with open(out, 'a') as f:
            f.write(trailer + '\n')
    logger.info(f"Report written to: {out}")


def _check_points_in_range(ys: Sequence[float], a: float) -> None:
    for y in ys:
        if not abs(y) <= a:
            raise DomainError(f"Evaluation point y={y} outside [-{a}, {a}]")


def _pick(value, default):
    return default if value is None else value


def cmd_table(args: argparse.Namespace, config: StudyConfig, metrics: RunMetrics) -> int:
    """Reproduce the convergence table for one built-in function."""
    defaults = config.get_defaults()
    study = config.get_function_study(args.function)
    ell = _pick(args.ell, defaults['ell'])
    m_values = args.m or defaults['m_values']
    omegas = args.omega or defaults['omegas']
    ys = args.y or study['y_values']
    reference_m = defaults.get('reference_m', 512)

    logger.info("=" * 60)
    logger.info(f"Convergence table: {args.function} = {study.get('display_name')}")
    logger.info("=" * 60)
    logger.info(f"a={study['a']}, kernel={study['kernel']}, ell={ell}")
    logger.info(f"m: {m_values}, omega: {omegas}, y: {ys}, reference m={reference_m}")
    _check_points_in_range(ys, study['a'])

    with metrics.timer('Table'):
        report = run_table(
            get_function(args.function), study['a'], study['kernel'], ell,
            m_values, omegas, ys, reference_m, metrics
        )

    write_csv(report, args.out, config.get_float_format())
    logger.info(f"Cells: {len(report)}, max error: {report['error'].max():.3e}")
    return EXIT_OK


def cmd_integrate(args: argparse.Namespace, config: StudyConfig, metrics: RunMetrics) -> int:
    """Evaluate the rule on samples and print (y, value) rows."""
    defaults = config.get_defaults()
    ell = _pick(args.ell, defaults['ell'])

    if args.samples is not None:
        fs = read_sample_file(args.samples)
        if args.kernel is None:
            raise SampleFileError("--kernel is required with --samples")
        variant = args.kernel
        source = str(args.samples)
    else:
        if not args.m or len(args.m) != 1:
            raise SampleFileError("--function needs exactly one --m")
        study = config.get_function_study(args.function)
        fs = sample(get_function(args.function), make_grid(args.m[0], study['a']))
        variant = args.kernel or study['kernel']
        source = args.function

    kernel = OscillatoryKernel(variant, args.omega)
    logger.info(f"Integrating {source}: m={fs.m}, a={fs.a}, {variant} omega={kernel.omega}, ell={ell}")
    _check_points_in_range(args.y, fs.a)

    with metrics.timer('Integrate'):
        values = integrate_many(fs, kernel, ell, args.y)
    metrics.put_metric(MetricNames.CELLS_COMPUTED, len(values), MetricUnits.COUNT)

    frame = pd.DataFrame({'y': [float(y) for y in args.y], 'value': values})
    write_csv(frame, args.out, config.get_float_format())
    return EXIT_OK


def cmd_converge(args: argparse.Namespace, config: StudyConfig, metrics: RunMetrics) -> int:
    """Convergence report plus fitted slope line."""
    defaults = config.get_defaults()
    study = config.get_function_study(args.function)
    ell = _pick(args.ell, defaults['ell'])
    m_values = args.m or defaults['m_values']
    ys = args.y or study['y_values'][:1]
    kernel = OscillatoryKernel(args.kernel or study['kernel'], args.omega)

    logger.info("=" * 60)
    logger.info(f"Convergence study: {args.function}, {kernel.variant} omega={kernel.omega}, ell={ell}")
    logger.info(f"m: {m_values}, y: {ys}, reference: {args.reference}")
    logger.info("=" * 60)
    _check_points_in_range(ys, study['a'])

    oracle_config = ReferenceConfig(**config.get_oracle_defaults())
    report = run_converge(
        get_function(args.function), study['a'], kernel, ell, m_values, ys,
        reference=args.reference, reference_m=defaults.get('reference_m', 512),
        oracle_config=oracle_config, metrics=metrics
    )

    slope = fit_slope(report['m'].tolist(), report['error'].tolist()) if len(ys) == 1 else None
    if slope is None:
        logger.warning("Slope not fitted (need one y and at least two nonzero errors)")
        trailer = "# slope="
    else:
        logger.info(f"Fitted log-log slope: {slope:.3f}")
        trailer = "# slope=" + (config.get_float_format() % slope)

    write_csv(report, args.out, config.get_float_format(), trailer=trailer)
    return EXIT_OK


def cmd_weights(args: argparse.Namespace, config: StudyConfig, metrics: RunMetrics) -> int:
    """Dump rule weights (j, t_j, w_j)."""
    ell = _pick(args.ell, config.get_defaults()['ell'])
    if not args.m or len(args.m) != 1:
        raise SampleFileError("weights needs exactly one --m")
    if not args.y or len(args.y) != 1:
        raise SampleFileError("weights needs exactly one --y")
    m, y = args.m[0], args.y[0]

    grid = make_grid(m, args.a)
    kernel = OscillatoryKernel(args.kernel, args.omega)
    _check_points_in_range([y], grid.a)
    logger.info(f"Weights: m={m}, a={grid.a}, ell={ell}, {kernel.variant} omega={kernel.omega}, y={y}")

    with metrics.timer('Weights'):
        rule = compute_weights(m, grid.a, ell, kernel, y)
    metrics.put_metric(MetricNames.WEIGHT_VECTORS, 1, MetricUnits.COUNT)

    frame = pd.DataFrame({'j': np.arange(m + 1), 't_j': grid.nodes, 'w_j': rule.w})
    write_csv(frame, args.out, config.get_float_format())
    logger.info(f"Sum |w_j| = {rule.l1_norm():.6e}")
    return EXIT_OK


def cmd_approx(args: argparse.Namespace, config: StudyConfig, metrics: RunMetrics) -> int:
    """Uniform approximation errors of B_{m,l} on a built-in function."""
    defaults = config.get_defaults()
    approx = config.get_approximation_defaults()
    study = config.get_function_study(args.function)
    m_values = args.m or defaults['m_values']
    ells = args.ell_list or approx.get('ells', [1, 2])
    points = args.points or approx.get('points', 2001)

    a = study['a']
    f = get_function(args.function)
    xs = np.linspace(-a, a, points)
    logger.info(f"Approximation errors: {args.function}, m: {m_values}, ell: {ells}, {points} points")

    rows = []
    with metrics.timer('Approximation'):
        for ell in ells:
            for m in m_values:
                rows.append({'m': int(m), 'ell': int(ell), 'error': approximation_error(f, m, a, ell, xs)})
    frame = pd.DataFrame(rows, columns=['m', 'ell', 'error'])
    frame = frame.sort_values(['ell', 'm'], kind='mergesort').reset_index(drop=True)
    write_csv(frame, args.out, config.get_float_format())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Product-rule quadrature for oscillatory integrals from equispaced samples',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Reproduce the f1 half of the convergence table
  %(prog)s table --function f1 --out /tmp/f1.csv

  # Evaluate a sample file at two points
  %(prog)s integrate --samples data.txt --kernel sin --omega 10 --y -0.7 --y 0.5

  # Convergence of f2 against the independent reference integrator
  %(prog)s converge --function f2 --omega 10 --y 1 --reference oracle

  # Dump the weights of one rule
  %(prog)s weights --m 8 --a 1 --ell 4 --kernel cos --omega 10 --y 0
        """
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', '-o', type=Path, help='Output CSV (default: stdout)')
    common.add_argument('--metrics-out', type=Path, help='Write run metrics JSON here')
    common.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging')

    sub = parser.add_subparsers(dest='command', required=True)

    table = sub.add_parser('table', parents=[common], help='Reproduce the convergence table')
    table.add_argument('--function', choices=['f1', 'f2'], required=True)
    table.add_argument('--ell', type=int, help='Iteration parameter (default from config)')
    table.add_argument('--m', type=int, action='append', help='Degree (repeatable)')
    table.add_argument('--omega', type=float, action='append', help='Frequency (repeatable)')
    table.add_argument('--y', type=float, action='append', help='Evaluation point (repeatable)')

    integ = sub.add_parser('integrate', parents=[common], help='Evaluate the rule')
    source = integ.add_mutually_exclusive_group(required=True)
    source.add_argument('--samples', type=Path, help='Sample file')
    source.add_argument('--function', choices=['f1', 'f2'], help='Built-in function')
    integ.add_argument('--kernel', choices=['sin', 'cos'])
    integ.add_argument('--omega', type=float, required=True)
    integ.add_argument('--ell', type=int)
    integ.add_argument('--m', type=int, action='append', help='Degree for --function')
    integ.add_argument('--y', type=float, action='append', required=True)

    conv = sub.add_parser('converge', parents=[common], help='Convergence report with slope')
    conv.add_argument('--function', choices=['f1', 'f2'], required=True)
    conv.add_argument('--kernel', choices=['sin', 'cos'])
    conv.add_argument('--omega', type=float, required=True)
    conv.add_argument('--ell', type=int)
    conv.add_argument('--m', type=int, action='append')
    conv.add_argument('--y', type=float, action='append')
    conv.add_argument('--reference', choices=['self', 'oracle'], default='self')

    weights = sub.add_parser('weights', parents=[common], help='Dump rule weights')
    weights.add_argument('--m', type=int, action='append', required=True)
    weights.add_argument('--a', type=float, required=True)
    weights.add_argument('--ell', type=int)
    weights.add_argument('--kernel', choices=['sin', 'cos'], required=True)
    weights.add_argument('--omega', type=float, required=True)
    weights.add_argument('--y', type=float, action='append', required=True)

    approx = sub.add_parser('approx', parents=[common], help='Approximation errors of B_{m,l}')
    approx.add_argument('--function', choices=['f1', 'f2'], required=True)
    approx.add_argument('--m', type=int, action='append')
    approx.add_argument('--ell', dest='ell_list', type=int, action='append')
    approx.add_argument('--points', type=int)

    return parser


COMMANDS = {
    'table': cmd_table,
    'integrate': cmd_integrate,
    'converge': cmd_converge,
    'weights': cmd_weights,
    'approx': cmd_approx,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(args.verbose)
    metrics = RunMetrics(logger=logger)

    try:
        config = StudyConfig()
        code = COMMANDS[args.command](args, config, metrics)
    except (SampleFileError, UnknownFunctionError, UnknownStudyError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except (DomainError, DimensionError) as e:
        logger.error(f"Domain error: {e}")
        return EXIT_DOMAIN
    except ConvergenceError as e:
        logger.error(f"Reference did not converge: {e}")
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return EXIT_IO

    summary = metrics.summary()
    if summary:
        logger.debug("Run metrics:\n" + summary)
    if args.metrics_out is not None and not metrics.save(args.metrics_out):
        return EXIT_IO
    return code


if __name__ == '__main__':
    sys.exit(main())
