"""
CuspFlow Command-Line Interface

    cuspflow check FILE
    cuspflow curvature FILE [--metric CSV]
    cuspflow flow FILE [--kind ricci|prescribed|calabi|classic] [--target FILE] ...
    cuspflow solve FILE [--target FILE] ...
    cuspflow sweep FILE [--count N] [--seed S] [--jobs J] ...

Reports go to standard output as key=value lines; logs go to standard error.
Exit codes: 0 success, 2 invalid input file or violations, 3 Diverging or
NoMinimizer, 4 Undetermined or MaxIter, 5 integrator failure, 6 Singular
(a classic run reached the boundary of the decorated region), 64 usage error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from config.logging_setup import configure_logging
from config.settings import Settings, get_settings
from curvature.assembly import energy, ricci_curvature, total_volume
from curvature.metric import DimensionMismatchError, as_lengths
from flows.config import TARGETED_KINDS, FlowConfig, FlowKind
from flows.flow import run
from flows.sweep import limit_spread, multi_start
from flows.trace import Classification, FlowTrace, IntegratorFailure, write_trace
from solver.energy_minimizer import EnergyMinimizer, SolveStatus
from triangulation.complex import Complex, ComplexValidationError, build_complex
from triangulation.gluing import GluingParseError, GluingSpec, read_gluing, validate
from .report import ComplexSummary, RunReport, format_float, format_vector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGING = 3
EXIT_UNDETERMINED = 4
EXIT_FAILURE = 5
EXIT_SINGULAR = 6
EXIT_USAGE = 64

FLOW_EXIT = {
    Classification.CONVERGED: EXIT_OK,
    Classification.DIVERGING: EXIT_DIVERGING,
    Classification.UNDETERMINED: EXIT_UNDETERMINED,
    Classification.SINGULAR: EXIT_SINGULAR,
    Classification.FAILED: EXIT_FAILURE
}

SOLVE_EXIT = {
    SolveStatus.FOUND: EXIT_OK,
    SolveStatus.NO_MINIMIZER: EXIT_DIVERGING,
    SolveStatus.MAX_ITER: EXIT_UNDETERMINED
}


class UsageError(ValueError):
    """Bad flags or flag values"""
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser exiting with the usage code instead of 2"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_vector(text: str) -> np.ndarray:
    """Comma- or whitespace-separated floats"""
    try:
        return np.array([float(v) for v in text.replace(",", " ").split()], dtype=float)
    except ValueError as e:
        raise UsageError(f"not a list of numbers: {text!r}") from e


def load_spec(path: str) -> GluingSpec:
    return read_gluing(path)


def load_complex(path: str) -> Tuple[GluingSpec, Complex]:
    spec = load_spec(path)
    return spec, build_complex(spec)


def initial_metric(args: argparse.Namespace, spec: GluingSpec, c: Complex) -> np.ndarray:
    """--metric, else the file's metric record, else zero"""
    if getattr(args, "metric", None):
        values = parse_vector(args.metric)
    elif spec.initial_metric is not None:
        values = np.array(spec.initial_metric, dtype=float)
    else:
        values = np.zeros(c.m)
    try:
        return as_lengths(c, values)
    except DimensionMismatchError as e:
        raise UsageError(str(e)) from e


def read_target(path: Optional[str], c: Complex) -> Optional[np.ndarray]:
    if path is None:
        return None
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read target file: {e}") from e
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    try:
        return as_lengths(c, parse_vector(" ".join(lines)))
    except DimensionMismatchError as e:
        raise UsageError(str(e)) from e


def flow_config(args: argparse.Namespace, settings: Settings, target: Optional[np.ndarray]) -> FlowConfig:
    kind = FlowKind(args.kind)
    if kind == FlowKind.PRESCRIBED and target is None:
        raise UsageError("--kind prescribed requires --target")
    try:
        return FlowConfig.from_settings(
            settings.flow,
            kind=kind,
            target_curvature=tuple(target) if kind in TARGETED_KINDS and target is not None else None,
            step=args.step,
            t_max=args.t_max,
            tol_converge=args.tol,
            l_max=args.l_max,
            adaptive=True if args.adaptive else None
        )
    except ValueError as e:
        raise UsageError(str(e)) from e


def trace_path(args: argparse.Namespace, settings: Settings, suffix: str) -> Optional[Path]:
    """--trace, else <trace_dir>/<file stem>_<suffix>.csv when a trace directory is configured"""
    if args.trace:
        return Path(args.trace)
    if settings.trace.trace_dir:
        return Path(settings.trace.trace_dir) / f"{Path(args.file).stem}_{suffix}.csv"
    return None


def save_trace(trace: FlowTrace, path: Optional[Path], delimiter: str) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        write_trace(trace, stream, delimiter)
    logger.info(f"Wrote trace to {path}")


def cmd_check(args: argparse.Namespace, settings: Settings) -> Tuple[Optional[RunReport], int]:
    """Parse, validate and build; report valences"""
    spec = load_spec(args.file)
    violations = validate(spec)
    if violations:
        for v in violations:
            print(f"violation={v}", file=sys.stderr)
        return None, EXIT_INPUT
    c = build_complex(spec)
    report = RunReport(command="check", complex=ComplexSummary.of(c))
    report.details["edge_valences"] = ",".join(str(int(d)) for d in c.valence)
    return report, EXIT_OK


def cmd_curvature(args: argparse.Namespace, settings: Settings) -> Tuple[Optional[RunReport], int]:
    """Curvature, cone angles, energy and volume at one metric"""
    spec, c = load_complex(args.file)
    l = initial_metric(args, spec, c)
    curvature = ricci_curvature(c, l)

    report = RunReport(command="curvature", complex=ComplexSummary.of(c))
    report.curvature_norm = curvature.sup_norm
    report.details["metric"] = format_vector(l)
    report.details["curvature"] = format_vector(curvature.K)
    report.details["cone_angles"] = format_vector(curvature.cone_angles)
    report.details["energy"] = format_float(energy(c, l))
    report.details["vol"] = format_float(total_volume(c, l))
    report.details["in_L"] = str(curvature.in_L).lower()
    return report, EXIT_OK


def cmd_flow(args: argparse.Namespace, settings: Settings) -> Tuple[Optional[RunReport], int]:
    """Run one flow, write its trace and classify"""
    spec, c = load_complex(args.file)
    target = read_target(args.target, c)
    cfg = flow_config(args, settings, target)
    l0 = initial_metric(args, spec, c)
    report = RunReport(command=f"flow --kind {cfg.kind.value}", complex=ComplexSummary.of(c))
    path = trace_path(args, settings, cfg.kind.value)

    try:
        trace = run(c, l0, cfg)
    except IntegratorFailure as e:
        report.classification = Classification.FAILED.value
        report.details["failure"] = str(e)
        if e.last_sample is not None:
            report.details["last_t"] = format_float(e.last_sample.t)
            report.details["last_metric"] = format_vector(e.last_sample.l)
        if e.trace is not None:
            save_trace(e.trace, path, settings.trace.delimiter)
        return report, EXIT_FAILURE

    save_trace(trace, path, settings.trace.delimiter)
    report.classification = trace.classification.value
    report.rate = trace.rate
    final = trace.final
    report.details["t_final"] = format_float(final.t)
    report.details["metric_norm"] = format_float(np.max(np.abs(final.l)) if final.l.size else 0.0)
    report.details["residual_norm"] = format_float(final.residual_norm)
    if trace.singular_time is not None:
        report.details["singular_time"] = format_float(trace.singular_time)
    if trace.limit is not None:
        report.attach_limit(c, trace.limit)
    return report, FLOW_EXIT[trace.classification]


def cmd_solve(args: argparse.Namespace, settings: Settings) -> Tuple[Optional[RunReport], int]:
    """Minimize the (prescribed) energy directly"""
    spec, c = load_complex(args.file)
    target = read_target(args.target, c)
    l0 = initial_metric(args, spec, c)

    solver_settings = settings.solver
    if args.l_max is not None:
        solver_settings = solver_settings.model_copy(update={"l_max": args.l_max})
    result = EnergyMinimizer(solver_settings).minimize(
        c, l0, target=target, tol=args.tol, max_iter=args.max_iter
    )

    report = RunReport(
        command="solve" + (" --target" if target is not None else ""),
        complex=ComplexSummary.of(c)
    )
    report.classification = result.status.value
    report.details["iterations"] = str(result.iterations)
    report.details["newton_steps"] = str(result.newton_steps)
    report.details["gradient_norm"] = format_float(result.gradient_norm)
    report.details["energy"] = format_float(result.energy)
    if result.status == SolveStatus.FOUND:
        report.attach_limit(c, result.l)
        report.details["in_L"] = str(result.metric.in_L).lower()
    if result.evidence is not None:
        report.details["gradient_floor"] = format_float(result.evidence.gradient_floor)
        report.details["final_metric_norm"] = format_float(result.evidence.iterate_norms[-1])
        report.details["energy_drop"] = format_float(
            result.evidence.energies[0] - result.evidence.energies[-1]
        )
    return report, SOLVE_EXIT[result.status]


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> Tuple[Optional[RunReport], int]:
    """Multi-start runs and the spread of their limits in the quotient"""
    _, c = load_complex(args.file)
    target = read_target(args.target, c)
    cfg = flow_config(args, settings, target)
    seed = settings.run.seed if args.seed is None else args.seed
    jobs = settings.run.jobs if args.jobs is None else args.jobs

    traces = multi_start(c, cfg, args.count, seed=seed, jobs=jobs, radius=args.radius)
    verdicts = [t.classification for t in traces]

    report = RunReport(command=f"sweep --kind {cfg.kind.value}", complex=ComplexSummary.of(c))
    report.details["seed"] = str(seed)
    report.details["count"] = str(args.count)
    for i, t in enumerate(traces):
        report.details[f"run_{i}"] = t.classification.value
    spread = limit_spread(c, traces)
    if spread is not None:
        report.details["limit_spread"] = format_float(spread)

    if Classification.FAILED in verdicts:
        code = EXIT_FAILURE
    elif Classification.SINGULAR in verdicts:
        code = EXIT_SINGULAR
    elif Classification.UNDETERMINED in verdicts:
        code = EXIT_UNDETERMINED
    elif Classification.DIVERGING in verdicts:
        code = EXIT_DIVERGING
    else:
        code = EXIT_OK
    report.classification = "Converged" if code == EXIT_OK else "Mixed"
    return report, code


COMMANDS = {
    "check": cmd_check,
    "curvature": cmd_curvature,
    "flow": cmd_flow,
    "solve": cmd_solve,
    "sweep": cmd_sweep
}


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("file", help="Triangulation file")
    common.add_argument("--json", help="Also write the report as JSON to this path")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])

    flow_flags = ArgumentParser(add_help=False)
    flow_flags.add_argument("--kind", choices=[k.value for k in FlowKind], default=FlowKind.RICCI.value)
    flow_flags.add_argument("--target", help="File with the prescribed curvature K̄")
    flow_flags.add_argument("--step", type=float, help="Runge-Kutta step size")
    flow_flags.add_argument("--t-max", dest="t_max", type=float, help="Integration horizon")
    flow_flags.add_argument("--tol", type=float, help="Convergence threshold on the curvature")
    flow_flags.add_argument("--l-max", dest="l_max", type=float, help="Divergence radius")
    flow_flags.add_argument("--adaptive", action="store_true", help="Adaptive Dormand-Prince stepping")

    parser = ArgumentParser(prog="cuspflow", description="Extended combinatorial Ricci flow on ideal triangulations")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check", parents=[common], help="Validate a triangulation and report valences")

    curvature = sub.add_parser("curvature", parents=[common], help="Evaluate curvature at a metric")
    curvature.add_argument("--metric", help="Comma-separated edge lengths")

    flow = sub.add_parser("flow", parents=[common, flow_flags], help="Run a curvature flow")
    flow.add_argument("--metric", help="Comma-separated initial edge lengths")
    flow.add_argument("--trace", help="Trace output path")

    solve = sub.add_parser("solve", parents=[common], help="Minimize the energy directly")
    solve.add_argument("--metric", help="Comma-separated starting edge lengths")
    solve.add_argument("--target", help="File with the prescribed curvature K̄")
    solve.add_argument("--tol", type=float, help="Threshold on the curvature")
    solve.add_argument("--max-iter", dest="max_iter", type=int, help="Iteration cap")
    solve.add_argument("--l-max", dest="l_max", type=float, help="Radius for unbounded descent")

    sweep = sub.add_parser("sweep", parents=[common, flow_flags], help="Multi-start flow runs")
    sweep.add_argument("--count", type=int, default=10, help="Number of starts")
    sweep.add_argument("--seed", type=int, help="Base seed")
    sweep.add_argument("--jobs", type=int, help="Worker processes")
    sweep.add_argument("--radius", type=float, default=1.0, help="Sup-norm bound of initial metrics")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(settings.logging, args.log_level)

    started = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args, settings)
    except UsageError as e:
        print(f"cuspflow: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GluingParseError, ComplexValidationError, OSError) as e:
        print(f"cuspflow: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT

    if report is not None:
        report.wall_clock = time.perf_counter() - started
        sys.stdout.write(report.render())
        if args.json:
            Path(args.json).write_text(report.to_json(), encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
