"""Batch commands behind the aqc-cavity CLI.

Each command takes a RunConfig, runs the library operations and hands every
result to one Emitter. Commands return the process exit code for outcomes
that are not errors (an empty stationary sweep); failures propagate as
exceptions and are mapped to exit codes by ``main``.
"""

import logging
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..dynamics.protocol import run_protocol, run_protocol_detuning
from ..exceptions import ConfigError, EmptyResultError, IntegrationError
from ..hamiltonians.base import AdiabaticModel
from ..hamiltonians.exact_cover import generate_ec_instance, load_ec_file, parse_ec_clauses
from ..hamiltonians.factory import build_model
from ..meanfield import bifurcation_points, feasibility_check, sweep_values
from ..models.config.run_config import RunConfig, instance_names, shipped_instance
from ..models.domain.cavity import CavityParams
from ..models.domain.instance import ECInstance, assignment_to_string
from ..models.domain.observables import GapLocation
from ..models.domain.results import FeasibilityReport
from ..models.domain.schedule import ControlKind, DetuningSchedule, Schedule
from ..models.domain.spec import ModelKind, ModelSpec
from ..models.domain.trajectory import ProtocolResult
from ..settings import DEFAULT_SETTINGS, SolverSettings
from ..spectral import gap_location, observables_scan, spectrum_scan
from .emit import Emitter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EMPTY = 2

SWEEP_COLUMNS = ["control", "x_ss", "b_eff", "stability", "re_omega_plus", "re_omega_minus"]


def _model(config: RunConfig) -> AdiabaticModel:
    return build_model(config.model, config.settings, backend=config.backend)


def cmd_stationary(
    config: RunConfig,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> int:
    """Sweep the stationary points over the configured control grid.

    Writes sweep.csv and bifurcations.json.

    Returns:
        0, or 2 when some control value has no stationary point

    Raises:
        ConfigError: If the configuration has no sweep
    """
    if config.sweep is None:
        raise ConfigError("The stationary command needs a 'sweep' section")
    sweep = config.sweep
    model = _model(config)
    emitter = Emitter(config.output_dir)

    rows = sweep_values(
        model, config.cavity, sweep.control, sweep.grid(), workers=workers, on_progress=on_progress
    )
    if "sweep" in config.emit:
        emitter.write_csv("sweep.csv", (row.to_record() for row in rows), columns=SWEEP_COLUMNS)

    if "bifurcations" in config.emit:
        try:
            points = bifurcation_points(model, config.cavity, sweep.control)
        except EmptyResultError as e:
            logger.info("No bifurcation points: %s", e.message)
            points = []
        emitter.write_json(
            "bifurcations.json",
            {
                "control": sweep.control.value,
                "alpha_over_g2": config.cavity.alpha_over_g2
                if sweep.control is ControlKind.EPSILON
                else None,
                "points": [point.to_dict() for point in points],
            },
        )

    empty = [row.control for row in rows if row.empty]
    if empty:
        logger.warning("%d control value(s) without a stationary point", len(empty))
        emitter.write_manifest("empty", error=f"No stationary point at {len(empty)} value(s)")
        return EXIT_EMPTY
    return EXIT_OK


def cmd_analyze(config: RunConfig, on_progress: Callable[[str], None] | None = None) -> int:
    """Ground-state observables, spectrum and feasibility report over [0, B_x].

    Writes observables.csv, spectrum.csv and feasibility.json.
    """
    model = _model(config)
    emitter = Emitter(config.output_dir)
    fields = np.linspace(0.0, model.b_x, config.analyze_points)

    if on_progress:
        on_progress(f"Analyzing {model!r} on {config.analyze_points} fields...")
    if "observables" in config.emit:
        observables = observables_scan(model, fields)
        emitter.write_csv("observables.csv", (obs.to_record() for obs in observables))
        levels = spectrum_scan(model, fields, config.n_levels)
        spectrum = pd.DataFrame(levels, columns=[f"E{i}" for i in range(levels.shape[1])])
        spectrum.insert(0, "b_eff", fields)
        emitter.write_csv("spectrum.csv", spectrum)

    report = feasibility_check(model, config.cavity, config.settings)
    gap = gap_location(model)
    payload = report.to_dict() | {
        "gap": {"b_gap": gap.b_gap, "gap_min": gap.gap_min, "interior": gap.interior}
    }
    emitter.write_json("feasibility.json", payload)
    if on_progress:
        on_progress(f"Feasible: {report.feasible}; gap {gap.gap_min:.6g} at B={gap.b_gap:.6g}")
    return EXIT_OK


def _protocol_point(
    model: AdiabaticModel,
    cavity: CavityParams,
    schedule: Schedule | DetuningSchedule,
    settings: SolverSettings,
    report: FeasibilityReport | None,
    gap: GapLocation,
    value: float,
) -> ProtocolResult:
    if isinstance(schedule, DetuningSchedule):
        return run_protocol_detuning(
            model, cavity, replace(schedule, delta_mid=value), settings, gap=gap
        )
    return run_protocol(
        model, cavity, replace(schedule, eps_mid=value), settings, report=report, gap=gap
    )


def _control_value(schedule: Schedule | DetuningSchedule) -> float:
    return schedule.delta_mid if isinstance(schedule, DetuningSchedule) else schedule.eps_mid


def cmd_protocol(
    config: RunConfig,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> int:
    """Run the switching protocol for one control value or over a sweep.

    A single run writes trajectory.csv and protocol.json. A sweep writes one
    protocol.json record per grid point and summary.csv. When an integration
    fails, everything finished so far is kept, a manifest records the
    failure, and the IntegrationError is re-raised.

    Raises:
        ConfigError: If the configuration has no schedule
        IntegrationError: If an integration diverges
    """
    if config.schedule is None:
        raise ConfigError("The protocol command needs a 'schedule' section")
    schedule = config.schedule
    model = _model(config)
    emitter = Emitter(config.output_dir)

    report = None
    if isinstance(schedule, Schedule):
        report = feasibility_check(model, config.cavity, config.settings)
    gap = gap_location(model)
    logger.info("Gap %.6g at B=%.6g", gap.gap_min, gap.b_gap)

    values = config.sweep.grid() if config.sweep is not None else [_control_value(schedule)]
    task = partial(_protocol_point, model, config.cavity, schedule, config.settings, report, gap)
    single = config.sweep is None
    records: list[dict[str, Any]] = []
    summary: list[dict[str, float]] = []

    def results() -> Iterator[ProtocolResult]:
        if workers > 1 and len(values) > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                yield from executor.map(task, values)
        else:
            for value in values:
                yield task(value)

    try:
        for index, result in enumerate(results()):
            if on_progress:
                on_progress(
                    f"[{index + 1}/{len(values)}] {result.control_key}={result.control_value:.6g}: "
                    f"lambda_c={result.lambda_c:.4g}, n_c={result.n_c:.4g}"
                )
            records.append(result.to_dict())
            summary.append(result.summary_row())
            if "trajectory" in config.emit:
                name = "trajectory.csv" if single else f"trajectory_{index:03d}.csv"
                emitter.write_csv(name, _trajectory_frame(result))
    except IntegrationError as e:
        _write_protocol(emitter, config, records, summary, single)
        emitter.write_manifest("integration_failed", error=e.message)
        raise

    _write_protocol(emitter, config, records, summary, single)
    return EXIT_OK


def _trajectory_frame(result: ProtocolResult) -> pd.DataFrame:
    return pd.DataFrame(result.trajectory.to_columns())


def _write_protocol(
    emitter: Emitter,
    config: RunConfig,
    records: list[dict[str, Any]],
    summary: list[dict[str, float]],
    single: bool,
) -> None:
    if "protocol" not in config.emit:
        return
    if single and records:
        emitter.write_json("protocol.json", records[0])
        return
    emitter.write_json("protocol.json", records)
    emitter.write_csv("summary.csv", summary)


def describe_instance(
    instance: ECInstance, b_x: float, j0: float, settings: SolverSettings
) -> dict[str, Any]:
    """Solutions, violation histogram and gap location of an EC instance."""
    spec = ModelSpec(
        kind=ModelKind.EC,
        b_x=b_x,
        j0=j0,
        n_qubits=instance.n_qubits,
        clauses=instance.clauses,
    )
    model = build_model(spec, settings)
    gap = gap_location(model)
    return {
        "n_qubits": instance.n_qubits,
        "clauses": [list(clause.one_based()) for clause in instance.clauses],
        "satisfiable": instance.is_satisfiable,
        "unique": instance.has_unique_solution,
        "solutions": [assignment_to_string(s) for s in instance.solutions],
        "violation_histogram": instance.violation_histogram(),
        "gap": {"b_gap": gap.b_gap, "gap_min": gap.gap_min, "interior": gap.interior},
    }


def cmd_ec(
    instance_path: Path | None = None,
    clauses: str | None = None,
    generate: tuple[int, int] | None = None,
    seed: int = 0,
    unique: bool = False,
    b_x: float = 0.5,
    j0: float = 0.25,
    output_dir: Path | None = None,
    settings: SolverSettings | None = None,
    echo: Callable[[str], None] = print,
    on_progress: Callable[[str], None] | None = None,
) -> int:
    """Inspect an Exact Cover instance from a file, clause text or the generator.

    Prints the instance, its solutions, violation histogram and gap location.
    An instance path that does not exist may name a shipped instance
    (``exact-cover-6.txt``).
    Unsatisfiable instances are reported, not treated as errors.

    Raises:
        ConfigError: If no (or more than one) instance source is given
        ParseError: If the clause text is malformed
    """
    settings = settings or DEFAULT_SETTINGS
    sources = [instance_path is not None, clauses is not None, generate is not None]
    if sum(sources) != 1:
        raise ConfigError("Give exactly one of an instance file, clause text or --generate")

    if generate is not None:
        n_qubits, n_clauses = generate
        instance = generate_ec_instance(
            n_qubits,
            n_clauses,
            seed,
            require_unique=unique,
            settings=settings,
            on_progress=on_progress,
        )
    elif clauses is not None:
        instance = parse_ec_clauses(clauses)
    elif instance_path is not None:
        if not instance_path.exists() and str(instance_path) in instance_names():
            instance = parse_ec_clauses(shipped_instance(str(instance_path)))
        else:
            instance = load_ec_file(instance_path)

    summary = describe_instance(instance, b_x, j0, settings)
    echo(instance.to_text().rstrip())
    if summary["solutions"]:
        echo(f"solutions: {', '.join(summary['solutions'])}")
    else:
        echo("solutions: none (unsatisfiable)")
    histogram = ", ".join(f"{k}:{v}" for k, v in summary["violation_histogram"].items())
    echo(f"violation histogram: {histogram}")
    echo(f"gap: {summary['gap']['gap_min']:.6g} at B={summary['gap']['b_gap']:.6g}")

    if output_dir is not None:
        emitter = Emitter(output_dir)
        emitter.write_text("instance.txt", instance.to_text())
        emitter.write_json("ec.json", summary)
    return EXIT_OK


def run_config(
    config: RunConfig,
    command: str,
    workers: int = 1,
    on_progress: Callable[[str], None] | None = None,
) -> int:
    """Dispatch a configured command by name."""
    if command == "stationary":
        return cmd_stationary(config, workers=workers, on_progress=on_progress)
    if command == "protocol":
        return cmd_protocol(config, workers=workers, on_progress=on_progress)
    if command == "analyze":
        return cmd_analyze(config, on_progress=on_progress)
    raise ConfigError(f"Unknown command {command!r}")


__all__ = [
    "cmd_stationary",
    "cmd_analyze",
    "cmd_protocol",
    "cmd_ec",
    "describe_instance",
    "run_config",
]
