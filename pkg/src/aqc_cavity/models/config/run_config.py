"""Run configuration documents and their conversion to domain models."""

import json
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from ...exceptions import AqcCavityError, ConfigError
from ...settings import DEFAULT_SETTINGS, SolverSettings
from ..domain.cavity import CavityParams
from ..domain.schedule import ControlKind, DetuningSchedule, Schedule
from ..domain.spec import ModelKind, ModelSpec

EMIT_NAMES = frozenset({"sweep", "bifurcations", "trajectory", "protocol", "observables"})
COMMANDS = ("stationary", "protocol", "analyze")
BACKENDS = ("auto", "dense", "bdg")


def _require(data: dict[str, Any], key: str, section: str) -> Any:
    if key not in data or data[key] is None:
        raise ConfigError(f"Missing required key '{key}' in '{section}'")
    return data[key]


def _section(data: dict[str, Any], key: str) -> dict[str, Any] | None:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be an object, got {type(value).__name__}")
    return value


def _control(value: Any) -> ControlKind:
    try:
        return ControlKind(value)
    except ValueError as e:
        choices = ", ".join(kind.value for kind in ControlKind)
        raise ConfigError(f"Unknown control {value!r} (expected one of: {choices})") from e


@dataclass(frozen=True)
class SweepSpec:
    """Control grid for a sweep.

    Attributes:
        control: Swept quantity (drive or detuning)
        lo: Lower bound
        hi: Upper bound
        n: Number of uniformly spaced points
        values: Explicit grid points; used instead of lo/hi/n when given
    """

    control: ControlKind
    lo: float
    hi: float
    n: int
    values: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.values is None:
            if not self.lo < self.hi:
                raise ConfigError(f"Sweep bounds need lo < hi, got lo={self.lo}, hi={self.hi}")
            if self.n < 2:
                raise ConfigError(f"Sweep needs at least 2 points, got n={self.n}")
        elif not self.values:
            raise ConfigError("Sweep 'values' must not be empty")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepSpec":
        """Create a SweepSpec from its JSON object.

        Either ``lo``/``hi``/``n`` or an explicit ``values`` list is required.
        """
        values = data.get("values")
        if values is not None:
            grid = tuple(float(v) for v in values)
            return cls(
                control=_control(data.get("control", "epsilon")),
                lo=min(grid, default=0.0),
                hi=max(grid, default=0.0),
                n=len(grid),
                values=grid,
            )
        return cls(
            control=_control(data.get("control", "epsilon")),
            lo=float(_require(data, "lo", "sweep")),
            hi=float(_require(data, "hi", "sweep")),
            n=int(_require(data, "n", "sweep")),
        )

    def grid(self) -> list[float]:
        """Grid points in sweep order."""
        if self.values is not None:
            return list(self.values)
        return [float(v) for v in np.linspace(self.lo, self.hi, self.n)]


def _model_from_dict(data: dict[str, Any], base_dir: Path) -> tuple[ModelSpec, Path | None]:
    from ...hamiltonians.exact_cover import load_ec_file, parse_ec_clauses

    try:
        kind = ModelKind(str(_require(data, "kind", "model")).upper())
    except ValueError as e:
        raise ConfigError(f"Unknown model kind {data.get('kind')!r}") from e

    n_qubits = data.get("n_qubits")
    instance_file: Path | None = None
    clauses = None
    if kind is ModelKind.EC:
        if data.get("instance_file"):
            instance_file = Path(data["instance_file"])
            if not instance_file.is_absolute():
                instance_file = base_dir / instance_file
            if not instance_file.is_file():
                raise ConfigError(f"Instance file not found: {instance_file}")
            instance = load_ec_file(instance_file, n_qubits=n_qubits)
        elif data.get("clauses"):
            text = data["clauses"]
            if isinstance(text, list):
                text = "; ".join(" ".join(str(i) for i in clause) for clause in text)
            instance = parse_ec_clauses(str(text), n_qubits=n_qubits)
        else:
            instance = None
        if instance is not None:
            clauses = instance.clauses
            n_qubits = instance.n_qubits

    spec = ModelSpec(
        kind=kind,
        b_x=float(_require(data, "b_x", "model")),
        j0=float(_require(data, "j0", "model")),
        n_qubits=int(n_qubits if n_qubits is not None else 1),
        clauses=clauses,
        seed=data.get("seed"),
        n_clauses=data.get("n_clauses"),
    )
    return spec, instance_file


def _schedule_from_dict(data: dict[str, Any]) -> Schedule | DetuningSchedule:
    optional = {key: data[key] for key in ("t_max", "dt", "settle_tol", "stride") if key in data}
    if _control(data.get("control", "epsilon")) is ControlKind.DELTA_C:
        return DetuningSchedule(
            epsilon=float(_require(data, "epsilon", "schedule")),
            delta_mid=float(_require(data, "delta_mid", "schedule")),
            switch_threshold=float(_require(data, "switch_threshold", "schedule")),
            delta0=float(data.get("delta0", -1.0)),
            delta_f=data.get("delta_f"),
            **optional,
        )
    return Schedule(
        eps_mid=float(_require(data, "eps_mid", "schedule")),
        switch_threshold=float(_require(data, "switch_threshold", "schedule")),
        eps0=data.get("eps0"),
        eps_f=data.get("eps_f"),
        **optional,
    )


def _settings_from_dict(data: dict[str, Any] | None) -> SolverSettings:
    if not data:
        return DEFAULT_SETTINGS
    known = {f.name for f in fields(SolverSettings)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown solver settings: {', '.join(unknown)}")
    return DEFAULT_SETTINGS.replace(**data)


@dataclass(frozen=True)
class RunConfig:
    """One batch run: model, cavity, optional schedule and sweep, outputs.

    Attributes:
        model: Model description
        cavity: Cavity parameters (epsilon is the base drive)
        schedule: Protocol schedule, required by the protocol command
        sweep: Control grid, required by the stationary command
        output_dir: Directory receiving all output files
        emit: Which outputs to write
        command: Command a preset runs
        backend: Model backend ("auto", "dense", "bdg")
        analyze_points: B_eff grid size for the analyze command
        n_levels: Spectrum levels for the analyze command
        instance_file: EC instance file the clauses were read from
        settings: Numerical settings
    """

    model: ModelSpec
    cavity: CavityParams
    schedule: Schedule | DetuningSchedule | None = None
    sweep: SweepSpec | None = None
    output_dir: Path = Path("out")
    emit: frozenset[str] = EMIT_NAMES
    command: str | None = None
    backend: str = "auto"
    analyze_points: int = 201
    n_levels: int = 4
    instance_file: Path | None = None
    settings: SolverSettings = field(default=DEFAULT_SETTINGS)

    def __post_init__(self) -> None:
        unknown = sorted(set(self.emit) - EMIT_NAMES)
        if unknown:
            raise ConfigError(f"Unknown emit targets: {', '.join(unknown)}")
        if self.command is not None and self.command not in COMMANDS:
            raise ConfigError(f"Unknown command {self.command!r}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"Unknown backend {self.backend!r}")
        if self.analyze_points < 2:
            raise ConfigError(f"analyze_points must be >= 2, got {self.analyze_points}")

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> "RunConfig":
        """Create a RunConfig from a parsed JSON document.

        Unknown top-level keys are ignored.

        Args:
            data: Parsed configuration document
            base_dir: Directory relative instance paths are resolved against

        Returns:
            RunConfig instance

        Raises:
            ConfigError: Missing or invalid keys, missing instance file
        """
        if not isinstance(data, dict):
            raise ConfigError("Configuration document must be a JSON object")
        base_dir = base_dir or Path.cwd()
        try:
            model_data = _section(data, "model")
            cavity_data = _section(data, "cavity")
            if model_data is None or cavity_data is None:
                raise ConfigError("Configuration needs 'model' and 'cavity' sections")
            spec, instance_file = _model_from_dict(model_data, base_dir)
            cavity = CavityParams(
                delta_c=float(_require(cavity_data, "delta_c", "cavity")),
                kappa=float(_require(cavity_data, "kappa", "cavity")),
                g=float(_require(cavity_data, "g", "cavity")),
                epsilon=float(cavity_data.get("epsilon", 0.0)),
            )
            schedule_data = _section(data, "schedule")
            sweep_data = _section(data, "sweep")
            analyze = _section(data, "analyze") or {}
            return cls(
                model=spec,
                cavity=cavity,
                schedule=_schedule_from_dict(schedule_data) if schedule_data else None,
                sweep=SweepSpec.from_dict(sweep_data) if sweep_data else None,
                output_dir=Path(data.get("output_dir", "out")),
                emit=frozenset(data.get("emit", EMIT_NAMES)),
                command=data.get("command"),
                backend=str(model_data.get("backend", "auto")),
                analyze_points=int(analyze.get("n_points", 201)),
                n_levels=int(analyze.get("n_levels", 4)),
                instance_file=instance_file,
                settings=_settings_from_dict(_section(data, "settings")),
            )
        except ConfigError:
            raise
        except AqcCavityError as e:
            raise ConfigError(e.message) from e
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration value: {e}") from e

    def with_overrides(
        self,
        output_dir: Path | None = None,
        dt: float | None = None,
        t_max: float | None = None,
        seed: int | None = None,
    ) -> "RunConfig":
        """Apply command-line overrides."""
        config = self
        if output_dir is not None:
            config = replace(config, output_dir=output_dir)
        if config.schedule is not None and (dt is not None or t_max is not None):
            schedule = config.schedule
            if dt is not None:
                schedule = replace(schedule, dt=dt)
            if t_max is not None:
                schedule = replace(schedule, t_max=t_max)
            config = replace(config, schedule=schedule)
        if seed is not None:
            config = replace(config, model=replace(config.model, seed=seed))
        return config


def load_config(path: Path) -> RunConfig:
    """Read a RunConfig from a JSON file.

    Raises:
        ConfigError: If the file is missing, not JSON, or invalid
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
    return RunConfig.from_dict(data, base_dir=path.parent)


def _preset_dir() -> Any:
    return resources.files("aqc_cavity").joinpath("cli", "presets")


def preset_names() -> list[str]:
    """Names of the shipped presets."""
    return sorted(
        entry.name.removesuffix(".json")
        for entry in _preset_dir().iterdir()
        if entry.name.endswith(".json")
    )


def instance_names() -> list[str]:
    """Names of the shipped Exact Cover instance files."""
    return sorted(entry.name for entry in _preset_dir().iterdir() if entry.name.endswith(".txt"))


def shipped_instance(name: str) -> str:
    """Text of a shipped Exact Cover instance file (e.g. "exact-cover-6.txt").

    Raises:
        ConfigError: If no instance has that name
    """
    if name not in instance_names():
        raise ConfigError(
            f"Unknown instance {name!r} (available: {', '.join(instance_names())})"
        )
    return str(_preset_dir().joinpath(name).read_text(encoding="utf-8"))


def load_preset(name: str) -> RunConfig:
    """Load a shipped preset by name (e.g. "tls-protocol-sweep").

    A preset's ``instance_file`` names one of the shipped instances.

    Raises:
        ConfigError: If no preset has that name
    """
    if name not in preset_names():
        raise ConfigError(f"Unknown preset {name!r} (available: {', '.join(preset_names())})")
    text = _preset_dir().joinpath(f"{name}.json").read_text(encoding="utf-8")
    document = json.loads(text)
    model = document.get("model")
    if isinstance(model, dict) and model.get("instance_file"):
        model["clauses"] = shipped_instance(model.pop("instance_file"))
    return RunConfig.from_dict(document)


__all__ = [
    "SweepSpec",
    "RunConfig",
    "load_config",
    "load_preset",
    "preset_names",
    "instance_names",
    "shipped_instance",
    "EMIT_NAMES",
]
