"""Run configuration documents (JSON) mapped onto domain models."""

from .run_config import (
    EMIT_NAMES,
    RunConfig,
    SweepSpec,
    instance_names,
    load_config,
    load_preset,
    preset_names,
    shipped_instance,
)

__all__ = [
    "RunConfig",
    "SweepSpec",
    "load_config",
    "load_preset",
    "preset_names",
    "instance_names",
    "shipped_instance",
    "EMIT_NAMES",
]
