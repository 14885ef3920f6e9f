"""Batch command-line surface."""

from .commands import cmd_analyze, cmd_ec, cmd_protocol, cmd_stationary, run_config
from .emit import Emitter

__all__ = ["cmd_stationary", "cmd_protocol", "cmd_analyze", "cmd_ec", "run_config", "Emitter"]
