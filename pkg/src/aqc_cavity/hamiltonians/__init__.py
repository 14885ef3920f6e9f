"""Adiabatic model backends: dense matrices and the TFIM BdG pair basis."""

from .base import AdiabaticModel
from .bdg import (
    BdGModel,
    tfim_bdg_hamiltonian,
    tfim_modes,
    tfim_quasiparticle_energy,
    tfim_x_from_modes,
)
from .dense import DenseModel, TFIMDenseModel, TLSModel, build_ec, build_tfim_dense, build_tls
from .exact_cover import (
    count_violations,
    generate_ec_instance,
    load_ec_file,
    parse_ec_clauses,
    solutions,
)
from .factory import build_model, resolve_instance

__all__ = [
    "AdiabaticModel",
    "DenseModel",
    "TLSModel",
    "TFIMDenseModel",
    "BdGModel",
    "build_tls",
    "build_ec",
    "build_tfim_dense",
    "build_model",
    "resolve_instance",
    "parse_ec_clauses",
    "load_ec_file",
    "generate_ec_instance",
    "count_violations",
    "solutions",
    "tfim_modes",
    "tfim_quasiparticle_energy",
    "tfim_bdg_hamiltonian",
    "tfim_x_from_modes",
]
