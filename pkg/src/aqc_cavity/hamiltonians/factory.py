"""Build an AdiabaticModel from a ModelSpec."""

from ..exceptions import InvalidSpecError
from ..models.domain.instance import ECInstance
from ..models.domain.spec import ModelKind, ModelSpec
from ..settings import DEFAULT_SETTINGS, SolverSettings
from .base import AdiabaticModel
from .bdg import BdGModel
from .dense import build_ec, build_tfim_dense, build_tls
from .exact_cover import generate_ec_instance


def resolve_instance(spec: ModelSpec, settings: SolverSettings = DEFAULT_SETTINGS) -> ECInstance:
    """The EC instance a spec describes: its clauses, or a generated unique-solution instance."""
    if spec.kind is not ModelKind.EC:
        raise InvalidSpecError(f"Only EC specs carry an instance, got {spec.kind.value}")
    if spec.clauses is not None:
        return ECInstance.from_clauses(spec.n_qubits, spec.clauses)
    if spec.seed is None:
        raise InvalidSpecError("An EC model needs clauses or a generator seed")
    n_clauses = spec.n_clauses if spec.n_clauses is not None else spec.n_qubits - 1
    return generate_ec_instance(
        spec.n_qubits, n_clauses, spec.seed, require_unique=True, settings=settings
    )


def build_model(
    spec: ModelSpec,
    settings: SolverSettings = DEFAULT_SETTINGS,
    backend: str = "auto",
) -> AdiabaticModel:
    """Construct the model for a spec.

    Args:
        spec: Model description
        settings: Numerical settings carried by the model
        backend: "auto", "dense" or "bdg"; only TFIM has a choice, "auto"
            selects the BdG backend

    Returns:
        AdiabaticModel

    Raises:
        InvalidSpecError: For an unknown backend or a backend the kind lacks
    """
    if backend not in ("auto", "dense", "bdg"):
        raise InvalidSpecError(f"Unknown backend {backend!r}")

    if spec.kind is ModelKind.TFIM:
        if backend == "dense":
            return build_tfim_dense(spec, settings)
        return BdGModel(spec, settings)

    if backend == "bdg":
        raise InvalidSpecError(f"The BdG backend only exists for TFIM, not {spec.kind.value}")
    if spec.kind is ModelKind.TLS:
        return build_tls(spec, settings)
    return build_ec(resolve_instance(spec, settings), spec, settings)


__all__ = ["build_model", "resolve_instance"]
