"""Domain model for the driven, damped ancilla cavity."""

from dataclasses import dataclass, replace

from ...exceptions import InvalidSpecError, ZeroDetuningError


def alpha(delta_c: float, kappa: float) -> float:
    """Cavity constant alpha = -(Delta_c^2 + (kappa/2)^2) / (2 Delta_c).

    Positive exactly when the detuning is negative.

    Raises:
        ZeroDetuningError: If delta_c is zero
    """
    if delta_c == 0.0:
        raise ZeroDetuningError("alpha is undefined at zero detuning")
    return -(delta_c**2 + (kappa / 2.0) ** 2) / (2.0 * delta_c)


@dataclass(frozen=True)
class CavityParams:
    """Cavity detuning, damping, qubit coupling and drive amplitude.

    Attributes:
        delta_c: Detuning Delta_c (negative for a feasible protocol)
        kappa: Damping rate (> 0)
        g: Coupling between cavity displacement and H_0
        epsilon: Drive amplitude
    """

    delta_c: float
    kappa: float
    g: float
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise InvalidSpecError(f"kappa must be positive, got {self.kappa}")
        if self.g < 0:
            raise InvalidSpecError(f"g must be non-negative, got {self.g}")

    @property
    def alpha(self) -> float:
        """The cavity constant for this detuning and damping."""
        return alpha(self.delta_c, self.kappa)

    @property
    def alpha_over_g2(self) -> float:
        """alpha / g^2, the bifurcation level for X'_ss."""
        if self.g == 0.0:
            return float("inf")
        return self.alpha / self.g**2

    def stationary_amplitude(self, x_op: float) -> complex:
        """Fixed point <a> = i(eps - g X) / (kappa/2 - i Delta_c) for a frozen X."""
        return 1j * (self.epsilon - self.g * x_op) / (self.kappa / 2.0 - 1j * self.delta_c)

    def with_epsilon(self, epsilon: float) -> "CavityParams":
        """Copy with a different drive amplitude."""
        return replace(self, epsilon=epsilon)

    def with_detuning(self, delta_c: float) -> "CavityParams":
        """Copy with a different detuning."""
        return replace(self, delta_c=delta_c)


__all__ = ["CavityParams", "alpha"]
