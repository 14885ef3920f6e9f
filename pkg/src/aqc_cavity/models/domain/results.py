"""Result types of the stationary mean-field analysis."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .schedule import ControlKind


class Stability(str, Enum):
    """Linear stability of a stationary cavity displacement."""

    STABLE = "Stable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StationaryPoint:
    """A self-consistent stationary displacement.

    Attributes:
        x_ss: Cavity displacement
        b_eff: Effective field B_x - g x_ss
        stability: Stable when alpha - g^2 X'_ss(b_eff) > 0
        x_ss_prime: X'_ss at b_eff
        residual: |alpha x_ss - eps + g X_ss(b_eff)|
    """

    x_ss: float
    b_eff: float
    stability: Stability
    x_ss_prime: float = 0.0
    residual: float = 0.0

    @property
    def is_stable(self) -> bool:
        return self.stability is Stability.STABLE


@dataclass(frozen=True)
class BifurcationPoint:
    """A turning point of the stationary curve (d control / d x_ss = 0).

    Attributes:
        b_eff: Effective field B_i
        x: Displacement x_i = (B_x - B_i) / g
        control_value: epsilon_i or Delta_i
        control_kind: Which control ``control_value`` refers to
    """

    b_eff: float
    x: float
    control_value: float
    control_kind: ControlKind = ControlKind.EPSILON

    def to_dict(self) -> dict[str, Any]:
        """Record for bifurcations.json."""
        return {
            "b_eff": self.b_eff,
            "x": self.x,
            "control_value": self.control_value,
            "control_kind": self.control_kind.value,
        }


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the three parameter-feasibility conditions.

    Attributes:
        negative_detuning: Delta_c < 0
        bifurcation_window: X'_ss(0) < alpha/g^2 < max X'_ss
        endpoint_order: X_ss(B_x)/B_x < alpha/g^2
        alpha: Cavity constant
        alpha_over_g2: alpha / g^2
        x_ss_prime_at_zero: X'_ss(0)
        x_ss_prime_max: Largest X'_ss found on [0, B_x]
        eps0: Drive with stationary x_ss = 0 (B_eff = B_x)
        eps_f: Drive with stationary x_ss = B_x/g (B_eff = 0)
    """

    negative_detuning: bool
    bifurcation_window: bool
    endpoint_order: bool
    alpha: float
    alpha_over_g2: float
    x_ss_prime_at_zero: float
    x_ss_prime_max: float
    eps0: float
    eps_f: float
    bifurcations: tuple[BifurcationPoint, ...] = field(default=())

    @property
    def feasible(self) -> bool:
        """True when every condition passes."""
        return self.negative_detuning and self.bifurcation_window and self.endpoint_order

    def to_dict(self) -> dict[str, Any]:
        """Record for feasibility.json."""
        return {
            "feasible": self.feasible,
            "conditions": {
                "negative_detuning": self.negative_detuning,
                "bifurcation_window": self.bifurcation_window,
                "endpoint_order": self.endpoint_order,
            },
            "alpha": self.alpha,
            "alpha_over_g2": self.alpha_over_g2,
            "x_ss_prime_at_zero": self.x_ss_prime_at_zero,
            "x_ss_prime_max": self.x_ss_prime_max,
            "eps0": self.eps0,
            "eps_f": self.eps_f,
            "bifurcations": [b.to_dict() for b in self.bifurcations],
        }


@dataclass(frozen=True)
class SweepRow:
    """One stationary point of a control sweep.

    A control value without any root produces a single row with
    ``empty=True`` and NaN fields.

    Attributes:
        control: Control value (epsilon or Delta_c)
        x_ss: Stationary displacement
        b_eff: Effective field
        stability: Stability tag, None for empty rows
        re_omega_plus: Re omega_+ at this point
        re_omega_minus: Re omega_- at this point
    """

    control: float
    x_ss: float
    b_eff: float
    stability: Stability | None
    re_omega_plus: float = float("nan")
    re_omega_minus: float = float("nan")
    empty: bool = False

    def to_record(self) -> dict[str, Any]:
        """Row for sweep.csv."""
        return {
            "control": self.control,
            "x_ss": self.x_ss,
            "b_eff": self.b_eff,
            "stability": self.stability.value if self.stability else "Empty",
            "re_omega_plus": self.re_omega_plus,
            "re_omega_minus": self.re_omega_minus,
        }


__all__ = [
    "Stability",
    "StationaryPoint",
    "BifurcationPoint",
    "FeasibilityReport",
    "SweepRow",
]
