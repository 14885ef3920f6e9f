"""Tests for the stationary mean-field layer."""

import numpy as np
import pytest

from aqc_cavity.exceptions import EmptyResultError, InvalidInputError
from aqc_cavity.hamiltonians import BdGModel, DenseModel, TLSModel
from aqc_cavity.meanfield import (
    bifurcation_points,
    feasibility_check,
    follow_branch,
    linearization_matrix,
    secular_frequencies,
    stationary_points,
    sweep_control,
    sweep_values,
)
from aqc_cavity.models.domain import CavityParams, ControlKind, Stability, SweepRow
from aqc_cavity.spectral import gap_location, x_ss_prime


class TestStationaryPoints:
    """Tests for the self-consistent stationary displacement."""

    def test_uncoupled_root(self, tls_model: TLSModel) -> None:
        """Test x = eps / alpha at g = 0."""
        cavity = CavityParams(delta_c=-0.05, kappa=0.1, g=0.0, epsilon=0.3)
        points = stationary_points(tls_model, cavity)
        assert len(points) == 1
        assert points[0].x_ss == pytest.approx(6.0)
        assert points[0].b_eff == pytest.approx(1.0)
        assert points[0].is_stable

    def test_single_root_residual(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that a root outside the bistable window solves the stationary equation."""
        cavity = tls_cavity.with_epsilon(0.2)
        points = stationary_points(tls_model, cavity)
        assert len(points) == 1
        point = points[0]
        residual = (
            cavity.alpha * point.x_ss - cavity.epsilon + cavity.g * tls_model.x_ss(point.b_eff)
        )
        assert abs(residual) < 1e-10
        assert point.b_eff == pytest.approx(1.0 - 0.075 * point.x_ss)
        assert point.stability is Stability.STABLE

    def test_three_roots_in_window(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test the bistable window: stable, unstable, stable in ascending x."""
        cavity = tls_cavity.with_epsilon(0.33)
        points = stationary_points(tls_model, cavity)
        assert len(points) == 3
        assert [p.stability for p in points] == [
            Stability.STABLE,
            Stability.UNSTABLE,
            Stability.STABLE,
        ]
        assert [p.x_ss for p in points] == sorted(p.x_ss for p in points)

        middle = points[1]
        omega_plus, _ = secular_frequencies(middle.x_ss_prime, cavity)
        assert omega_plus.real > 0

    def test_tfim_bistability_structure(
        self, tfim_model: BdGModel, tfim_cavity: CavityParams
    ) -> None:
        """Test three chain roots inside the window and one outside it."""
        inside = stationary_points(tfim_model, tfim_cavity.with_epsilon(4.9))
        assert [p.stability for p in inside] == [
            Stability.STABLE,
            Stability.UNSTABLE,
            Stability.STABLE,
        ]
        omega_plus, _ = secular_frequencies(inside[1].x_ss_prime, tfim_cavity)
        assert omega_plus.real > 0
        for epsilon in (4.5, 5.2):
            assert len(stationary_points(tfim_model, tfim_cavity.with_epsilon(epsilon))) == 1

    def test_stability_matches_slope(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that the tag follows the sign of alpha - g^2 X'_ss."""
        for point in stationary_points(tls_model, tls_cavity.with_epsilon(0.33)):
            margin = tls_cavity.alpha - tls_cavity.g**2 * x_ss_prime(tls_model, point.b_eff)
            assert point.is_stable is (margin > 0)

    def test_positive_detuning(self, tls_model: TLSModel) -> None:
        """Test that alpha <= 0 is rejected."""
        cavity = CavityParams(delta_c=0.05, kappa=0.1, g=0.075, epsilon=0.3)
        with pytest.raises(InvalidInputError, match="alpha"):
            stationary_points(tls_model, cavity)

    def test_no_root_in_bracket(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that a drive beyond the bracket yields no root."""
        with pytest.raises(EmptyResultError, match="No stationary point"):
            stationary_points(tls_model, tls_cavity.with_epsilon(5.0))


class TestBifurcations:
    """Tests for the turning points of the stationary curve."""

    def test_tls_drive_bifurcations(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test the two TLS folds and their drives."""
        assert tls_cavity.alpha_over_g2 == pytest.approx(8.889, abs=1e-3)
        points = bifurcation_points(tls_model, tls_cavity)
        assert len(points) == 2
        assert sorted(p.b_eff for p in points) == pytest.approx([0.4577, 0.5423], abs=1e-3)
        assert [p.control_value for p in points] == pytest.approx([0.313, 0.3536], abs=1e-3)
        for point in points:
            assert x_ss_prime(tls_model, point.b_eff) == pytest.approx(
                tls_cavity.alpha_over_g2, rel=1e-8
            )
            assert point.x == pytest.approx((1.0 - point.b_eff) / 0.075)

    def test_fold_has_zero_growth_rate(
        self, tls_model: TLSModel, tls_cavity: CavityParams
    ) -> None:
        """Test that omega_+ vanishes where X'_ss = alpha / g^2."""
        omega_plus, omega_minus = secular_frequencies(tls_cavity.alpha_over_g2, tls_cavity)
        assert omega_plus == pytest.approx(0.0, abs=1e-12)
        assert omega_minus.real == pytest.approx(-0.1)

    def test_tfim_drive_bifurcations(
        self, tfim_model: BdGModel, tfim_cavity: CavityParams
    ) -> None:
        """Test the N = 120 chain folds."""
        assert tfim_cavity.alpha_over_g2 == pytest.approx(92.06, abs=0.01)
        points = bifurcation_points(tfim_model, tfim_cavity)
        assert len(points) == 2
        assert [p.control_value for p in points] == pytest.approx([4.77, 5.01], abs=0.05)

    def test_tfim_folds_have_zero_growth_rate(
        self, tfim_model: BdGModel, tfim_cavity: CavityParams
    ) -> None:
        """Test Re omega_+ = 0 at both chain folds."""
        for point in bifurcation_points(tfim_model, tfim_cavity):
            omega_plus, _ = secular_frequencies(x_ss_prime(tfim_model, point.b_eff), tfim_cavity)
            assert omega_plus.real == pytest.approx(0.0, abs=1e-6)

    def test_ec_bifurcations_bracket_gap(
        self, ec_model: DenseModel, ec_cavity: CavityParams
    ) -> None:
        """Test exactly two Exact Cover folds, one on each side of the gap."""
        points = bifurcation_points(ec_model, ec_cavity)
        assert len(points) == 2
        low, high = sorted(p.b_eff for p in points)
        assert low < gap_location(ec_model).b_gap < high
        assert all(p.control_value > 0 for p in points)

    def test_tfim_detuning_bifurcations(
        self, tfim_model: BdGModel, tfim_cavity: CavityParams
    ) -> None:
        """Test the detuning-controlled folds at eps = 5."""
        points = bifurcation_points(
            tfim_model, tfim_cavity.with_epsilon(5.0), control=ControlKind.DELTA_C
        )
        assert len(points) == 2
        assert all(p.control_kind is ControlKind.DELTA_C for p in points)
        assert [p.control_value for p in points] == pytest.approx([-0.155, -0.14], abs=0.005)

    def test_uncoupled(self, tls_model: TLSModel) -> None:
        """Test that g = 0 has no fold."""
        cavity = CavityParams(delta_c=-0.05, kappa=0.1, g=0.0)
        with pytest.raises(EmptyResultError, match="g = 0"):
            bifurcation_points(tls_model, cavity)

    def test_level_above_peak(self, tls_model: TLSModel) -> None:
        """Test that alpha / g^2 above max X'_ss has no fold."""
        cavity = CavityParams(delta_c=-0.05, kappa=0.1, g=0.01)
        with pytest.raises(EmptyResultError, match="No bifurcation"):
            bifurcation_points(tls_model, cavity)


class TestSecularFrequencies:
    """Tests for the small-fluctuation frequencies."""

    def test_matches_linearization_eigenvalues(self, tls_cavity: CavityParams) -> None:
        """Test that omega_+- are the eigenvalues of the fluctuation matrix."""
        for slope in (0.5, 5.0, 8.0, 12.0, 20.0):
            eigenvalues = np.linalg.eigvals(linearization_matrix(slope, tls_cavity))
            expected = secular_frequencies(slope, tls_cavity)
            assert sorted(eigenvalues, key=lambda z: (z.real, z.imag)) == pytest.approx(
                sorted(expected, key=lambda z: (z.real, z.imag)), abs=1e-12
            )

    def test_complex_pair_below_threshold(self, tls_cavity: CavityParams) -> None:
        """Test that a negative radicand gives damped oscillation."""
        omega_plus, omega_minus = secular_frequencies(0.0, tls_cavity)
        assert omega_plus.real == pytest.approx(-0.05)
        assert omega_plus.imag == pytest.approx(0.05)
        assert omega_minus == pytest.approx(omega_plus.conjugate())


class TestSweeps:
    """Tests for control sweeps and branch following."""

    def test_rows_are_ordered(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test ordering by control value, then x_ss."""
        rows = sweep_control(tls_model, tls_cavity, ControlKind.EPSILON, (0.2, 0.4), 9)
        keys = [(r.control, r.x_ss) for r in rows]
        assert keys == sorted(keys)
        assert sorted({r.control for r in rows}) == pytest.approx(list(np.linspace(0.2, 0.4, 9)))

    def test_bistable_values_have_three_rows(
        self, tls_model: TLSModel, tls_cavity: CavityParams
    ) -> None:
        """Test that each control inside the window lists all three roots."""
        rows = sweep_values(tls_model, tls_cavity, ControlKind.EPSILON, [0.2, 0.33])
        assert [r.control for r in rows] == [0.2, 0.33, 0.33, 0.33]

    def test_empty_rows(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that values without a root produce one Empty row."""
        rows = sweep_values(tls_model, tls_cavity, ControlKind.EPSILON, [5.0])
        assert len(rows) == 1
        assert rows[0].empty is True
        assert rows[0].to_record()["stability"] == "Empty"

    def test_positive_detuning_rows_are_empty(
        self, tls_model: TLSModel, tls_cavity: CavityParams
    ) -> None:
        """Test that detuning sweeps tag alpha <= 0 values as Empty."""
        rows = sweep_values(
            tls_model, tls_cavity.with_epsilon(0.3), ControlKind.DELTA_C, [0.0, 0.05]
        )
        assert all(r.empty for r in rows)

    def test_worker_count_does_not_change_rows(
        self, tls_model: TLSModel, tls_cavity: CavityParams
    ) -> None:
        """Test that a process pool returns the serial result."""
        serial = sweep_control(tls_model, tls_cavity, ControlKind.EPSILON, (0.25, 0.4), 6)
        pooled = sweep_control(
            tls_model, tls_cavity, ControlKind.EPSILON, (0.25, 0.4), 6, workers=2
        )
        assert [r.to_record() for r in serial] == [r.to_record() for r in pooled]

    def test_too_few_points(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that a sweep needs two points."""
        with pytest.raises(InvalidInputError, match="at least 2"):
            sweep_control(tls_model, tls_cavity, ControlKind.EPSILON, (0.2, 0.4), 1)

    def test_hysteresis(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test that upward and downward traversals disagree inside the window."""
        rows = sweep_control(tls_model, tls_cavity, ControlKind.EPSILON, (0.25, 0.42), 35)
        up = follow_branch(rows, "up")
        down = follow_branch(rows, "down")
        assert len(up) == len(down) == 35

        def at(branch: list[SweepRow], value: float) -> float:
            return min(branch, key=lambda r: abs(r.control - value)).b_eff

        assert at(up, 0.33) > 0.5
        assert at(down, 0.33) < 0.5
        assert at(up, 0.25) == pytest.approx(at(down, 0.25))
        assert at(up, 0.42) == pytest.approx(at(down, 0.42))

    def test_follow_branch_direction(self) -> None:
        """Test direction validation."""
        with pytest.raises(InvalidInputError, match="direction"):
            follow_branch([], "sideways")


class TestFeasibility:
    """Tests for the protocol feasibility conditions."""

    def test_tls_is_feasible(self, tls_model: TLSModel, tls_cavity: CavityParams) -> None:
        """Test the reference TLS parameters and their endpoint drives."""
        report = feasibility_check(tls_model, tls_cavity)
        assert report.feasible is True
        assert report.x_ss_prime_max == pytest.approx(20.0, rel=1e-6)
        assert report.eps0 == pytest.approx(0.0746, abs=1e-4)
        assert report.eps_f == pytest.approx(0.592, abs=1e-3)
        assert len(report.bifurcations) == 2

    def test_tfim_is_feasible(self, tfim_model: BdGModel, tfim_cavity: CavityParams) -> None:
        """Test the reference chain parameters."""
        report = feasibility_check(tfim_model, tfim_cavity)
        assert report.feasible is True
        assert report.x_ss_prime_at_zero == pytest.approx(60.0)
        assert 3.2 < report.eps0 < 3.5
        assert report.eps_f == pytest.approx(5.3857, abs=1e-3)

    def test_ec_is_feasible(self, ec_model: DenseModel, ec_cavity: CavityParams) -> None:
        """Test the reference Exact Cover parameters."""
        report = feasibility_check(ec_model, ec_cavity)
        assert report.alpha_over_g2 == pytest.approx(35.6, abs=0.05)
        assert report.feasible is True
        assert report.eps0 < report.eps_f

    def test_positive_detuning_fails(self, tls_model: TLSModel) -> None:
        """Test that Delta_c > 0 fails the first condition without raising."""
        report = feasibility_check(tls_model, CavityParams(delta_c=0.05, kappa=0.1, g=0.075))
        assert report.negative_detuning is False
        assert report.feasible is False
        assert report.bifurcations == ()

    def test_weak_coupling_fails_window(self, tls_model: TLSModel) -> None:
        """Test that alpha / g^2 above max X'_ss fails the bifurcation window."""
        report = feasibility_check(tls_model, CavityParams(delta_c=-0.05, kappa=0.1, g=0.01))
        assert report.bifurcation_window is False
        assert report.feasible is False

    def test_strong_coupling_fails_window(self, tls_model: TLSModel) -> None:
        """Test that alpha / g^2 below X'_ss(0) fails the bifurcation window."""
        report = feasibility_check(tls_model, CavityParams(delta_c=-0.05, kappa=0.1, g=5.0))
        assert report.alpha_over_g2 < report.x_ss_prime_at_zero
        assert report.bifurcation_window is False
