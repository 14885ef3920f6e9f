"""Tests for eigendecomposition, ground-state observables and gap location."""

import math

import numpy as np
import pytest

from aqc_cavity.exceptions import DegenerateGroundError, InvalidInputError
from aqc_cavity.hamiltonians import BdGModel, DenseModel, TLSModel, build_ec
from aqc_cavity.hamiltonians.exact_cover import parse_ec_clauses
from aqc_cavity.models.domain import ModelKind, ModelSpec
from aqc_cavity.settings import SolverSettings
from aqc_cavity.spectral import (
    eigh,
    gap_location,
    ground_observables,
    observables_scan,
    spectrum_scan,
    tls_xss_analytic,
    x_ss_prime,
    xss_prime_perturbative,
)


class TestEigh:
    """Tests for the symmetric eigensolver wrapper."""

    def test_ascending_orthonormal(self) -> None:
        """Test eigenvalue order and eigenvector orthonormality."""
        rng = np.random.default_rng(0)
        a = rng.normal(size=(6, 6))
        spectrum = eigh(a + a.T)
        assert np.all(np.diff(spectrum.eigenvalues) >= 0)
        np.testing.assert_allclose(
            spectrum.eigenvectors.T @ spectrum.eigenvectors, np.eye(6), atol=1e-12
        )

    def test_gap_property(self) -> None:
        """Test E_1 - E_0 on a diagonal matrix."""
        spectrum = eigh(np.diag([3.0, -1.0, 0.5]))
        assert spectrum.ground_energy == pytest.approx(-1.0)
        assert spectrum.gap == pytest.approx(1.5)

    def test_one_dimensional_gap(self) -> None:
        """Test that a 1x1 spectrum has an infinite gap."""
        assert math.isinf(eigh([[2.0]]).gap)

    def test_rejects_asymmetric(self) -> None:
        """Test the symmetry check."""
        with pytest.raises(InvalidInputError, match="symmetric"):
            eigh([[0.0, 1.0], [0.0, 0.0]])

    def test_rejects_non_square(self) -> None:
        """Test the shape check."""
        with pytest.raises(InvalidInputError, match="square"):
            eigh(np.zeros((2, 3)))

    def test_rejects_oversize(self) -> None:
        """Test the dimension cap."""
        with pytest.raises(InvalidInputError, match="cap"):
            eigh(np.eye(8), SolverSettings(max_dim=4))


class TestTLSObservables:
    """Tests for the closed-form two-level observables."""

    def test_finite_difference_matches_closed_form(self, tls_model: TLSModel) -> None:
        """Test Richardson-extrapolated X'_ss against the analytic derivative."""
        for b in (0.2, 0.45, 0.5, 0.55, 0.9):
            observables = ground_observables(tls_model, b)
            analytic = tls_model.x_ss_prime_analytic(b)
            assert analytic is not None
            assert observables.x_ss_prime == pytest.approx(analytic, rel=1e-6)

    def test_perturbative_matches_closed_form(self, tls_model: TLSModel) -> None:
        """Test the second-order sum against the analytic derivative."""
        for b in (0.2, 0.5, 0.8):
            assert xss_prime_perturbative(tls_model, b) == pytest.approx(
                tls_model.x_ss_prime_analytic(b), rel=1e-9
            )

    def test_peak_derivative(self, tls_model: TLSModel) -> None:
        """Test that X'_ss peaks at 2 / J_0 = 20 at the avoided crossing."""
        assert x_ss_prime(tls_model, 0.5) == pytest.approx(20.0, rel=1e-12)
        assert x_ss_prime(tls_model, 0.4) < 20.0

    def test_gap_location(self, tls_model: TLSModel) -> None:
        """Test that the minimum gap J_0 sits at B_x / 2."""
        location = gap_location(tls_model)
        assert location.b_gap == pytest.approx(0.5, abs=1e-6)
        assert location.gap_min == pytest.approx(0.1, rel=1e-8)
        assert location.interior is True

    def test_closed_form_values(self) -> None:
        """Test X_ss at the crossing and its limits."""
        assert tls_xss_analytic(0.5, 1.0, 0.1) == 0.0
        assert tls_xss_analytic(1.0, 1.0, 0.1) == pytest.approx(1.0 / math.sqrt(1.01))
        assert tls_xss_analytic(0.0, 1.0, 0.1) == pytest.approx(-1.0 / math.sqrt(1.01))
        assert tls_xss_analytic(1e6, 1.0, 0.1) == pytest.approx(1.0)

    def test_non_positive_step(self, tls_model: TLSModel) -> None:
        """Test that the difference step must be positive."""
        with pytest.raises(InvalidInputError, match="fd_step"):
            ground_observables(tls_model, 0.5, fd_step=0.0)


class TestExactCoverObservables:
    """Tests for the Exact Cover observables."""

    def test_derivative_at_zero_field(self, ec_model: DenseModel) -> None:
        """Test X'_ss(0) = 2 sum_j 1 / (J_0 v_j) over single flips of the solution."""
        expected = 8.0 * (1 / 2 + 4 / 3 + 1)
        assert x_ss_prime(ec_model, 0.0) == pytest.approx(expected, rel=1e-3)
        assert xss_prime_perturbative(ec_model, 0.0) == pytest.approx(expected, rel=1e-9)

    def test_finite_difference_matches_perturbative(self, ec_model: DenseModel) -> None:
        """Test the two X'_ss methods away from the gap."""
        for b in (0.05, 0.3):
            fd = ground_observables(ec_model, b).x_ss_prime
            assert fd == pytest.approx(xss_prime_perturbative(ec_model, b), rel=1e-4)

    def test_gap_location(self, ec_model: DenseModel) -> None:
        """Test the minimum gap position and size."""
        location = gap_location(ec_model)
        assert location.b_gap == pytest.approx(0.12, abs=0.01)
        assert location.gap_min == pytest.approx(0.10, abs=0.01)

    def test_degenerate_ground_state(self) -> None:
        """Test that a single clause over three qubits leaves B = 0 degenerate."""
        instance = parse_ec_clauses("1 2 3")
        spec = ModelSpec(
            kind=ModelKind.EC, b_x=0.5, j0=0.25, n_qubits=3, clauses=instance.clauses
        )
        model = build_ec(instance, spec)
        assert ground_observables(model, 0.0).degenerate is True
        with pytest.raises(DegenerateGroundError) as exc_info:
            xss_prime_perturbative(model, 0.0)
        assert exc_info.value.b_eff == 0.0
        with pytest.raises(DegenerateGroundError):
            model.excitation_probability(model.ground_state(0.0), 0.0)


class TestTFIMObservables:
    """Tests for the BdG closed forms at N = 120."""

    def test_derivative_at_zero_field(self, tfim_model: BdGModel) -> None:
        """Test X'_ss(0) = N / (2 J)."""
        assert x_ss_prime(tfim_model, 0.0) == pytest.approx(60.0, rel=1e-12)

    def test_closed_form_matches_finite_difference(self, tfim_model: BdGModel) -> None:
        """Test the closed-form derivative against central differences."""
        for b in (0.4, 1.3):
            fd = ground_observables(tfim_model, b).x_ss_prime
            assert fd == pytest.approx(tfim_model.x_ss_prime_analytic(b), rel=1e-6)

    def test_gap_at_critical_field(self, tfim_model: BdGModel) -> None:
        """Test min_k eps_k = 4 sin(pi / 2N) at B = J."""
        assert tfim_model.gap(1.0) == pytest.approx(4.0 * math.sin(math.pi / 240.0), rel=1e-12)
        assert tfim_model.gap(1.0) == pytest.approx(2.0 * math.pi / 120.0, rel=1e-4)

    def test_gap_location(self, tfim_model: BdGModel) -> None:
        """Test that the minimum gap sits near the critical field."""
        location = gap_location(tfim_model)
        assert location.b_gap == pytest.approx(1.0, abs=0.01)
        assert location.gap_min <= tfim_model.gap(1.0) + 1e-12

    def test_limits(self, tfim_model: BdGModel) -> None:
        """Test that X_ss runs from 0 toward N."""
        assert tfim_model.x_ss(0.0) == pytest.approx(0.0, abs=1e-9)
        assert tfim_model.x_ss(100.0) == pytest.approx(120.0, rel=1e-3)


class TestScans:
    """Tests for grid scans and gap search arguments."""

    def test_spectrum_scan_shape(self, tls_model: TLSModel) -> None:
        """Test one row per field with n_levels columns."""
        levels = spectrum_scan(tls_model, [0.0, 0.5, 1.0], n_levels=2)
        assert levels.shape == (3, 2)
        assert levels[1, 1] - levels[1, 0] == pytest.approx(0.1)

    def test_spectrum_scan_levels(self, tls_model: TLSModel) -> None:
        """Test that n_levels must be positive."""
        with pytest.raises(InvalidInputError):
            spectrum_scan(tls_model, [0.5], n_levels=0)

    def test_observables_scan_order(self, tls_model: TLSModel) -> None:
        """Test that scan records follow the grid."""
        records = observables_scan(tls_model, [0.1, 0.7])
        assert [r.b_eff for r in records] == [0.1, 0.7]
        assert list(records[0].to_record()) == ["b_eff", "x_ss", "x_ss_prime", "gap"]

    def test_too_few_samples(self, tls_model: TLSModel) -> None:
        """Test that the gap search needs three samples."""
        with pytest.raises(InvalidInputError, match="n_samples"):
            gap_location(tls_model, n_samples=2)

    def test_empty_range(self, tls_model: TLSModel) -> None:
        """Test that the search interval must be non-empty."""
        with pytest.raises(InvalidInputError, match="Empty"):
            gap_location(tls_model, b_range=(0.5, 0.5))

    def test_monotone_gap(self, tls_model: TLSModel) -> None:
        """Test that a monotone gap returns the endpoint."""
        location = gap_location(tls_model, b_range=(0.6, 1.0))
        assert location.interior is False
        assert location.b_gap == pytest.approx(0.6)
