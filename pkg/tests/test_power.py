"""Tests for core/power.py."""

import numpy as np
import pytest

from hcfsim.core.errors import ConvergenceError, DimensionError
from hcfsim.core.power import PowerCoefficients, SinrCoefficients, maxmin_power_control


def random_coefficients(K, seed):
    rng = np.random.default_rng(seed)
    return SinrCoefficients(
        A=rng.uniform(0.5, 2.0, K),
        B=rng.uniform(0.0, 0.3, (K, K)),
        C=rng.uniform(0.0, 0.05, (K, K)),
        D=rng.uniform(0.05, 0.2, K),
    )


class TestSinrCoefficients:
    """Tests for SinrCoefficients."""

    def test_sinr_ignores_b_diagonal(self):
        """The diagonal of B should not count as interference."""
        coefficients = SinrCoefficients(
            A=np.array([1.0, 1.0]),
            B=np.array([[100.0, 1.0], [1.0, 100.0]]),
            C=np.zeros((2, 2)),
            D=np.array([1.0, 1.0]),
        )

        assert np.allclose(coefficients.sinr(np.ones(2)), [0.5, 0.5])

    def test_rejects_bad_shapes(self):
        """Mismatched shapes should raise DimensionError."""
        with pytest.raises(DimensionError):
            SinrCoefficients(A=np.ones(2), B=np.ones((3, 3)), C=np.ones((2, 2)), D=np.ones(2))

    def test_rejects_negative_entries(self):
        """Negative coefficients should raise DimensionError."""
        with pytest.raises(DimensionError):
            SinrCoefficients(A=np.ones(2), B=np.ones((2, 2)), C=-np.ones((2, 2)), D=np.ones(2))


class TestMaxMin:
    """Tests for maxmin_power_control()."""

    def test_symmetric_users_get_full_power(self):
        """Identical users should all transmit at full power."""
        coefficients = SinrCoefficients(
            A=np.full(3, 2.0), B=np.full((3, 3), 0.2), C=np.full((3, 3), 0.01), D=np.full(3, 0.1)
        )
        result = maxmin_power_control(coefficients)

        assert np.allclose(result.eta, 1.0)

    def test_equalizes_sinr(self):
        """Max-min should (nearly) equalize the SINRs."""
        coefficients = random_coefficients(5, seed=1)
        result = maxmin_power_control(coefficients, tol=1e-6)
        gamma = coefficients.sinr(result.eta)

        assert gamma.max() / gamma.min() < 1.01
        assert result.eta.max() == pytest.approx(1.0)
        assert np.all(result.eta >= 0)

    def test_not_worse_than_full_power(self):
        """The minimum SINR should not drop below the full-power minimum."""
        coefficients = random_coefficients(6, seed=2)
        result = maxmin_power_control(coefficients)

        assert result.min_sinr >= coefficients.sinr(np.ones(6)).min() * (1 - 1e-9)

    def test_matches_two_user_grid(self):
        """The bisection optimum should match a brute-force grid search."""
        coefficients = random_coefficients(2, seed=3)
        result = maxmin_power_control(coefficients, tol=1e-6)
        grid = np.linspace(0.0, 1.0, 4001)
        best = max(
            max(coefficients.sinr(np.array([1.0, x])).min(), coefficients.sinr(np.array([x, 1.0])).min())
            for x in grid
        )

        assert result.min_sinr == pytest.approx(best, rel=1e-3)

    def test_two_user_closed_form(self):
        """Interference-free users should reach the weaker user's full-power SINR."""
        coefficients = SinrCoefficients(
            A=np.array([1.0, 4.0]), B=np.zeros((2, 2)), C=np.zeros((2, 2)), D=np.array([1.0, 1.0])
        )
        result = maxmin_power_control(coefficients, tol=1e-8)

        assert result.eta == pytest.approx([1.0, 0.25], rel=1e-5)
        assert result.min_sinr == pytest.approx(1.0, rel=1e-5)

    def test_zero_gain_user_keeps_full_power(self):
        """A user with no coherent gain should leave everyone at full power."""
        coefficients = SinrCoefficients(
            A=np.array([0.0, 1.0]), B=np.zeros((2, 2)), C=np.zeros((2, 2)), D=np.ones(2)
        )
        result = maxmin_power_control(coefficients)

        assert np.array_equal(result.eta, np.ones(2))

    def test_convergence_error_carries_diagnostics(self):
        """Running out of bisection steps should raise ConvergenceError."""
        coefficients = random_coefficients(3, seed=4)

        with pytest.raises(ConvergenceError) as excinfo:
            maxmin_power_control(coefficients, tol=1e-12, max_bisection=2)
        assert excinfo.value.diagnostics["steps"] == 2


class TestPowerCoefficients:
    """Tests for PowerCoefficients validation."""

    def test_rejects_out_of_range(self):
        """Coefficients above one should be rejected."""
        with pytest.raises(ValueError):
            PowerCoefficients(eta=np.array([1.5]), min_sinr=1.0)
