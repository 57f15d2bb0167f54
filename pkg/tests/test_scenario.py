"""Tests for core/scenario.py."""

import numpy as np
import pytest

from hcfsim.core.config import SystemConfig
from hcfsim.core.errors import DomainError
from hcfsim.core.scenario import (
    build_layout,
    generate_drop,
    large_scale_coefficient,
    local_scattering_covariance,
    path_loss_db,
)


def small_config(**overrides):
    params = dict(M=16, N_b=8, L=2, N_a=4, K=4, tau_p=2)
    params.update(overrides)
    return SystemConfig(**params)


class TestPathLoss:
    """Tests for the three-slope path loss."""

    def test_far_region(self):
        """At 1 km the loss should equal L0."""
        assert path_loss_db(1000.0) == pytest.approx(-140.72)

    def test_slope_beyond_d1(self):
        """Beyond 50 m the loss should fall 35 dB per decade."""
        assert path_loss_db(100.0) - path_loss_db(1000.0) == pytest.approx(35.0)

    def test_slope_between_breakpoints(self):
        """Between 10 m and 50 m the loss should fall 20 dB per decade."""
        assert path_loss_db(20.0) - path_loss_db(40.0) == pytest.approx(20 * np.log10(2))

    def test_flat_below_d0(self):
        """Below 10 m the loss should be constant."""
        assert path_loss_db(1.0) == pytest.approx(path_loss_db(10.0))

    @pytest.mark.parametrize("breakpoint", [10.0, 50.0])
    def test_continuous_at_breakpoints(self, breakpoint):
        """The loss should be continuous at both breakpoints."""
        eps = 1e-6
        assert path_loss_db(breakpoint - eps) == pytest.approx(path_loss_db(breakpoint + eps), abs=1e-6)

    def test_vectorized(self):
        """Arrays in should give arrays out."""
        values = path_loss_db(np.array([5.0, 30.0, 500.0]))

        assert values.shape == (3,)
        assert np.all(np.diff(values) < 0)

    @pytest.mark.parametrize("d", [0.0, -1.0])
    def test_rejects_non_positive_distance(self, d):
        """Distances must be positive."""
        with pytest.raises(DomainError):
            path_loss_db(d)


class TestLargeScaleCoefficient:
    """Tests for shadowed large-scale gains."""

    def test_no_shadowing(self):
        """With zero shadowing beta should be the path-loss gain."""
        beta, shadow = large_scale_coefficient(1000.0, np.random.default_rng(0), shadowing_std_db=0.0)

        assert shadow == 0.0
        assert beta == pytest.approx(10 ** (-140.72 / 10))

    def test_shadowing_statistics(self):
        """Shadowing should be zero-mean with an 8 dB deviation."""
        d = np.full(20000, 300.0)
        _, shadow = large_scale_coefficient(d, np.random.default_rng(1))

        assert abs(shadow.mean()) < 0.2
        assert shadow.std() == pytest.approx(8.0, rel=0.03)


class TestLocalScattering:
    """Tests for the local scattering correlation model."""

    def test_hermitian_with_trace(self):
        """R should be Hermitian with trace N * beta."""
        R = local_scattering_covariance(2e-10, 0.7, np.radians(30), 6)

        assert np.allclose(R, R.conj().T, rtol=0, atol=1e-25)
        assert np.trace(R).real == pytest.approx(6 * 2e-10)

    def test_positive_semidefinite(self):
        """Eigenvalues should be non-negative up to round-off."""
        R = local_scattering_covariance(1.0, -1.2, np.radians(30), 8)

        assert np.linalg.eigvalsh(R).min() > -1e-12

    def test_zero_spread_is_rank_one(self):
        """Without angular spread R should be rank one."""
        R = local_scattering_covariance(1.0, 0.4, 0.0, 8)

        assert np.linalg.matrix_rank(R, tol=1e-9) == 1

    def test_single_antenna(self):
        """A single antenna should give [[beta]]."""
        R = local_scattering_covariance(3.0, 0.1, 0.5, 1)

        assert R.shape == (1, 1)
        assert R[0, 0] == pytest.approx(3.0)

    def test_rejects_zero_antennas(self):
        """n_ant < 1 should raise DomainError."""
        with pytest.raises(DomainError):
            local_scattering_covariance(1.0, 0.0, 0.5, 0)


class TestDrop:
    """Tests for layout and drop generation."""

    def test_layout_places_central_array_at_origin(self):
        """Node 0 should sit at the centre for HCF."""
        layout = build_layout(small_config(), np.random.default_rng(0))

        assert np.allclose(layout.node_positions[0], 0.0)
        assert layout.n_nodes == 3
        assert layout.n_users == 4

    def test_positions_inside_disc(self):
        """Every point should lie inside the disc."""
        config = small_config(cell_radius_m=500.0)
        layout = build_layout(config, np.random.default_rng(3))

        assert np.all(np.hypot(*layout.user_positions.T) <= 500.0)
        assert np.all(np.hypot(*layout.node_positions.T) <= 500.0)

    def test_drop_shapes(self):
        """Correlation stacks should follow the node antenna counts."""
        drop = generate_drop(small_config(), np.random.default_rng(1))

        assert drop.beta.shape == (4, 3)
        assert [R.shape for R in drop.R] == [(4, 8, 8), (4, 4, 4), (4, 4, 4)]
        assert np.all(drop.beta > 0)
        assert np.array_equal(drop.correlation(2, 1), drop.R[1][2])

    def test_trace_matches_beta(self):
        """tr(R_kl) should equal N_l * beta_kl."""
        drop = generate_drop(small_config(), np.random.default_rng(2))

        for node, R in enumerate(drop.R):
            traces = np.trace(R, axis1=1, axis2=2).real
            assert np.allclose(traces, R.shape[1] * drop.beta[:, node])

    def test_same_seed_same_drop(self):
        """A drop should be a function of the generator state."""
        a = generate_drop(small_config(), np.random.default_rng(9))
        b = generate_drop(small_config(), np.random.default_rng(9))

        assert np.array_equal(a.beta, b.beta)
        assert np.array_equal(a.user_positions, b.user_positions)

    def test_provenance_fields_do_not_change_the_drop(self):
        """Carrier and antenna heights are recorded only; L0 carries the loss."""
        a = generate_drop(small_config(), np.random.default_rng(9))
        b = generate_drop(
            small_config(carrier_ghz=3.5, bs_height_m=30.0, ue_height_m=1.0), np.random.default_rng(9)
        )

        assert np.array_equal(a.beta, b.beta)
        assert all(np.array_equal(x, y) for x, y in zip(a.R, b.R))
