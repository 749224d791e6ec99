"""Amplitude-damping channel: Kraus structure, analytic action, and the
physical laws it must obey (trace preservation, positivity, commutation
with discarding untouched modes)."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzsim import (
    DampingParams,
    DensityOperator,
    ModeLabel,
    ModeRegister,
    ParameterError,
    amplitude_damping_kraus,
    apply_damping,
    partial_trace,
    validate_density,
)
from conftest import damp_qubit_oracle, random_density_matrix

ABC = ModeRegister((ModeLabel.A, ModeLabel.B, ModeLabel.C))


class TestKrausPair:
    @pytest.mark.parametrize("p", [0.0, 0.17, 0.5, 1.0])
    def test_completeness(self, p):
        pair = amplitude_damping_kraus(DampingParams(p))
        assert pair.completeness_deviation() < 1e-15

    def test_decay_element(self):
        pair = amplitude_damping_kraus(DampingParams(0.36))
        assert pair.m1[0, 1] == pytest.approx(0.6)
        assert pair.m0[1, 1] == pytest.approx(0.8)

    @pytest.mark.parametrize("p", [-0.2, 1.5])
    def test_probability_range(self, p):
        with pytest.raises(ParameterError):
            DampingParams(p)


class TestApplyDamping:
    def test_identity_at_p_zero(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        out = apply_damping(rho, [ModeLabel.B], DampingParams(0.0))
        np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-15)

    def test_full_decay_grounds_the_target(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        out = apply_damping(rho, [ModeLabel.C], DampingParams(1.0))
        reduced = partial_trace(out, {ModeLabel.C})
        np.testing.assert_allclose(reduced.matrix, np.diag([1.0, 0.0]), atol=1e-14)

    def test_matches_block_map_oracle(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        p = 0.42
        for label, pos in [(ModeLabel.A, 0), (ModeLabel.B, 1), (ModeLabel.C, 2)]:
            out = apply_damping(rho, [label], DampingParams(p))
            expected = damp_qubit_oracle(rho.matrix, 3, pos, p)
            np.testing.assert_allclose(out.matrix, expected, atol=1e-14)

    def test_two_targets_compose_single_target_maps(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        p = 0.3
        both = apply_damping(rho, [ModeLabel.A, ModeLabel.C], DampingParams(p))
        expected = damp_qubit_oracle(
            damp_qubit_oracle(rho.matrix, 3, 0, p), 3, 2, p
        )
        np.testing.assert_allclose(both.matrix, expected, atol=1e-14)

    def test_target_order_is_irrelevant(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        a = apply_damping(rho, [ModeLabel.A, ModeLabel.B], DampingParams(0.6))
        b = apply_damping(rho, [ModeLabel.B, ModeLabel.A], DampingParams(0.6))
        np.testing.assert_array_equal(a.matrix, b.matrix)

    def test_target_count_guard(self, rng):
        rho = DensityOperator(ABC, random_density_matrix(rng, 8))
        with pytest.raises(ParameterError):
            apply_damping(rho, [], DampingParams(0.5))
        with pytest.raises(ParameterError):
            apply_damping(
                rho, [ModeLabel.A, ModeLabel.B, ModeLabel.C], DampingParams(0.5)
            )

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), p=st.floats(0.0, 1.0))
    def test_output_is_a_density_matrix(self, seed, p):
        mat = random_density_matrix(np.random.default_rng(seed), 8)
        out = apply_damping(
            DensityOperator(ABC, mat), [ModeLabel.B], DampingParams(p)
        )
        report = validate_density(out)
        assert report.trace_deviation < 1e-13
        assert report.min_eigenvalue >= -1e-12

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), p=st.floats(0.0, 1.0))
    def test_commutes_with_discarding_untouched_modes(self, seed, p):
        """Damping B then tracing out C equals tracing out C then damping B."""
        mat = random_density_matrix(np.random.default_rng(seed), 8)
        rho = DensityOperator(ABC, mat)
        params = DampingParams(p)
        damp_first = partial_trace(
            apply_damping(rho, [ModeLabel.B], params), {ModeLabel.A, ModeLabel.B}
        )
        trace_first = apply_damping(
            partial_trace(rho, {ModeLabel.A, ModeLabel.B}), [ModeLabel.B], params
        )
        np.testing.assert_allclose(damp_first.matrix, trace_first.matrix, atol=1e-13)
