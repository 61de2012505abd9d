"""Angular derivative and primitive operators and chain navigation."""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from innerdisk.core.chain import (
    advance, angular_derivative, angular_primitive, navigate, proper_projection, start_position,
)
from innerdisk.core.data_models import ChainPosition, DiskPoint, QuadConfig, TaylorCoefficients
from innerdisk.core.errors import ChainOffsetError
from innerdisk.core.inner import evaluate, evaluate_many, from_fourier

from conftest import exact_taylor, quadrature_fourier

PI = math.pi
D, I = angular_derivative, angular_primitive


def _proper(parts: np.ndarray) -> TaylorCoefficients:
    c = np.zeros(parts.shape[1] + 1, dtype=complex)
    c[1:] = parts[0] + 1j * parts[1]
    return TaylorCoefficients(c=c)


class TestOperators:
    def test_derivative_examples(self):
        np.testing.assert_array_equal(D(TaylorCoefficients(c=[0, 1])).c, [0, 1j])
        np.testing.assert_array_equal(D(TaylorCoefficients(c=[5, 0, 0])).c, [0, 0, 0])

    def test_derivative_of_log_sine(self):
        tc = D(exact_taylor("log_sine", 32))
        np.testing.assert_allclose(tc.c[1:], 1j, atol=1e-15)
        assert tc.c[0] == 0

    def test_primitive_examples(self):
        np.testing.assert_allclose(I(TaylorCoefficients(c=[0, 1j])).c, [0, 1])
        np.testing.assert_array_equal(I(TaylorCoefficients(c=[7])).c, [0])

    def test_primitive_of_constant_i(self):
        c = np.full(9, 1j)
        c[0] = 0
        tc = I(TaylorCoefficients(c=c))
        np.testing.assert_allclose(tc.c[1:], 1.0 / np.arange(1, 9), atol=1e-16)

    def test_order_preserved_and_proper(self, rng):
        tc = TaylorCoefficients(c=rng.normal(size=17) + 1j * rng.normal(size=17))
        for op in (D, I):
            out = op(tc)
            assert out.N == tc.N
            assert out.is_proper

    def test_provenance_and_bound(self):
        tc = TaylorCoefficients(c=[0, 1], provenance="base", bound_M=1.0)
        out = I(D(tc))
        assert out.provenance == "base | D | I"
        assert out.bound_M is None

    def test_null_function_is_fixed(self):
        zero = TaylorCoefficients(c=np.zeros(9))
        np.testing.assert_array_equal(D(zero).c, 0)
        np.testing.assert_array_equal(I(zero).c, 0)

    def test_derivative_is_injective_on_proper_vectors(self, rng):
        base = rng.normal(size=(2, 32))
        for j in (1, 7, 31):
            bumped = base.copy()
            bumped[0, j] += 1e-6
            gap = np.abs(D(_proper(bumped)).c - D(_proper(base)).c)
            assert gap[j + 1] >= (j + 1) * 1e-6 * (1 - 1e-6)

    @seed(1)
    @settings(max_examples=50, deadline=None)
    @given(arrays(np.float64, (2, 128), elements=st.floats(-1.0, 1.0)))
    def test_round_trips(self, parts):
        tc = _proper(parts)
        np.testing.assert_allclose(D(I(tc)).c, tc.c, rtol=0, atol=1e-12)
        np.testing.assert_allclose(I(D(tc)).c, tc.c, rtol=0, atol=1e-12)


class TestProperProjection:
    def test_drops_constant(self):
        tc = proper_projection(TaylorCoefficients(c=[3 + 2j, 1]))
        np.testing.assert_array_equal(tc.c, [0, 1])

    def test_proper_input_is_returned(self):
        tc = TaylorCoefficients(c=[0, 2, 3])
        assert proper_projection(tc) is tc

    def test_constant_one(self):
        tc = proper_projection(exact_taylor("constant_one", 4))
        np.testing.assert_array_equal(tc.c, 0)


class TestNavigation:
    def test_one_step_right(self):
        pos = start_position(exact_taylor("log_sine", 16))
        np.testing.assert_allclose(navigate(pos, 1).c[1:], 1j, atol=1e-15)

    def test_zero_steps(self):
        pos = start_position(exact_taylor("exp_cos", 16))
        assert navigate(pos, 0) is pos.base

    def test_round_trip(self):
        base = exact_taylor("sawtooth", 64)
        pos = start_position(base)
        back = navigate(advance(pos, -2), 2)
        np.testing.assert_allclose(back.c, base.c, atol=1e-12)

    def test_offset_limit(self):
        pos = start_position(exact_taylor("sawtooth", 8), max_offset=3)
        navigate(pos, 3)
        navigate(pos, -3)
        with pytest.raises(ChainOffsetError):
            navigate(pos, 4)
        with pytest.raises(ChainOffsetError):
            advance(advance(pos, -2), -2)

    def test_advance_tracks_offset(self):
        pos = advance(start_position(exact_taylor("log_sine", 8)), 2)
        assert pos.offset == 2
        np.testing.assert_allclose(pos.base.c[1:], -np.arange(1, 9), atol=1e-13)

    def test_position_requires_proper_base(self):
        with pytest.raises(ValueError):
            ChainPosition(base=TaylorCoefficients(c=[1, 0]))


class TestAgainstCalculus:
    RHO = 0.9
    THETA = PI / 2

    def _u(self, tc, theta):
        return evaluate(tc, DiskPoint(self.RHO, theta)).real

    def test_derivative_is_theta_derivative(self):
        tc = exact_taylor("exp_cos", 40)
        exact = self._u(D(tc), self.THETA)
        errors = []
        for h in (0.02, 0.01):
            fd = (self._u(tc, self.THETA + h) - self._u(tc, self.THETA - h)) / (2 * h)
            errors.append(fd - exact)
        assert errors[0] / errors[1] == pytest.approx(4.0, abs=0.5)

    @pytest.mark.parametrize("theta", [0.5, 1.5, -2.0])
    def test_primitive_is_theta_integral(self, theta):
        from innerdisk.core.quadrature import integrate_scalar

        tc = proper_projection(exact_taylor("exp_cos", 40))
        lo, hi = sorted((0.0, theta))
        result = integrate_scalar(lambda t: evaluate_many(tc, self.RHO, t).real, lo, hi, QuadConfig())
        integral = result.value[0] if theta > 0 else -result.value[0]
        primitive = I(tc)
        expected = self._u(primitive, theta) - self._u(primitive, 0.0)
        assert integral == pytest.approx(expected, abs=1e-6)

    def test_quadrature_derivative_cross_check(self):
        derived = D(from_fourier(quadrature_fourier("exp_cos", 32)))
        direct = from_fourier(quadrature_fourier("exp_cos_derivative", 32))
        np.testing.assert_allclose(derived.c, direct.c, atol=1e-8)
