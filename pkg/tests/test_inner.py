"""Inner functions: Taylor assembly, Horner evaluation, bounds and closed forms."""

import cmath
import math

import numpy as np
import pytest

from innerdisk.core.catalog import catalog_get, catalog_names
from innerdisk.core.data_models import DiskPoint, TaylorCoefficients
from innerdisk.core.errors import CatalogError, DomainError
from innerdisk.core.inner import (
    closed_form_eval, closed_form_names, coefficients_on_circle, conjugate, evaluate,
    evaluate_many, evaluate_radial, from_fourier, get_closed_form, is_regular_at,
    linear_combination, majorant_sum, sample_on_circle, series_bound, tail_bound,
    verify_taylor_bounds,
)

from conftest import exact_fourier, exact_taylor, quadrature_fourier, quadrature_taylor

PI = math.pi
WITH_CLOSED_FORM = [name for name in catalog_names() if catalog_get(name).known_closed_form]


def _random_vector(rng, N):
    return TaylorCoefficients(c=rng.uniform(-1, 1, N + 1) + 1j * rng.uniform(-1, 1, N + 1))


class TestFromFourier:
    def test_constant_one(self):
        tc = from_fourier(exact_fourier("constant_one", 4))
        np.testing.assert_array_equal(tc.c, [1, 0, 0, 0, 0])
        assert tc.bound_M == pytest.approx(1.0)

    def test_sawtooth(self):
        tc = exact_taylor("sawtooth", 6)
        k = np.arange(1, 7)
        expected = -2j * np.where(k % 2 == 1, 1.0, -1.0) / k
        np.testing.assert_allclose(tc.c[1:], expected, atol=1e-15)
        assert tc.c[0] == 0

    def test_log_sine(self):
        tc = exact_taylor("log_sine", 6)
        np.testing.assert_allclose(tc.c[1:], 1.0 / np.arange(1, 7), atol=1e-15)

    def test_c0_is_real(self):
        tc = quadrature_taylor("exp_cos", 16)
        assert tc.c[0].imag == 0.0
        assert tc.c[0].real == pytest.approx(1.0, abs=1e-10)

    def test_coefficients_read_only(self):
        tc = exact_taylor("log_sine", 4)
        with pytest.raises(ValueError):
            tc.c[1] = 0


class TestEvaluate:
    def test_null_function(self):
        assert evaluate(TaylorCoefficients(c=[0]), DiskPoint(0.7, 2.0)) == 0

    def test_identity_coefficient(self):
        assert evaluate(TaylorCoefficients(c=[0, 1]), DiskPoint(0.5, 0.0)) == pytest.approx(0.5)

    def test_sawtooth_against_closed_form(self):
        tc = exact_taylor("sawtooth", 200)
        point = DiskPoint(0.9, 1.0)
        expected = -2j * cmath.log(1 + point.z)
        assert abs(evaluate(tc, point) - expected) <= 1e-8

    @pytest.mark.parametrize("rho, theta", [(1.0, 0.0), (-0.1, 0.0), (0.5, 3.2), (0.5, -4.0)])
    def test_disk_point_domain(self, rho, theta):
        with pytest.raises(DomainError):
            DiskPoint(rho, theta)

    def test_requires_disk_point(self):
        with pytest.raises(DomainError):
            evaluate(TaylorCoefficients(c=[1]), (0.5, 0.0))

    def test_many_and_radial_agree_with_scalar(self, rng):
        tc = _random_vector(rng, 32)
        thetas = rng.uniform(-PI, PI, 8)
        many = evaluate_many(tc, 0.6, thetas)
        for theta, value in zip(thetas, many):
            assert value == pytest.approx(evaluate(tc, DiskPoint(0.6, theta)), abs=1e-13)
        rhos = [0.1, 0.4, 0.8]
        radial = evaluate_radial(tc, rhos, 1.3)
        for rho, value in zip(rhos, radial):
            assert value == pytest.approx(evaluate(tc, DiskPoint(rho, 1.3)), abs=1e-13)

    def test_many_rejects_boundary(self):
        with pytest.raises(DomainError):
            evaluate_many(TaylorCoefficients(c=[1]), 1.0, [0.0])
        with pytest.raises(DomainError):
            evaluate_radial(TaylorCoefficients(c=[1]), [0.5, 1.0], 0.0)

    @pytest.mark.parametrize("name", ["sawtooth", "square_wave", "log_sine", "exp_cos"])
    def test_quadrature_series_matches_closed_form(self, name, rng):
        tc = quadrature_taylor(name, 200)
        cf = get_closed_form(catalog_get(name).known_closed_form)
        for _ in range(100):
            point = DiskPoint(rng.uniform(0.0, 0.9), rng.uniform(-PI, PI))
            assert abs(evaluate(tc, point) - closed_form_eval(cf, point)) <= 1e-7

    def test_linearity(self, rng):
        tc1, tc2 = _random_vector(rng, 64), _random_vector(rng, 64)
        a, b = 0.3 - 1.2j, 2.5
        combined = linear_combination(a, tc1, b, tc2)
        for _ in range(20):
            point = DiskPoint(rng.uniform(0, 0.9), rng.uniform(-PI, PI))
            expected = a * evaluate(tc1, point) + b * evaluate(tc2, point)
            assert abs(evaluate(combined, point) - expected) <= 1e-12

    def test_linear_combination_requires_same_order(self):
        with pytest.raises(ValueError):
            linear_combination(1, TaylorCoefficients(c=[0, 1]), 1, TaylorCoefficients(c=[0, 1, 2]))


class TestHarmonicity:
    @staticmethod
    def _cauchy_riemann_residual(tc, rho, theta, h):
        def w(r, t):
            return evaluate(tc, DiskPoint(r, t))

        du_drho = (w(rho + h, theta).real - w(rho - h, theta).real) / (2 * h)
        dv_dtheta = (w(rho, theta + h).imag - w(rho, theta - h).imag) / (2 * h)
        dv_drho = (w(rho + h, theta).imag - w(rho - h, theta).imag) / (2 * h)
        du_dtheta = (w(rho, theta + h).real - w(rho, theta - h).real) / (2 * h)
        return du_drho - dv_dtheta / rho, dv_drho + du_dtheta / rho

    @pytest.mark.parametrize("rho", [0.5, 0.7])
    def test_second_order_convergence(self, rho):
        tc = exact_taylor("exp_cos", 40)
        first, _ = self._cauchy_riemann_residual(tc, rho, 0.0, 0.02)
        second, _ = self._cauchy_riemann_residual(tc, rho, 0.0, 0.01)
        assert abs(first) > 0
        assert first / second == pytest.approx(4.0, abs=0.5)

    def test_residuals_are_small(self, rng):
        tc = exact_taylor("exp_cos", 40)
        h = 1e-3
        for _ in range(10):
            rho, theta = rng.uniform(0.2, 0.8), rng.uniform(-3.0, 3.0)
            r1, r2 = self._cauchy_riemann_residual(tc, rho, theta, h)
            assert abs(r1) <= 10 * h * h
            assert abs(r2) <= 10 * h * h

    @pytest.mark.parametrize("name", closed_form_names())
    def test_closed_forms_satisfy_cauchy_riemann(self, rng, name):
        cf = get_closed_form(name)
        h = 1e-4
        for _ in range(20):
            rho, theta = rng.uniform(0.2, 0.8), rng.uniform(-3.0, 3.0)

            def w(r, t):
                return closed_form_eval(cf, DiskPoint(r, t))

            du_drho = (w(rho + h, theta).real - w(rho - h, theta).real) / (2 * h)
            dv_drho = (w(rho + h, theta).imag - w(rho - h, theta).imag) / (2 * h)
            du_dtheta = (w(rho, theta + h).real - w(rho, theta - h).real) / (2 * h)
            dv_dtheta = (w(rho, theta + h).imag - w(rho, theta - h).imag) / (2 * h)
            scale = 1.0 + abs(du_drho) + abs(dv_drho)
            assert abs(du_drho - dv_dtheta / rho) <= 1e-5 * scale
            assert abs(dv_drho + du_dtheta / rho) <= 1e-5 * scale


class TestBounds:
    @pytest.mark.parametrize("name", catalog_names())
    def test_coefficient_and_majorant_bounds(self, name):
        fc = quadrature_fourier(name, 256)
        report = verify_taylor_bounds(from_fourier(fc), fc.M)
        assert not report["violated"]
        assert report["imag_c0"] == 0.0
        assert report["coefficient_excess"] <= 1e-8

    def test_violation_detected(self):
        report = verify_taylor_bounds(TaylorCoefficients(c=[0, 5]), 1.0)
        assert report["violated"]
        assert report["coefficient_excess"] == pytest.approx(1.0)

    def test_tail_bound(self):
        assert tail_bound(1.0, 10, 0.5) == pytest.approx(4.0 * 0.5 ** 11 / 0.5)

    def test_majorant_sum(self):
        assert majorant_sum(TaylorCoefficients(c=[1, -1j]), 0.5) == pytest.approx(1.5)

    def test_series_bound_prefers_mean(self):
        assert series_bound(TaylorCoefficients(c=[0, 3], bound_M=2.0)) == 8.0
        assert series_bound(TaylorCoefficients(c=[0, 3j])) == 3.0


class TestCircleProjection:
    def test_coefficients_do_not_depend_on_radius(self):
        tc = exact_taylor("log_sine", 512)
        inner = coefficients_on_circle(sample_on_circle(tc), 0.5, 16)
        outer = coefficients_on_circle(sample_on_circle(tc), 0.8, 16)
        np.testing.assert_allclose(inner, tc.c[:17], atol=1e-8)
        np.testing.assert_allclose(outer, tc.c[:17], atol=1e-8)

    def test_needs_enough_samples(self):
        with pytest.raises(ValueError):
            coefficients_on_circle(lambda z: z, 0.5, 16, samples=16)


class TestConjugate:
    def test_example(self):
        tc = conjugate(TaylorCoefficients(c=[1, 1j], bound_M=0.5, provenance="x"))
        np.testing.assert_allclose(tc.c, [-1j, 1])
        assert tc.bound_M == 0.5
        assert tc.provenance == "x | conjugate"

    def test_real_part_is_imaginary_part(self, rng):
        tc = _random_vector(rng, 16)
        point = DiskPoint(0.6, -0.4)
        assert evaluate(conjugate(tc), point).real == pytest.approx(evaluate(tc, point).imag, abs=1e-14)


class TestClosedForms:
    @pytest.mark.parametrize("name", WITH_CLOSED_FORM)
    def test_catalog_series_match_closed_form(self, name, rng):
        tc = exact_taylor(name, 400)
        cf = get_closed_form(catalog_get(name).known_closed_form)
        for _ in range(25):
            point = DiskPoint(rng.uniform(0.0, 0.8), rng.uniform(-PI, PI))
            assert abs(evaluate(tc, point) - closed_form_eval(cf, point)) <= 1e-12

    def test_values(self):
        assert closed_form_eval(get_closed_form("exp_z"), DiskPoint(0.5, 0.0)) == pytest.approx(math.exp(0.5))
        assert closed_form_eval(get_closed_form("neg_log_one_minus_z"), DiskPoint(0.0, 0.0)) == 0
        point = DiskPoint(0.999, 1.0)
        u = closed_form_eval(get_closed_form("sawtooth_w"), point).real
        expected = 2.0 * math.atan2(0.999 * math.sin(1.0), 1.0 + 0.999 * math.cos(1.0))
        assert u == pytest.approx(expected, abs=1e-12)
        assert u == pytest.approx(1.0, abs=1e-3)

    def test_vectorized_rule(self):
        cf = get_closed_form("geometric")
        z = np.array([0.0, 0.5, -0.5j])
        np.testing.assert_allclose(cf.rule(z), 1.0 / (1.0 - z))

    @pytest.mark.parametrize("name, theta, regular", [
        ("sawtooth_w", PI, False),
        ("sawtooth_w", -PI, False),
        ("sawtooth_w", 3.0, True),
        ("neg_log_one_minus_z", 0.0, False),
        ("neg_log_one_minus_z", 1e-12, False),
        ("neg_log_one_minus_z", 0.1, True),
        ("exp_z", 0.0, True),
    ])
    def test_is_regular_at(self, name, theta, regular):
        assert is_regular_at(get_closed_form(name), theta) is regular

    def test_unknown(self):
        with pytest.raises(CatalogError):
            get_closed_form("nope")
        assert "exp_z" in closed_form_names()
