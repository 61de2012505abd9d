#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Внутренние аналитические функции

c_0 = alpha0 / 2,  c_k = alpha_k - i beta_k;  w(z) = sum c_k z^k на |z| < 1.

Вычисление ряда - схема Горнера по комплексной переменной за один проход.
Порядок усечения N никогда не меняется молча.
"""

from __future__ import annotations

import cmath
import logging
import math
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Sequence

import numpy as np

from .constants import BOUND_TOL, LOGGER_NAME
from .data_models import ClosedFormInner, DiskPoint, FourierCoefficients, TaylorCoefficients
from .errors import CatalogError, DomainError

logger = logging.getLogger(LOGGER_NAME)

PI = math.pi


def from_fourier(fc: FourierCoefficients) -> TaylorCoefficients:
    """c_0 = alpha0/2, c_k = alpha_k - i beta_k"""
    c = np.empty(fc.N + 1, dtype=complex)
    c[0] = 0.5 * fc.alpha0
    c[1:] = fc.alpha - 1j * fc.beta
    return TaylorCoefficients(c=c, provenance=f"from_fourier({fc.name})", bound_M=fc.M)


# =============================================================================
# ГОРНЕР
# =============================================================================

def _horner_scalar(c: np.ndarray, z: complex) -> complex:
    acc = 0j
    for ck in c[::-1].tolist():
        acc = acc * z + ck
    return acc


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z, dtype=complex)
    for ck in c[::-1]:
        acc *= z
        acc += ck
    return acc


def evaluate(tc: TaylorCoefficients, p: DiskPoint) -> complex:
    """sum_{k<=N} c_k z^k в z = rho e^{i theta}; DiskPoint гарантирует rho < 1"""
    if not isinstance(p, DiskPoint):
        raise DomainError("Ожидалась точка DiskPoint")
    return _horner_scalar(tc.c, p.z)


def _check_rho(rho: float):
    if not (0.0 <= rho < 1.0):
        raise DomainError(f"rho={rho} вне [0, 1)")


def evaluate_many(tc: TaylorCoefficients, rho: float, thetas) -> np.ndarray:
    """Значения на окружности радиуса rho для массива theta"""
    _check_rho(rho)
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size and (thetas.min() < -PI or thetas.max() > PI):
        raise DomainError("theta вне [-pi, pi]")
    return _horner(tc.c, rho * np.exp(1j * thetas))


def evaluate_radial(tc: TaylorCoefficients, rhos: Sequence[float], theta: float) -> np.ndarray:
    """Значения вдоль луча theta для набора rho"""
    rhos = np.asarray(rhos, dtype=float)
    for rho in rhos:
        _check_rho(float(rho))
    if not (-PI <= theta <= PI):
        raise DomainError(f"theta={theta} вне [-pi, pi]")
    return _horner(tc.c, rhos * complex(math.cos(theta), math.sin(theta)))


def conjugate(tc: TaylorCoefficients) -> TaylorCoefficients:
    """w -> -i w: вещественная часть результата есть мнимая часть исходной"""
    provenance = f"{tc.provenance} | conjugate" if tc.provenance else "conjugate"
    return TaylorCoefficients(c=-1j * tc.c, provenance=provenance, bound_M=tc.bound_M)


def linear_combination(a: complex, tc1: TaylorCoefficients,
                       b: complex, tc2: TaylorCoefficients) -> TaylorCoefficients:
    if tc1.N != tc2.N:
        raise ValueError(f"Разные порядки усечения: {tc1.N} и {tc2.N}")
    return TaylorCoefficients(c=a * tc1.c + b * tc2.c,
                              provenance=f"({a})*[{tc1.provenance}] + ({b})*[{tc2.provenance}]")


# =============================================================================
# ОЦЕНКИ
# =============================================================================

def series_bound(tc: TaylorCoefficients) -> float:
    """Оценка сверху для |c_k|: 4M, если M известен, иначе max |c_k| усечённого вектора"""
    if tc.bound_M is not None:
        return 4.0 * tc.bound_M
    return float(np.max(np.abs(tc.c)))


def majorant_sum(tc: TaylorCoefficients, rho: float) -> float:
    """sum |c_k| rho^k"""
    _check_rho(rho)
    return float(_horner(np.abs(tc.c), np.array([rho], dtype=complex))[0].real)


def tail_bound(M: float, N: int, rho: float) -> float:
    """Оценка хвоста sum_{k>N} |c_k| rho^k <= 4M rho^(N+1)/(1-rho)"""
    _check_rho(rho)
    return 4.0 * M * rho ** (N + 1) / (1.0 - rho)


def verify_taylor_bounds(tc: TaylorCoefficients, M: float,
                         rhos: Iterable[float] = (0.5, 0.9, 0.99)) -> Dict[str, object]:
    """
    Проверка |c_k| <= 4M и sum |c_k| rho^k <= 4M (1 - rho^(N+1)) / (1 - rho).

    Возвращает превышения (отрицательные - запас) и общий флаг нарушения.
    """
    coefficient_excess = float(np.max(np.abs(tc.c))) - 4.0 * M
    majorant_excess = {}
    for rho in rhos:
        partial = 4.0 * M * (1.0 - rho ** (tc.N + 1)) / (1.0 - rho)
        majorant_excess[float(rho)] = majorant_sum(tc, rho) - partial
    violated = coefficient_excess > BOUND_TOL or any(v > BOUND_TOL for v in majorant_excess.values())
    return {
        "coefficient_excess": coefficient_excess,
        "majorant_excess": majorant_excess,
        "imag_c0": float(tc.c[0].imag),
        "violated": violated,
    }


def coefficients_on_circle(w: Callable[[np.ndarray], np.ndarray], rho: float, K: int,
                           samples: int = 256) -> np.ndarray:
    """
    c_0..c_K по значениям w на окружности |z| = rho (дискретная проекция Фурье).

    Ошибка наложения порядка |c_{k+samples}| rho^samples.
    """
    _check_rho(rho)
    if samples <= K:
        raise ValueError("Число отсчётов должно превышать K")
    theta = 2.0 * PI * np.arange(samples) / samples
    values = np.asarray(w(rho * np.exp(1j * theta)), dtype=complex)
    projection = np.fft.fft(values) / samples
    k = np.arange(K + 1)
    return projection[:K + 1] / rho ** k


def sample_on_circle(tc: TaylorCoefficients) -> Callable[[np.ndarray], np.ndarray]:
    """w(z) усечённого ряда как функция массива z"""
    return lambda z: _horner(tc.c, np.asarray(z, dtype=complex))


# =============================================================================
# ЗАМКНУТЫЕ ФОРМЫ
# =============================================================================

def _vectorize(rule: Callable[[complex], complex]) -> Callable:
    def wrapped(z):
        if np.ndim(z) == 0:
            return complex(rule(complex(z)))
        return np.array([rule(complex(v)) for v in np.ravel(z)], dtype=complex).reshape(np.shape(z))
    return wrapped


def _square_wave_w(z: complex) -> complex:
    # ln((1+z)/(1-z)) = ln(1+z) - ln(1-z): главные ветви, Re(1 +- z) > 0 в круге
    return -(2j / PI) * (cmath.log(1 + z) - cmath.log(1 - z))


_CLOSED_FORMS: Mapping[str, ClosedFormInner] = MappingProxyType({
    cf.name: cf for cf in (
        ClosedFormInner("one", _vectorize(lambda z: 1.0 + 0j), (), "w = 1"),
        ClosedFormInner("zero", _vectorize(lambda z: 0j), (), "w = 0"),
        ClosedFormInner("sawtooth_w", _vectorize(lambda z: -2j * cmath.log(1 + z)), (-PI, PI),
                        "w = -2i ln(1+z)"),
        ClosedFormInner("square_wave_w", _vectorize(_square_wave_w), (-PI, 0.0, PI),
                        "w = -(2i/pi) ln((1+z)/(1-z))"),
        ClosedFormInner("neg_log_one_minus_z", _vectorize(lambda z: -cmath.log(1 - z)), (0.0,),
                        "w = -ln(1-z)"),
        ClosedFormInner("neg_log_one_minus_z_derivative", _vectorize(lambda z: 1j * z / (1 - z)), (0.0,),
                        "w = iz/(1-z)"),
        ClosedFormInner("geometric", _vectorize(lambda z: 1.0 / (1 - z)), (0.0,),
                        "w = 1/(1-z)"),
        ClosedFormInner("exp_z", _vectorize(cmath.exp), (), "w = e^z"),
        ClosedFormInner("exp_z_derivative", _vectorize(lambda z: 1j * z * cmath.exp(z)), (),
                        "w = iz e^z"),
    )
})


def get_closed_form(name: str) -> ClosedFormInner:
    try:
        return _CLOSED_FORMS[name]
    except KeyError:
        raise CatalogError(name, _CLOSED_FORMS.keys()) from None


def closed_form_names():
    return sorted(_CLOSED_FORMS)


def closed_form_eval(cf: ClosedFormInner, p: DiskPoint) -> complex:
    """Точное значение w(z) на главной ветви логарифма"""
    return complex(cf.rule(p.z))


def is_regular_at(cf: ClosedFormInner, theta: float, atol: float = 1e-9) -> bool:
    """True, если замкнутая форма не объявляет особенности в точке theta окружности"""
    for s in cf.singular_thetas:
        d = abs(math.remainder(theta - s, 2.0 * PI))
        if d <= atol:
            return False
    return True
