#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Восстановление функции на окружности

f(theta) = lim_{rho -> 1-} Re w(rho e^{i theta}) по лестнице rho_j = 1 - 2^-j.

Незавершённая сходимость не является ошибкой: в жёстких особенностях
предел не существует, и это сообщается полем converged.
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constants import (
    CONVERGENCE_THRESHOLD, LOGGER_NAME, RICHARDSON_FIT_TOLERANCE,
    SINGULAR_POINT_ATOL, TRUNCATION_SAFETY,
)
from .data_models import (
    Extrapolation, FourierCoefficients, GridError, RealFunctionSpec, RecoveryResult,
    RhoLadder, SingularKind, TaylorCoefficients,
)
from .errors import DomainError, EmptyGridError
from .inner import conjugate, evaluate_many, evaluate_radial, series_bound

logger = logging.getLogger(LOGGER_NAME)

PI = math.pi

# Точек на один кусок сетки при параллельном вычислении
GRID_CHUNK = 1024


# =============================================================================
# УСЕЧЕНИЕ
# =============================================================================

def truncation_error(bound: float, N: int, rho: float) -> float:
    """bound * rho^(N+1) / (1 - rho), где bound - оценка |c_k|"""
    return bound * rho ** (N + 1) / (1.0 - rho)


def truncation_ok(bound: float, N: int, rho: float, threshold: float = CONVERGENCE_THRESHOLD) -> bool:
    return truncation_error(bound, N, rho) < TRUNCATION_SAFETY * threshold


def required_order(bound: float, rho: float, threshold: float = CONVERGENCE_THRESHOLD) -> int:
    """Наименьшее N, при котором truncation_ok выполняется в точке rho"""
    if bound <= 0:
        return 1
    target = TRUNCATION_SAFETY * threshold * (1.0 - rho) / bound
    if target >= 1.0:
        return 1
    return max(1, int(math.floor(math.log(target) / math.log(rho))))


# =============================================================================
# RICHARDSON
# =============================================================================

def richardson(rhos: Sequence[float], values: Sequence[float],
               tolerance: float = RICHARDSON_FIT_TOLERANCE) -> Tuple[float, bool]:
    """
    Экстраполяция в rho = 1 по модели u(rho) = L + a (1 - rho).

    Модель проверяется на трёх последних значениях: отношение соседних
    разностей должно совпадать с отношением шагов по h = 1 - rho с точностью
    tolerance. Иначе возвращается последнее значение без ускорения.
    """
    last = float(values[-1])
    if len(values) < 3:
        return last, False

    h = [1.0 - r for r in rhos[-3:]]
    u = [float(v) for v in values[-3:]]
    d_prev, d_last = u[1] - u[0], u[2] - u[1]
    if d_prev == 0.0:
        return last, False

    model = (h[2] - h[1]) / (h[1] - h[0])
    observed = d_last / d_prev
    if abs(observed / model - 1.0) >= tolerance:
        logger.debug("Richardson отклонён: отношение разностей %.4g, модель %.4g", observed, model)
        return last, False

    return (h[1] * u[2] - h[2] * u[1]) / (h[1] - h[2]), True


def _finalize(theta: float, ladder: RhoLadder, values: np.ndarray, bound: float, N: int,
              threshold: float) -> RecoveryResult:
    rhos = ladder.rhos
    estimates = tuple((r, float(v)) for r, v in zip(rhos, values))
    residual = abs(float(values[-1] - values[-2])) if len(values) > 1 else math.inf

    extrapolated, applied = float(values[-1]), False
    if ladder.extrapolation is Extrapolation.RICHARDSON:
        extrapolated, applied = richardson(rhos, values)

    limited = not truncation_ok(bound, N, rhos[-1], threshold)
    if limited:
        logger.warning(
            "theta=%.6g: усечение N=%d недостаточно для rho=%.6g (оценка хвоста %.3e)",
            theta, N, rhos[-1], truncation_error(bound, N, rhos[-1]),
        )

    return RecoveryResult(
        theta=theta,
        estimates=estimates,
        extrapolated=extrapolated,
        converged=residual < threshold,
        residual=residual,
        truncation_limited=limited,
        extrapolation_applied=applied,
    )


# =============================================================================
# ВОССТАНОВЛЕНИЕ
# =============================================================================

def radial_recover(tc: TaylorCoefficients, theta: float, ladder: RhoLadder,
                   threshold: float = CONVERGENCE_THRESHOLD) -> RecoveryResult:
    """u(rho_j, theta) = Re w по всей лестнице и оценка предела rho -> 1"""
    values = evaluate_radial(tc, ladder.rhos, theta).real
    return _finalize(float(theta), ladder, values, series_bound(tc), tc.N, threshold)


def recover_conjugate(tc: TaylorCoefficients, theta: float, ladder: RhoLadder,
                      threshold: float = CONVERGENCE_THRESHOLD) -> RecoveryResult:
    """Предел сопряжённой функции v = Im w"""
    return radial_recover(conjugate(tc), theta, ladder, threshold)


def abel_sum(fc: FourierCoefficients, theta: float, ladder: RhoLadder,
             threshold: float = CONVERGENCE_THRESHOLD) -> RecoveryResult:
    """alpha0/2 + sum (alpha_k cos k theta + beta_k sin k theta) rho^k"""
    if not (-PI <= theta <= PI):
        raise DomainError(f"theta={theta} вне [-pi, pi]")
    k = np.arange(1, fc.N + 1, dtype=float)
    terms = fc.alpha * np.cos(k * theta) + fc.beta * np.sin(k * theta)

    rhos = np.asarray(ladder.rhos, dtype=float)
    acc = np.zeros_like(rhos)
    for a_k in terms[::-1]:
        acc *= rhos
        acc += a_k
    values = 0.5 * fc.alpha0 + rhos * acc
    return _finalize(float(theta), ladder, values, 4.0 * fc.M, fc.N, threshold)


# =============================================================================
# ОШИБКА НА СЕТКЕ
# =============================================================================

def grid_thetas(grid_size: int) -> np.ndarray:
    """Середины grid_size равных дуг окружности"""
    if grid_size < 1:
        raise ValueError("Размер сетки должен быть положительным")
    j = np.arange(grid_size, dtype=float)
    return -PI + (j + 0.5) * (2.0 * PI / grid_size)


def _excluded(thetas: np.ndarray, centers: Sequence[float], radius: float) -> np.ndarray:
    mask = np.zeros(thetas.shape, dtype=bool)
    if radius <= 0:
        return mask
    for s in centers:
        # расстояние по окружности
        d = np.abs(np.remainder(thetas - s + PI, 2.0 * PI) - PI)
        mask |= d < radius
    return mask


def _target_values(spec: RealFunctionSpec, thetas: np.ndarray) -> np.ndarray:
    values = np.asarray(spec.rule(thetas), dtype=float)
    for point in spec.singular_points:
        if point.kind is SingularKind.JUMP:
            values[np.abs(thetas - point.theta) <= SINGULAR_POINT_ATOL] = point.midpoint
    return values


def grid_error(spec: RealFunctionSpec, tc: TaylorCoefficients, rho: float, grid_size: int,
               exclusion_radius: float = 0.0, max_workers: Optional[int] = None) -> GridError:
    """
    L1 (среднее по оставшейся дуге) и Linf ошибки |f - Re w(rho e^{i theta})|
    на равномерной сетке без окрестностей объявленных особых точек.

    Raises:
        EmptyGridError: исключения покрывают всю окружность.
    """
    from ..workers.processing import BatchWorker

    if not (0.0 <= rho < 1.0):
        raise DomainError(f"rho={rho} вне [0, 1)")
    if exclusion_radius < 0:
        raise ValueError("Радиус исключения не может быть отрицательным")

    thetas = grid_thetas(grid_size)
    keep = ~_excluded(thetas, [p.theta for p in spec.singular_points], exclusion_radius)
    thetas = thetas[keep]
    if thetas.size == 0:
        raise EmptyGridError(
            f"{spec.name}: окрестности радиуса {exclusion_radius} покрывают всю окружность"
        )

    chunks: List[np.ndarray] = [thetas[i:i + GRID_CHUNK] for i in range(0, thetas.size, GRID_CHUNK)]
    jobs = [
        (f"grid[{i}]", (lambda t=chunk: np.abs(_target_values(spec, t) - evaluate_many(tc, rho, t).real)))
        for i, chunk in enumerate(chunks)
    ]
    errors = np.concatenate(BatchWorker(jobs, max_workers=max_workers).run())

    logger.debug("grid_error %s: %d точек из %d, rho=%.6g", spec.name, errors.size, grid_size, rho)
    return GridError(L1=float(np.mean(errors)), Linf=float(np.max(errors)), points=int(errors.size))
