#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Коэффициенты Фурье вещественной функции

  alpha0  = (1/pi) int f
  alpha_k = (1/pi) int f cos(k theta)
  beta_k  = (1/pi) int f sin(k theta)
  M       = (1/2pi) int |f|

Гармоники идут блоками; внутри блока все интегралы, включая |f|, считаются
одной векторной квадратурой на общем разбиении. Результат не зависит от
порядка вычислений, а оценки |alpha_k|, |beta_k| <= 2M выполняются для
квадратурных сумм автоматически (веса Гаусса положительны, узлы блока общие).
"""

from __future__ import annotations

import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np

from .constants import (
    BOUND_TOL, ESSENTIAL_PANEL_CAP, HARMONIC_BLOCK, HARMONICS_PER_PANEL, LOGGER_NAME, MIN_START_PANELS,
)
from .data_models import (
    BoundReport, FourierCoefficients, QuadConfig, RealFunctionSpec, SingularKind,
    TaylorCoefficients,
)
from .errors import InnerDiskError, QuadratureError
from .quadrature import integrate

logger = logging.getLogger(LOGGER_NAME)

PI = math.pi


def _initial_breakpoints(spec: RealFunctionSpec, k_max: int) -> List[float]:
    """Равномерное стартовое разбиение под гармонику k_max плюс все объявленные особые точки"""
    panels = max(MIN_START_PANELS, -(-k_max // HARMONICS_PER_PANEL))
    uniform = list(np.linspace(-PI, PI, panels + 1))
    return sorted(set(uniform) | {p.theta for p in spec.singular_points})


def _graded(spec: RealFunctionSpec) -> List[float]:
    return [p.theta for p in spec.singular_points
            if p.kind in (SingularKind.LOG_DIVERGENCE, SingularKind.ESSENTIAL)]


def _integrate_block(spec: RealFunctionSpec, k: np.ndarray, quad: QuadConfig, best_effort: bool):
    """Столбцы: f, f cos(k theta), f sin(k theta), |f| для k одного блока"""
    def integrand(theta):
        f = spec.rule(theta)
        phase = np.outer(theta, k)
        return np.column_stack((f, f[:, None] * np.cos(phase), f[:, None] * np.sin(phase), np.abs(f)))

    return integrate(
        integrand, _initial_breakpoints(spec, int(k[-1])), quad,
        graded=_graded(spec),
        panel_cap=ESSENTIAL_PANEL_CAP if best_effort else None,
    )


def compute_coefficients(spec: RealFunctionSpec, N: int,
                         quad: QuadConfig = QuadConfig()) -> FourierCoefficients:
    """
    Коэффициенты Фурье до порядка N.

    Гармоники считаются блоками по HARMONIC_BLOCK; разбиение каждого блока
    фиксировано и начинается во всех особых точках и точках скачка, так что
    память не растёт с N квадратично. Каждый блок интегрирует и |f|, а M берётся
    максимальным по блокам: оценка |alpha_k|, |beta_k| <= 2M сохраняется.
    Для функций с существенной особенностью бюджет панелей жёстко ограничен,
    и достигнутая точность возвращается в achieved_error вместо ошибки.

    Raises:
        QuadratureError: бюджет исчерпан до достижения допуска (с худшим k)
            или не хватило памяти.
    """
    if N < 1:
        raise ValueError("Порядок N должен быть >= 1")

    best_effort = spec.has_essential
    alpha = np.empty(N)
    beta = np.empty(N)
    alpha0 = 0.0
    M = 0.0
    achieved = 0.0
    panels = 0
    worst_k: Optional[int] = None
    worst_error = -1.0
    converged = True

    for start in range(1, N + 1, HARMONIC_BLOCK):
        k = np.arange(start, min(start + HARMONIC_BLOCK, N + 1), dtype=float)
        size = k.size
        try:
            result = _integrate_block(spec, k, quad, best_effort)
        except MemoryError:
            raise QuadratureError(
                f"{spec.name}: не хватило памяти на гармоники k={start}..{start + size - 1}",
                worst_k=start,
            ) from None

        values = result.value
        if start == 1:
            alpha0 = values[0] / PI
        alpha[start - 1:start - 1 + size] = values[1:size + 1] / PI
        beta[start - 1:start - 1 + size] = values[size + 1:2 * size + 1] / PI
        M = max(M, values[2 * size + 1] / (2.0 * PI))
        panels = max(panels, result.panels)

        block_error = float(np.max(result.error[:-1])) / PI
        achieved = max(achieved, block_error)
        if not result.converged:
            converged = False
            if block_error > worst_error:
                worst_error = block_error
                w = result.worst_component
                if w == 2 * size + 1:
                    worst_k = None
                elif w == 0:
                    worst_k = 0
                else:
                    worst_k = int(k[(w - 1) % size])
            if not best_effort:
                raise QuadratureError(
                    f"{spec.name}: бюджет {quad.max_panels} панелей исчерпан, "
                    f"достигнутая точность {achieved:.3e} (худшее k={worst_k})",
                    worst_k=worst_k, achieved=achieved,
                )

    if not converged:
        logger.warning(
            "%s: квадратура ограничена %d панелями, достигнутая точность %.3e (худшее k=%s)",
            spec.name, panels, achieved, worst_k,
        )

    logger.debug("%s: N=%d, панелей (макс. по блокам) %d, ошибка %.3e", spec.name, N, panels, achieved)
    return FourierCoefficients(
        alpha0=alpha0,
        alpha=alpha,
        beta=beta,
        M=M,
        name=spec.name,
        achieved_error=achieved,
        best_effort=best_effort and not converged,
    )


def mean_absolute(spec: RealFunctionSpec, quad: QuadConfig = QuadConfig()) -> float:
    """M = (1/2pi) int |f| по всей окружности"""
    result = integrate(
        lambda theta: np.abs(spec.rule(theta)),
        _initial_breakpoints(spec, 1), quad,
        graded=_graded(spec),
        panel_cap=ESSENTIAL_PANEL_CAP if spec.has_essential else None,
    )
    return float(result.value[0]) / (2.0 * PI)


def exact_coefficients(spec: RealFunctionSpec, N: int,
                       quad: QuadConfig = QuadConfig()) -> FourierCoefficients:
    """Коэффициенты из известного ряда каталога; M всё равно считается квадратурой"""
    if spec.known_series is None:
        raise InnerDiskError(f"{spec.name}: ряд Фурье в замкнутой форме неизвестен")
    if N < 1:
        raise ValueError("Порядок N должен быть >= 1")
    k = np.arange(1, N + 1, dtype=float)
    alpha, beta = spec.known_series.terms(k)
    return FourierCoefficients(
        alpha0=spec.known_series.alpha0,
        alpha=alpha,
        beta=beta,
        M=mean_absolute(spec, quad),
        name=spec.name,
    )


def verify_bounds(fc: FourierCoefficients) -> BoundReport:
    """Отношения max|alpha|/2M (включая alpha0) и max|beta|/2M"""
    two_m = 2.0 * fc.M
    alpha_max = max(abs(fc.alpha0), float(np.max(np.abs(fc.alpha))))
    beta_max = float(np.max(np.abs(fc.beta)))

    def ratio(value):
        if two_m > 0:
            return value / two_m
        return 0.0 if value == 0 else math.inf

    alpha_ratio, beta_ratio = ratio(alpha_max), ratio(beta_max)
    violated = max(alpha_ratio, beta_ratio) > 1.0 + BOUND_TOL
    if violated:
        logger.warning("%s: нарушена оценка 2M (alpha %.6f, beta %.6f)", fc.name, alpha_ratio, beta_ratio)
    return BoundReport(alpha_ratio=alpha_ratio, beta_ratio=beta_ratio, violated=violated)


def _consistent_m(alpha0: float, alpha: np.ndarray, beta: np.ndarray) -> float:
    # наименьшее M, совместимое с |alpha_k|, |beta_k| <= 2M
    return 0.5 * max(abs(alpha0), float(np.max(np.abs(alpha))), float(np.max(np.abs(beta))))


def differentiate_fourier(fc: FourierCoefficients) -> FourierCoefficients:
    """f -> f': alpha_k -> k beta_k, beta_k -> -k alpha_k, alpha0 -> 0"""
    k = np.arange(1, fc.N + 1, dtype=float)
    alpha, beta = k * fc.beta, -k * fc.alpha
    return FourierCoefficients(0.0, alpha, beta, _consistent_m(0.0, alpha, beta), name=f"d/dtheta {fc.name}")


def integrate_fourier(fc: FourierCoefficients) -> FourierCoefficients:
    """f -> int f с нулевым средним: alpha_k -> -beta_k/k, beta_k -> alpha_k/k"""
    k = np.arange(1, fc.N + 1, dtype=float)
    alpha, beta = -fc.beta / k, fc.alpha / k
    return FourierCoefficients(0.0, alpha, beta, _consistent_m(0.0, alpha, beta), name=f"int {fc.name}")


def conjugate_fourier(fc: FourierCoefficients) -> FourierCoefficients:
    """Сопряжённая функция v: alpha_k -> -beta_k, beta_k -> alpha_k"""
    alpha, beta = -fc.beta, fc.alpha.copy()
    return FourierCoefficients(0.0, alpha, beta, _consistent_m(0.0, alpha, beta), name=f"conj {fc.name}")


def to_fourier(tc: TaylorCoefficients, name: str = "") -> FourierCoefficients:
    """
    Обратно к (alpha, beta): alpha0 = 2 Re c0, alpha_k = Re c_k, beta_k = -Im c_k.

    Мнимая часть c0 (константа сопряжённой функции) отбрасывается. Если M
    не известен, берётся наименьшее значение, совместимое с |c_k| <= 4M.
    """
    if tc.N < 1:
        raise ValueError("Нужен хотя бы один коэффициент c_k с k >= 1")
    c = tc.c
    if tc.bound_M is not None:
        M = tc.bound_M
    else:
        M = float(np.max(np.abs(c))) / 4.0
    return FourierCoefficients(
        alpha0=2.0 * c[0].real,
        alpha=c[1:].real,
        beta=-c[1:].imag,
        M=M,
        name=name or tc.provenance,
    )


def compute_many(specs: Sequence[RealFunctionSpec], N: int, quad: QuadConfig = QuadConfig(),
                 max_workers: Optional[int] = None,
                 progress_callback: Optional[Callable[[int, int, str], None]] = None,
                 ) -> List[FourierCoefficients]:
    """Коэффициенты для нескольких функций параллельно; порядок результатов = порядок specs"""
    from ..workers.processing import BatchWorker

    jobs = [(spec.name, (lambda s=spec: compute_coefficients(s, N, quad))) for spec in specs]
    worker = BatchWorker(jobs, max_workers=max_workers, progress_callback=progress_callback)
    return worker.run()
