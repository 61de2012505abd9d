#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Классификация граничных точек

Радиальный зонд |w(rho e^{i theta1})| сравнивает три модели роста по
x = ln(1/(1 - rho)):

    константа        размах на верхней половине лестницы < 5% среднего
    убывание         показатель степени p <= 0 (предел |w| равен нулю)
    логарифм         |w| ~ a + b x
    степень          ln|w| ~ a + p x

Мягкая точка (предел конечен) ищет степень мягкости повторным угловым
дифференцированием, жёсткая - степень жёсткости повторным интегрированием.
Регулярность численно не проверяется: вердикт regular выдаётся только по
замкнутой форме без особенности в theta1.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .boundary import truncation_error, truncation_ok
from .chain import angular_derivative, angular_primitive
from .constants import (
    CLASSIFY_LADDER_EXPONENTS, CLASSIFY_MAX_STEPS, CLASSIFY_MIN_LADDER,
    CONSTANT_RANGE_FRACTION, CONVERGENCE_THRESHOLD, LOG_POWER_RATIO, LOGGER_NAME,
)
from .data_models import (
    ClosedFormInner, Extrapolation, ProbeResult, RhoLadder, SingularityReport,
    TaylorCoefficients, Verdict,
)
from .errors import TruncationLimitedError
from .inner import evaluate_radial, is_regular_at, series_bound

logger = logging.getLogger(LOGGER_NAME)


def default_ladder() -> RhoLadder:
    return RhoLadder.geometric(CLASSIFY_LADDER_EXPONENTS, Extrapolation.NONE)


def _linear_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, np.ndarray]:
    """y ~ a + b x методом наименьших квадратов; возвращает (a, b, остатки)"""
    design = np.column_stack((np.ones_like(x), x))
    (a, b), *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(a), float(b), y - (a + b * x)


def _rms(values: np.ndarray) -> float:
    return float(np.sqrt(np.mean(values ** 2)))


def probe_point(tc: TaylorCoefficients, theta1: float, ladder: Optional[RhoLadder] = None,
                threshold: float = CONVERGENCE_THRESHOLD,
                constant_fraction: float = CONSTANT_RANGE_FRACTION,
                log_power_ratio: float = LOG_POWER_RATIO) -> ProbeResult:
    """
    Подобрать модель роста |w| вдоль радиуса к точке theta1.

    Остатки обеих моделей роста относительные: для логарифма (|w| - fit)/|w|,
    для степени ln|w| - fit, так что их отношение безразмерно.

    Raises:
        TruncationLimitedError: усечение не проходит проверку на наибольшем rho.
    """
    ladder = ladder or default_ladder()
    if len(ladder) < CLASSIFY_MIN_LADDER:
        raise ValueError(f"Для зонда нужна лестница длины >= {CLASSIFY_MIN_LADDER}")

    rho_max = ladder.rhos[-1]
    bound = series_bound(tc)
    if not truncation_ok(bound, tc.N, rho_max, threshold):
        raise TruncationLimitedError(
            f"N={tc.N} недостаточно для зонда при rho={rho_max:.6g}: "
            f"оценка хвоста {truncation_error(bound, tc.N, rho_max):.3e}"
        )

    rhos = np.asarray(ladder.rhos, dtype=float)
    magnitudes = np.abs(evaluate_radial(tc, rhos, theta1))
    x = np.log(1.0 / (1.0 - rhos))

    top = magnitudes[len(magnitudes) // 2:]
    spread = float(np.max(top) - np.min(top))
    if spread <= constant_fraction * float(np.mean(top)):
        return ProbeResult(
            bounded=True, growth_exponent=0.0, log_flag=False, model="constant",
            log_slope=0.0, residual_log=0.0, residual_power=0.0,
            magnitudes=tuple(float(m) for m in magnitudes),
        )

    safe = np.maximum(magnitudes, np.finfo(float).tiny)
    _, slope, res_log = _linear_fit(x, magnitudes)
    _, power, res_pow = _linear_fit(x, np.log(safe))
    r_log = _rms(res_log / safe)
    r_pow = _rms(res_pow)

    if power <= 0.0:
        # |w| убывает к нулевому пределу: точка ограничена
        logger.debug("probe theta1=%.6g: убывание, p=%.4f", theta1, power)
        return ProbeResult(
            bounded=True, growth_exponent=power, log_flag=False, model="decay",
            log_slope=slope, residual_log=r_log, residual_power=r_pow,
            magnitudes=tuple(float(m) for m in magnitudes),
        )

    if r_pow > 0:
        ratio = r_log / r_pow
    else:
        ratio = 0.0 if r_log == 0 else math.inf
    log_wins = ratio < log_power_ratio

    logger.debug(
        "probe theta1=%.6g: r_log=%.3e, r_pow=%.3e, b=%.4f, p=%.4f -> %s",
        theta1, r_log, r_pow, slope, power, "log" if log_wins else "power",
    )
    return ProbeResult(
        bounded=False,
        growth_exponent=0.0 if log_wins else power,
        log_flag=log_wins,
        model="log" if log_wins else "power",
        log_slope=slope,
        residual_log=r_log,
        residual_power=r_pow,
        magnitudes=tuple(float(m) for m in magnitudes),
    )


def _diagnostic(step: str, probe: ProbeResult) -> Dict[str, Any]:
    data = {"step": step}
    data.update(probe.to_dict())
    return data


def classify_point(tc: TaylorCoefficients, theta1: float, ladder: Optional[RhoLadder] = None,
                   max_steps: int = CLASSIFY_MAX_STEPS,
                   closed_form: Optional[ClosedFormInner] = None,
                   threshold: float = CONVERGENCE_THRESHOLD,
                   constant_fraction: float = CONSTANT_RANGE_FRACTION,
                   log_power_ratio: float = LOG_POWER_RATIO) -> SingularityReport:
    """
    Вердикт для точки theta1 и степень мягкости/жёсткости.

    Ограниченный зонд: до max_steps угловых производных, пока зонд не станет
    неограниченным (их число - n_s). Неограниченный: до max_steps угловых
    первообразных, пока зонд не станет ограниченным; одной достаточно -
    borderline_hard (n_h = 0), иначе hard с n_h = число первообразных - 1.
    """
    if max_steps < 1:
        raise ValueError("max_steps должно быть >= 1")
    ladder = ladder or default_ladder()

    def probe(current: TaylorCoefficients) -> ProbeResult:
        return probe_point(current, theta1, ladder, threshold, constant_fraction, log_power_ratio)

    base = probe(tc)
    diagnostics: List[Dict[str, Any]] = [_diagnostic("base", base)]
    degree: Optional[int] = None
    note: Optional[str] = None

    if base.bounded:
        if closed_form is not None and is_regular_at(closed_form, theta1):
            verdict = Verdict.REGULAR
            note = f"замкнутая форма {closed_form.name} аналитична в theta1"
        else:
            verdict = Verdict.SOFT
            current = tc
            for n in range(1, max_steps + 1):
                current = angular_derivative(current)
                step = probe(current)
                diagnostics.append(_diagnostic(f"D{n}", step))
                if not step.bounded:
                    degree = n
                    break
            else:
                note = f"степень мягкости >= {max_steps}: возможна бесконечно мягкая точка"
        return SingularityReport(theta1, verdict, 0.0, False, degree, diagnostics, note)

    verdict = Verdict.HARD
    current = tc
    for n in range(1, max_steps + 1):
        current = angular_primitive(current)
        step = probe(current)
        diagnostics.append(_diagnostic(f"I{n}", step))
        if step.bounded:
            if n == 1:
                verdict, degree = Verdict.BORDERLINE_HARD, 0
            else:
                degree = n - 1
            break
    else:
        note = f"степень жёсткости >= {max_steps}: возможна бесконечно жёсткая точка"

    logger.info("theta1=%.6g: %s (степень %s)", theta1, verdict.value, degree)
    return SingularityReport(theta1, verdict, base.growth_exponent, base.log_flag, degree, diagnostics, note)


def classify_points(tc: TaylorCoefficients, thetas: Sequence[float], ladder: Optional[RhoLadder] = None,
                    max_steps: int = CLASSIFY_MAX_STEPS,
                    closed_form: Optional[ClosedFormInner] = None,
                    max_workers: Optional[int] = None, **thresholds) -> List[SingularityReport]:
    """Независимые зонды в нескольких точках; порядок отчётов = порядок thetas"""
    from ..workers.processing import BatchWorker

    jobs = [
        (f"theta1={t:.6g}",
         (lambda t=float(t): classify_point(tc, t, ladder, max_steps, closed_form, **thresholds)))
        for t in thetas
    ]
    return BatchWorker(jobs, max_workers=max_workers).run()
