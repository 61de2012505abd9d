#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Каталог вещественных функций на [-pi, pi]

Встроенные функции с известной аналитической структурой: служат входными
данными и эталонами для тестов. Реестр неизменяем после импорта.

Скачки хранят оба односторонних предела явно; в самой точке скачка
eval_real возвращает их среднее арифметическое.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, List, Mapping, Tuple

import numpy as np

from .constants import LOGGER_NAME, SINGULAR_POINT_ATOL
from .data_models import (
    KnownSeries, Parity, PiecewisePolynomial, QuadConfig, RealFunctionSpec,
    SingularKind, SingularPoint,
)
from .errors import CatalogError, DomainError, SingularPointError
from .quadrature import integrate

logger = logging.getLogger(LOGGER_NAME)

PI = math.pi


# =============================================================================
# ПРАВИЛА f(theta)
# =============================================================================

def _constant_one(theta):
    return np.ones_like(np.asarray(theta, dtype=float))


def _constant_zero(theta):
    return np.zeros_like(np.asarray(theta, dtype=float))


def _sawtooth(theta):
    return np.asarray(theta, dtype=float).copy()


def _square_wave(theta):
    return np.sign(np.asarray(theta, dtype=float))


def _abs_theta(theta):
    return np.abs(np.asarray(theta, dtype=float))


def _log_sine(theta):
    t = np.asarray(theta, dtype=float)
    return -np.log(2.0 * np.abs(np.sin(0.5 * t)))


def _exp_cos(theta):
    t = np.asarray(theta, dtype=float)
    return np.exp(np.cos(t)) * np.cos(np.sin(t))


def _exp_cos_derivative(theta):
    # d/dtheta [e^cos cos(sin)] = -e^cos * sin(theta + sin theta)
    t = np.asarray(theta, dtype=float)
    return -np.exp(np.cos(t)) * np.sin(t + np.sin(t))


def _pathological_1(theta):
    t = np.asarray(theta, dtype=float)
    return t * np.sin(PI ** 2 / t)


def _pathological_2(theta):
    t = np.asarray(theta, dtype=float)
    return np.sin(PI ** 2 / t)


# =============================================================================
# ИЗВЕСТНЫЕ РЯДЫ ФУРЬЕ
# =============================================================================

def _inverse_factorials(k: np.ndarray) -> np.ndarray:
    """1/k! для k = 1..K подряд; хвост уходит в ноль без переполнения"""
    return np.cumprod(1.0 / k)


def _zero_terms(k):
    return np.zeros(k.shape), np.zeros(k.shape)


def _sawtooth_terms(k):
    sign = np.where(k % 2 == 1, 1.0, -1.0)
    return np.zeros(k.shape), 2.0 * sign / k


def _square_wave_terms(k):
    odd = (k % 2 == 1)
    return np.zeros(k.shape), np.where(odd, 4.0 / (PI * k), 0.0)


def _abs_theta_terms(k):
    odd = (k % 2 == 1)
    return np.where(odd, -4.0 / (PI * k * k), 0.0), np.zeros(k.shape)


def _log_sine_terms(k):
    return 1.0 / k, np.zeros(k.shape)


def _exp_cos_terms(k):
    return _inverse_factorials(k), np.zeros(k.shape)


def _exp_cos_derivative_terms(k):
    # c_k = i k / k!  =>  alpha_k = 0, beta_k = -1/(k-1)!
    return np.zeros(k.shape), -k * _inverse_factorials(k)


# =============================================================================
# РЕЕСТР
# =============================================================================

def _jump(theta: float, left: float, right: float) -> SingularPoint:
    return SingularPoint(theta, SingularKind.JUMP, left_limit=left, right_limit=right)


def _build_registry() -> Dict[str, RealFunctionSpec]:
    specs = [
        RealFunctionSpec(
            name="constant_one", rule=_constant_one, parity=Parity.EVEN,
            known_closed_form="one", known_series=KnownSeries(2.0, _zero_terms),
            description="f = 1",
        ),
        RealFunctionSpec(
            name="constant_zero", rule=_constant_zero, parity=Parity.EVEN,
            known_closed_form="zero", known_series=KnownSeries(0.0, _zero_terms),
            description="f = 0",
        ),
        RealFunctionSpec(
            name="sawtooth", rule=_sawtooth, parity=Parity.ODD,
            singular_points=(_jump(-PI, PI, -PI), _jump(PI, PI, -PI)),
            known_closed_form="sawtooth_w", known_series=KnownSeries(0.0, _sawtooth_terms),
            description="f = theta",
        ),
        RealFunctionSpec(
            name="square_wave", rule=_square_wave, parity=Parity.ODD,
            singular_points=(_jump(-PI, 1.0, -1.0), _jump(0.0, -1.0, 1.0), _jump(PI, 1.0, -1.0)),
            known_closed_form="square_wave_w", known_series=KnownSeries(0.0, _square_wave_terms),
            description="f = sign(theta)",
        ),
        RealFunctionSpec(
            name="abs_theta", rule=_abs_theta, parity=Parity.EVEN,
            singular_points=(
                SingularPoint(-PI, SingularKind.NONE),
                SingularPoint(0.0, SingularKind.NONE),
                SingularPoint(PI, SingularKind.NONE),
            ),
            known_series=KnownSeries(PI, _abs_theta_terms),
            description="f = |theta|",
        ),
        RealFunctionSpec(
            name="log_sine", rule=_log_sine, parity=Parity.EVEN,
            singular_points=(SingularPoint(0.0, SingularKind.LOG_DIVERGENCE),),
            known_closed_form="neg_log_one_minus_z", known_series=KnownSeries(0.0, _log_sine_terms),
            description="f = -ln(2|sin(theta/2)|)",
        ),
        RealFunctionSpec(
            name="exp_cos", rule=_exp_cos, parity=Parity.EVEN,
            known_closed_form="exp_z", known_series=KnownSeries(2.0, _exp_cos_terms),
            description="f = e^cos(theta) cos(sin(theta))",
        ),
        RealFunctionSpec(
            name="exp_cos_derivative", rule=_exp_cos_derivative, parity=Parity.ODD,
            known_closed_form="exp_z_derivative",
            known_series=KnownSeries(0.0, _exp_cos_derivative_terms),
            description="f = -e^cos(theta) sin(theta + sin(theta))",
        ),
        RealFunctionSpec(
            name="pathological_1", rule=_pathological_1, parity=Parity.EVEN,
            singular_points=(SingularPoint(0.0, SingularKind.ESSENTIAL),),
            classifier_exempt=True,
            description="f = theta sin(pi^2/theta)",
        ),
        RealFunctionSpec(
            name="pathological_2", rule=_pathological_2, parity=Parity.ODD,
            singular_points=(SingularPoint(0.0, SingularKind.ESSENTIAL),),
            classifier_exempt=True,
            description="f = sin(pi^2/theta)",
        ),
    ]
    return {spec.name: spec for spec in specs}


_REGISTRY: Mapping[str, RealFunctionSpec] = MappingProxyType(_build_registry())


def catalog_get(name: str) -> RealFunctionSpec:
    """Вернуть неизменяемое описание функции по имени"""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise CatalogError(name, _REGISTRY.keys()) from None


def catalog_list() -> List[RealFunctionSpec]:
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


def catalog_names() -> List[str]:
    return sorted(_REGISTRY)


def cosine_mode(m: int) -> RealFunctionSpec:
    """f = cos(m theta): alpha_m = 1, остальные коэффициенты нулевые"""
    if m < 0:
        raise ValueError("m должно быть неотрицательным")

    def rule(theta):
        return np.cos(m * np.asarray(theta, dtype=float))

    def terms(k):
        return np.where(k == m, 1.0, 0.0), np.zeros(k.shape)

    return RealFunctionSpec(
        name=f"cos_{m}", rule=rule, parity=Parity.EVEN,
        known_series=KnownSeries(2.0 if m == 0 else 0.0, terms),
        description=f"f = cos({m} theta)",
    )


# =============================================================================
# ВЫЧИСЛЕНИЕ
# =============================================================================

def eval_real(spec: RealFunctionSpec, theta: float) -> float:
    """f(theta); в точке скачка - среднее односторонних пределов"""
    theta = float(theta)
    if not (-PI <= theta <= PI):
        raise DomainError(f"theta={theta} вне [-pi, pi]")
    point = spec.point_at(theta, SINGULAR_POINT_ATOL)
    if point is not None:
        if point.kind is SingularKind.JUMP:
            return float(point.midpoint)
        if point.kind in (SingularKind.LOG_DIVERGENCE, SingularKind.ESSENTIAL):
            raise SingularPointError(
                f"{spec.name}: функция не определена в особой точке theta={point.theta} ({point.kind.value})"
            )
    return float(spec.rule(np.array([theta]))[0])


def parity_defect(spec: RealFunctionSpec, samples: int = 64, seed: int = 0) -> float:
    """Максимальное нарушение объявленной чётности на случайных theta"""
    if spec.parity is Parity.NONE:
        return 0.0
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-PI, PI, size=4 * samples)
    for point in spec.singular_points:
        theta = theta[np.abs(np.abs(theta) - abs(point.theta)) > 1e-9]
    theta = theta[:samples]
    forward = spec.rule(theta)
    backward = spec.rule(-theta)
    if spec.parity is Parity.EVEN:
        return float(np.max(np.abs(backward - forward)))
    return float(np.max(np.abs(backward + forward)))


@dataclass(frozen=True)
class IntegrabilityReport:
    """Интеграл |f| вне окрестностей особенностей и его устойчивость"""
    integral: float
    relative_change: float
    one_sided: Tuple[Tuple[float, float, float], ...]  # (theta, слева, справа)
    converged: bool


def _segments_outside(spec: RealFunctionSpec, exclusion: float) -> List[Tuple[float, float]]:
    holes = sorted(
        (p.theta - exclusion, p.theta + exclusion)
        for p in spec.singular_points
        if p.kind in (SingularKind.LOG_DIVERGENCE, SingularKind.ESSENTIAL)
    )
    segments = []
    cursor = -PI
    for lo, hi in holes:
        if lo > cursor:
            segments.append((cursor, min(lo, PI)))
        cursor = max(cursor, hi)
    if cursor < PI:
        segments.append((cursor, PI))
    return segments


def verify_integrability(spec: RealFunctionSpec, exclusion: float = 1e-3,
                         config: QuadConfig = QuadConfig()) -> IntegrabilityReport:
    """
    Интеграл |f| по [-pi, pi] без окрестностей особых точек при двух порядках
    правила Гаусса; для логарифмических особенностей дополнительно считаются
    односторонние несобственные интегралы |f| по окрестности.
    """
    def absolute(theta):
        return np.abs(spec.rule(theta))

    breakpoints = spec.breakpoints
    values = []
    converged = True
    for order in (config.order, 2 * config.order):
        cfg = QuadConfig(config.abs_tol, config.rel_tol, config.max_panels, order)
        total = 0.0
        for a, b in _segments_outside(spec, exclusion):
            result = integrate(absolute, [a, b] + [p for p in breakpoints if a < p < b], cfg)
            converged = converged and result.converged
            total += float(result.value[0])
        values.append(total)
    change = abs(values[1] - values[0]) / max(abs(values[1]), 1e-300)

    one_sided = []
    for point in spec.singular_points:
        if point.kind is not SingularKind.LOG_DIVERGENCE:
            continue
        s = point.theta
        left = integrate(absolute, [max(-PI, s - exclusion), s], config, graded=[s]) if s > -PI else None
        right = integrate(absolute, [s, min(PI, s + exclusion)], config, graded=[s]) if s < PI else None
        for side in (left, right):
            if side is not None:
                converged = converged and side.converged
        one_sided.append((
            s,
            float(left.value[0]) if left is not None else 0.0,
            float(right.value[0]) if right is not None else 0.0,
        ))

    if not converged:
        logger.warning("%s: квадратура |f| не сошлась, отчёт о интегрируемости приближённый", spec.name)
    return IntegrabilityReport(values[1], change, tuple(one_sided), converged)


# =============================================================================
# КУСОЧНО-ПОЛИНОМИАЛЬНЫЕ ФУНКЦИИ
# =============================================================================

def piecewise_spec(pw: PiecewisePolynomial) -> RealFunctionSpec:
    """
    Построить RealFunctionSpec по кусочно-полиномиальному описанию.

    Границы кусков становятся точками разбиения квадратуры: скачками, если
    односторонние пределы различаются, иначе обычными изломами. Концы отрезка
    склеиваются на окружности.
    """
    edges_x = np.array([lo for lo, _, _ in pw.pieces] + [pw.pieces[-1][1]])
    polys = [np.asarray(coeffs, dtype=float) for _, _, coeffs in pw.pieces]

    def rule(theta):
        x = pw.to_x(theta)
        idx = np.clip(np.searchsorted(edges_x, x, side="right") - 1, 0, len(polys) - 1)
        out = np.empty_like(x, dtype=float)
        for i, coeffs in enumerate(polys):
            mask = idx == i
            if np.any(mask):
                out[mask] = np.polynomial.polynomial.polyval(x[mask], coeffs)
        return out

    points: Dict[float, SingularPoint] = {}
    for i in range(1, len(polys)):
        x = float(edges_x[i])
        left = float(np.polynomial.polynomial.polyval(x, polys[i - 1]))
        right = float(np.polynomial.polynomial.polyval(x, polys[i]))
        theta = float(pw.to_theta(x))
        points[theta] = _jump(theta, left, right) if left != right else SingularPoint(theta, SingularKind.NONE)

    start = float(np.polynomial.polynomial.polyval(edges_x[0], polys[0]))
    end = float(np.polynomial.polynomial.polyval(edges_x[-1], polys[-1]))
    if start != end:
        points[-PI] = _jump(-PI, end, start)
        points[PI] = _jump(PI, end, start)

    for x, kind in pw.singular_points:
        theta = float(pw.to_theta(x))
        if theta not in points:
            points[theta] = SingularPoint(theta, kind) if kind is not SingularKind.JUMP \
                else SingularPoint(theta, SingularKind.NONE)

    return RealFunctionSpec(
        name=pw.name,
        rule=rule,
        singular_points=tuple(points[t] for t in sorted(points)),
        parity=Parity.NONE,
        description=f"piecewise polynomial on [{pw.domain[0]}, {pw.domain[1]}]",
    )
