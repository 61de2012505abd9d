#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Модели данных

Все типы неизменяемы после создания: массивы коэффициентов переводятся
в режим только для чтения, поэтому их можно свободно делить между потоками.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .constants import (
    QUAD_ABS_TOL, QUAD_REL_TOL, QUAD_MAX_PANELS, QUAD_ORDER,
    DEFAULT_LADDER_EXPONENTS, CHAIN_MAX_OFFSET,
)
from .errors import DomainError, ChainOffsetError, PiecewiseFileError


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


class Parity(Enum):
    """Чётность функции на [-pi, pi]"""
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


class SingularKind(Enum):
    """Характер особой точки в вещественном смысле"""
    JUMP = "jump"
    LOG_DIVERGENCE = "log-divergence"
    ESSENTIAL = "essential"
    NONE = "none"


class Extrapolation(Enum):
    NONE = "none"
    RICHARDSON = "richardson"


class Verdict(Enum):
    """Вердикт классификатора граничной точки"""
    REGULAR = "regular"
    SOFT = "soft"
    BORDERLINE_HARD = "borderline_hard"
    HARD = "hard"


# =============================================================================
# КАТАЛОГ
# =============================================================================

@dataclass(frozen=True)
class SingularPoint:
    """Особая точка: для скачка хранятся оба односторонних предела"""
    theta: float
    kind: SingularKind
    left_limit: Optional[float] = None
    right_limit: Optional[float] = None

    def __post_init__(self):
        if self.kind is SingularKind.JUMP:
            if self.left_limit is None or self.right_limit is None:
                raise ValueError(f"Скачок в {self.theta} требует оба односторонних предела")
            if self.left_limit == self.right_limit:
                raise ValueError(f"Устранимая особенность в {self.theta} не допускается")

    @property
    def midpoint(self) -> Optional[float]:
        if self.left_limit is None or self.right_limit is None:
            return None
        return 0.5 * (self.left_limit + self.right_limit)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"theta": self.theta, "kind": self.kind.value}
        if self.kind is SingularKind.JUMP:
            data["left_limit"] = self.left_limit
            data["right_limit"] = self.right_limit
        return data


@dataclass(frozen=True)
class KnownSeries:
    """Ряд Фурье в замкнутой форме: alpha0 и правило k -> (alpha_k, beta_k)"""
    alpha0: float
    terms: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class RealFunctionSpec:
    """Вещественная функция f(theta) на [-pi, pi] и её особые точки"""
    name: str
    rule: Callable[[np.ndarray], np.ndarray]
    singular_points: Tuple[SingularPoint, ...] = ()
    parity: Parity = Parity.NONE
    known_closed_form: Optional[str] = None
    known_series: Optional[KnownSeries] = None
    classifier_exempt: bool = False
    description: str = ""

    @property
    def breakpoints(self) -> List[float]:
        """Все объявленные особые точки внутри и на концах отрезка, по возрастанию"""
        return sorted({p.theta for p in self.singular_points})

    def point_at(self, theta: float, atol: float) -> Optional[SingularPoint]:
        for point in self.singular_points:
            if abs(point.theta - theta) <= atol:
                return point
        return None

    @property
    def has_essential(self) -> bool:
        return any(p.kind is SingularKind.ESSENTIAL for p in self.singular_points)

    def summary(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "singular_points": [p.to_dict() for p in self.singular_points],
            "parity": self.parity.value,
        }


@dataclass(frozen=True)
class PiecewisePolynomial:
    """
    Пользовательская кусочно-полиномиальная функция.

    Интервалы заданы в переменной x на отрезке domain = (a, b); полиномы
    хранятся по возрастанию степеней x. На окружность отрезок отображается
    линейной заменой x = a + (theta + pi) (b - a) / (2 pi).
    """
    name: str
    pieces: Tuple[Tuple[float, float, Tuple[float, ...]], ...]
    singular_points: Tuple[Tuple[float, SingularKind], ...] = ()
    domain: Tuple[float, float] = (-math.pi, math.pi)

    def __post_init__(self):
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
            raise PiecewiseFileError(f"Некорректный отрезок {self.domain}")
        if not self.pieces:
            raise PiecewiseFileError("Нет ни одного интервала")
        span = b - a
        tol = 1e-12 * max(1.0, span)
        cursor = a
        for lo, hi, coeffs in self.pieces:
            if abs(lo - cursor) > tol:
                raise PiecewiseFileError(
                    f"Интервалы должны покрывать отрезок без зазоров и наложений: ожидалось начало {cursor}, получено {lo}"
                )
            if hi <= lo:
                raise PiecewiseFileError(f"Пустой интервал [{lo}, {hi}]")
            if not coeffs:
                raise PiecewiseFileError(f"Интервал [{lo}, {hi}] без коэффициентов")
            cursor = hi
        if abs(cursor - b) > tol:
            raise PiecewiseFileError(f"Интервалы заканчиваются в {cursor}, а отрезок в {b}")
        for x, _kind in self.singular_points:
            if not (a - tol <= x <= b + tol):
                raise PiecewiseFileError(f"Особая точка {x} вне отрезка {self.domain}")

    def to_theta(self, x):
        a, b = self.domain
        return -math.pi + (np.asarray(x, dtype=float) - a) * (2.0 * math.pi) / (b - a)

    def to_x(self, theta):
        a, b = self.domain
        return a + (np.asarray(theta, dtype=float) + math.pi) * (b - a) / (2.0 * math.pi)


# =============================================================================
# КОЭФФИЦИЕНТЫ
# =============================================================================

@dataclass(frozen=True)
class QuadConfig:
    """Бюджет и допуски панельной квадратуры"""
    abs_tol: float = QUAD_ABS_TOL
    rel_tol: float = QUAD_REL_TOL
    max_panels: int = QUAD_MAX_PANELS
    order: int = QUAD_ORDER

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol < 0:
            raise ValueError("Допуски квадратуры должны быть положительными")
        if self.max_panels < 1 or self.order < 2:
            raise ValueError("Бюджет панелей и порядок правила должны быть положительными")


@dataclass(frozen=True)
class FourierCoefficients:
    """(alpha0, alpha_1..N, beta_1..N) и среднее M = (1/2pi) * integral |f|"""
    alpha0: float
    alpha: np.ndarray
    beta: np.ndarray
    M: float
    name: str = ""
    achieved_error: float = 0.0
    best_effort: bool = False

    def __post_init__(self):
        alpha = _frozen_array(self.alpha, float)
        beta = _frozen_array(self.beta, float)
        if alpha.ndim != 1 or alpha.shape != beta.shape:
            raise ValueError("alpha и beta должны быть векторами одной длины")
        if alpha.size < 1:
            raise ValueError("Порядок усечения N должен быть >= 1")
        if self.M < 0:
            raise ValueError("M не может быть отрицательным")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "alpha0", float(self.alpha0))
        object.__setattr__(self, "M", float(self.M))

    @property
    def N(self) -> int:
        return int(self.alpha.size)


@dataclass(frozen=True)
class BoundReport:
    """Отношения max|alpha_k|/2M и max|beta_k|/2M"""
    alpha_ratio: float
    beta_ratio: float
    violated: bool

    @property
    def max_ratio(self) -> float:
        return max(self.alpha_ratio, self.beta_ratio)


@dataclass(frozen=True)
class TaylorCoefficients:
    """Усечённая внутренняя аналитическая функция: c_0..c_N"""
    c: np.ndarray
    provenance: str = ""
    bound_M: Optional[float] = None

    def __post_init__(self):
        c = _frozen_array(self.c, complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("Вектор коэффициентов должен быть непустым")
        object.__setattr__(self, "c", c)

    @property
    def N(self) -> int:
        return int(self.c.size - 1)

    @property
    def is_proper(self) -> bool:
        return self.c[0] == 0

    def with_coefficients(self, c, step: str) -> "TaylorCoefficients":
        """Новый вектор той же длины; к происхождению дописывается шаг"""
        provenance = f"{self.provenance} | {step}" if self.provenance else step
        return TaylorCoefficients(c=c, provenance=provenance)


@dataclass(frozen=True)
class DiskPoint:
    """z = rho * exp(i theta) строго внутри круга"""
    rho: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.rho < 1.0):
            raise DomainError(f"rho={self.rho} вне [0, 1)")
        if not (-math.pi <= self.theta <= math.pi):
            raise DomainError(f"theta={self.theta} вне [-pi, pi]")

    @property
    def z(self) -> complex:
        return complex(self.rho * math.cos(self.theta), self.rho * math.sin(self.theta))


@dataclass(frozen=True)
class ClosedFormInner:
    """Точная формула w(z); singular_thetas - точки окружности, где w особая"""
    name: str
    rule: Callable[[Any], Any]
    singular_thetas: Tuple[float, ...] = ()
    description: str = ""


@dataclass(frozen=True)
class ChainPosition:
    """Звено цепочки: собственная база и смещение (плюс - дифференцирование)"""
    base: TaylorCoefficients
    offset: int = 0
    max_offset: int = CHAIN_MAX_OFFSET

    def __post_init__(self):
        if self.base.c[0] != 0:
            raise ValueError("База цепочки должна быть собственной (c_0 = 0)")
        if abs(self.offset) > self.max_offset:
            raise ChainOffsetError(
                f"Смещение {self.offset} превышает допустимое {self.max_offset}"
            )


# =============================================================================
# ГРАНИЦА И КЛАССИФИКАЦИЯ
# =============================================================================

@dataclass(frozen=True)
class RhoLadder:
    """Возрастающая последовательность rho в (0, 1)"""
    rhos: Tuple[float, ...]
    extrapolation: Extrapolation = Extrapolation.NONE

    def __post_init__(self):
        rhos = tuple(float(r) for r in self.rhos)
        if not rhos:
            raise ValueError("Пустая лестница rho")
        if any(not (0.0 < r < 1.0) for r in rhos):
            raise ValueError("Все rho должны лежать в (0, 1)")
        if any(b <= a for a, b in zip(rhos, rhos[1:])):
            raise ValueError("Лестница rho должна строго возрастать")
        if self.extrapolation is Extrapolation.RICHARDSON and len(rhos) < 2:
            raise ValueError("Richardson требует хотя бы двух ступеней")
        object.__setattr__(self, "rhos", rhos)

    @classmethod
    def geometric(cls, exponents=DEFAULT_LADDER_EXPONENTS,
                  extrapolation: Extrapolation = Extrapolation.RICHARDSON) -> "RhoLadder":
        """rho_j = 1 - 2^-j"""
        return cls(tuple(1.0 - 2.0 ** (-int(j)) for j in exponents), extrapolation)

    def __len__(self) -> int:
        return len(self.rhos)


@dataclass(frozen=True)
class RecoveryResult:
    theta: float
    estimates: Tuple[Tuple[float, float], ...]
    extrapolated: float
    converged: bool
    residual: float
    truncation_limited: bool = False
    extrapolation_applied: bool = False

    def summary(self) -> Dict[str, Any]:
        return {
            "theta": self.theta,
            "extrapolated": self.extrapolated,
            "converged": self.converged,
            "residual": self.residual,
            "truncation_limited": self.truncation_limited,
        }


@dataclass(frozen=True)
class GridError:
    L1: float
    Linf: float
    points: int


@dataclass(frozen=True)
class ProbeResult:
    """Результат радиального зонда |w(rho e^{i theta1})|"""
    bounded: bool
    growth_exponent: float
    log_flag: bool
    model: str
    log_slope: float
    residual_log: float
    residual_power: float
    magnitudes: Tuple[float, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bounded": self.bounded,
            "growth_exponent": self.growth_exponent,
            "log_flag": self.log_flag,
            "model": self.model,
            "log_slope": self.log_slope,
            "residual_log": self.residual_log,
            "residual_power": self.residual_power,
            "magnitudes": list(self.magnitudes),
        }


@dataclass(frozen=True)
class SingularityReport:
    theta1: float
    verdict: Verdict
    growth_exponent: float
    log_flag: bool
    degree: Optional[int] = None
    diagnostics: List[Dict[str, Any]] = field(default_factory=list)
    note: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta1": self.theta1,
            "verdict": self.verdict.value,
            "growth_exponent": self.growth_exponent,
            "log_flag": self.log_flag,
            "degree": self.degree,
            "note": self.note,
            "diagnostics": self.diagnostics,
        }
