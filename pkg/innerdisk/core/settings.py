#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Файл настроек эксперимента

Плоский JSON-объект ключ-значение. Разные написания одного параметра
сводятся к одному полю; неизвестные ключи пропускаются с предупреждением.
Приоритет: константы < файл настроек < флаги командной строки.
"""

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .constants import (
    CHAIN_MAX_OFFSET, CLASSIFY_LADDER_EXPONENTS, CLASSIFY_MAX_STEPS, CONSTANT_RANGE_FRACTION,
    CONVERGENCE_THRESHOLD, DEFAULT_LADDER_EXPONENTS, LOG_POWER_RATIO, LOGGER_NAME,
    QUAD_ABS_TOL, QUAD_MAX_PANELS, QUAD_ORDER, QUAD_REL_TOL,
)
from .data_models import Extrapolation, QuadConfig, RhoLadder
from .errors import SettingsError

logger = logging.getLogger(LOGGER_NAME)


@dataclass(frozen=True)
class Settings:
    abs_tol: float = QUAD_ABS_TOL
    rel_tol: float = QUAD_REL_TOL
    max_panels: int = QUAD_MAX_PANELS
    quad_order: int = QUAD_ORDER
    ladder: Tuple[int, ...] = tuple(DEFAULT_LADDER_EXPONENTS)
    classify_ladder: Tuple[int, ...] = tuple(CLASSIFY_LADDER_EXPONENTS)
    extrapolation: str = Extrapolation.RICHARDSON.value
    threshold: float = CONVERGENCE_THRESHOLD
    max_steps: int = CLASSIFY_MAX_STEPS
    max_offset: int = CHAIN_MAX_OFFSET
    constant_fraction: float = CONSTANT_RANGE_FRACTION
    log_power_ratio: float = LOG_POWER_RATIO
    workers: Optional[int] = None

    @property
    def quad(self) -> QuadConfig:
        return QuadConfig(self.abs_tol, self.rel_tol, self.max_panels, self.quad_order)

    def recovery_ladder(self) -> RhoLadder:
        return RhoLadder.geometric(self.ladder, Extrapolation(self.extrapolation))

    def probe_ladder(self) -> RhoLadder:
        return RhoLadder.geometric(self.classify_ladder, Extrapolation.NONE)

    def with_overrides(self, **overrides) -> "Settings":
        """Флаги командной строки поверх файла; None означает 'не задан'"""
        given = {k: v for k, v in overrides.items() if v is not None}
        return normalize_settings(given, base=self) if given else self


_ALIASES: Dict[str, str] = {
    "abs_tol": "abs_tol", "quad_abs_tol": "abs_tol",
    "rel_tol": "rel_tol", "quad_rel_tol": "rel_tol",
    "max_panels": "max_panels", "quad_max_panels": "max_panels",
    "quad_order": "quad_order", "order": "quad_order", "gauss_order": "quad_order",
    "ladder": "ladder", "ladder_exponents": "ladder",
    "classify_ladder": "classify_ladder", "probe_ladder": "classify_ladder",
    "extrapolation": "extrapolation",
    "threshold": "threshold", "convergence_threshold": "threshold",
    "max_steps": "max_steps", "classify_max_steps": "max_steps",
    "max_offset": "max_offset", "chain_max_offset": "max_offset",
    "constant_fraction": "constant_fraction", "constant_range_fraction": "constant_fraction",
    "log_power_ratio": "log_power_ratio",
    "workers": "workers", "max_workers": "workers",
}


def _positive_float(key: str, value: Any) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise SettingsError(f"'{key}': ожидалось число, получено {value!r}") from None
    if not number > 0:
        raise SettingsError(f"'{key}' должно быть положительным")
    return number


def _positive_int(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise SettingsError(f"'{key}': ожидалось целое число, получено {value!r}")
    try:
        number = int(value)
    except ValueError:
        raise SettingsError(f"'{key}': ожидалось целое число, получено {value!r}") from None
    if number != float(value) or number < 1:
        raise SettingsError(f"'{key}' должно быть целым >= 1")
    return number


def _exponents(key: str, value: Any) -> Tuple[int, ...]:
    if isinstance(value, str):
        # "4..14" или "4,5,6"
        if ".." in value:
            lo, _, hi = value.partition("..")
            value = list(range(_positive_int(key, lo.strip()), _positive_int(key, hi.strip()) + 1))
        else:
            value = [v for v in value.replace(",", " ").split() if v]
    if not isinstance(value, (list, tuple)) or not value:
        raise SettingsError(f"'{key}': ожидался непустой список показателей j (rho = 1 - 2^-j)")
    exponents = tuple(_positive_int(key, v) for v in value)
    if any(b <= a for a, b in zip(exponents, exponents[1:])):
        raise SettingsError(f"'{key}': показатели должны строго возрастать")
    return exponents


def normalize_settings(payload: Dict[str, Any], base: Optional[Settings] = None) -> Settings:
    """Свести словарь с разными именами полей к Settings поверх base"""
    if not isinstance(payload, dict):
        raise SettingsError("Файл настроек должен содержать JSON-объект")
    base = base or Settings()

    values: Dict[str, Any] = {}
    for raw_key, value in payload.items():
        key = _ALIASES.get(str(raw_key).strip().lower())
        if key is None:
            logger.warning("Неизвестный параметр настроек '%s' пропущен", raw_key)
            continue
        if key in ("max_panels", "quad_order", "max_steps", "max_offset", "workers"):
            values[key] = _positive_int(raw_key, value)
        elif key in ("ladder", "classify_ladder"):
            values[key] = _exponents(raw_key, value)
        elif key == "extrapolation":
            try:
                values[key] = Extrapolation(str(value).strip().lower()).value
            except ValueError:
                raise SettingsError(f"'{raw_key}': допустимо none или richardson") from None
        else:
            values[key] = _positive_float(raw_key, value)

    settings = replace(base, **values)
    try:
        settings.quad
        settings.recovery_ladder()
        settings.probe_ladder()
    except ValueError as e:
        raise SettingsError(str(e)) from None
    return settings


def load_settings(path: Optional[Path]) -> Settings:
    """Settings по умолчанию, если путь не задан"""
    if path is None:
        return Settings()
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise SettingsError(f"Не удалось прочитать {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SettingsError(f"{path}: некорректный JSON ({e})") from None
    settings = normalize_settings(payload)
    logger.debug("Настройки из %s: %s", path, settings)
    return settings
