#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Константы и настройки по умолчанию
"""

import math

# =============================================================================
# ОСНОВНЫЕ КОНСТАНТЫ
# =============================================================================

APP_NAME = "InnerDisk"
APP_VERSION = "1.0.1"
LOGGER_NAME = "InnerDisk"

TWO_PI = 2.0 * math.pi

# =============================================================================
# КВАДРАТУРА
# =============================================================================

QUAD_ABS_TOL = 1e-10
QUAD_REL_TOL = 1e-8
QUAD_MAX_PANELS = 2 ** 16
QUAD_ORDER = 20  # точек Гаусса-Лежандра на панель

# Геометрическое сгущение панелей к логарифмической/существенной особенности
GRADING_RATIO = 0.5
GRADING_LEVELS = 12

# Жёсткий лимит панелей рядом с существенной особенностью (pathological_*)
ESSENTIAL_PANEL_CAP = 2 ** 12

# Гармоники интегрируются блоками по HARMONIC_BLOCK k на одном разбиении;
# стартовая панель покрывает не больше HARMONICS_PER_PANEL периодов старшей гармоники блока
HARMONIC_BLOCK = 64
HARMONICS_PER_PANEL = 2
MIN_START_PANELS = 8

# Узлов на один вызов подынтегральной функции
QUAD_CHUNK_NODES = 2 ** 14

# Порядок N по умолчанию для CLI и верхняя граница автоматического N для квадратуры
DEFAULT_ORDER = 64
AUTO_ORDER_QUADRATURE_CAP = 4096

# Допуск для проверки границ |alpha_k| <= 2M, |c_k| <= 4M
BOUND_TOL = 1e-8

# Точка считается совпадающей с объявленной особенностью
SINGULAR_POINT_ATOL = 1e-12

# =============================================================================
# ВОССТАНОВЛЕНИЕ НА ОКРУЖНОСТИ
# =============================================================================

# rho_j = 1 - 2^-j
DEFAULT_LADDER_EXPONENTS = tuple(range(4, 15))
CONVERGENCE_THRESHOLD = 1e-3

# Запас по усечению: 4M rho^(N+1)/(1-rho) < TRUNCATION_SAFETY * threshold
TRUNCATION_SAFETY = 0.1

# Richardson принимается, если отношение разностей совпадает с моделью до 10%
RICHARDSON_FIT_TOLERANCE = 0.1

# =============================================================================
# ЦЕПОЧКИ И КЛАССИФИКАЦИЯ
# =============================================================================

CHAIN_MAX_OFFSET = 8

CLASSIFY_MAX_STEPS = 6
CLASSIFY_LADDER_EXPONENTS = tuple(range(4, 11))
CLASSIFY_MIN_LADDER = 4

# Постоянная модель выигрывает, если размах |w| на верхней половине лестницы < 5% среднего
CONSTANT_RANGE_FRACTION = 0.05
# Логарифмическая модель выигрывает, если r_log / r_pow < 0.5
LOG_POWER_RATIO = 0.5

# =============================================================================
# ВВОД / ВЫВОД
# =============================================================================

JSON_SIGNIFICANT_DIGITS = 17
CSV_COLUMNS = ("theta", "rho", "u")
