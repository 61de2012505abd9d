#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - Интегро-дифференциальные цепочки

Угловая производная   c_0 -> 0, c_k -> i k c_k
Угловая первообразная c_0 -> 0, c_k -> -i c_k / k

Оба оператора точны на усечённом векторе и сохраняют N; результат всегда
собственный (c_0 = 0).
"""

import logging

import numpy as np

from .constants import CHAIN_MAX_OFFSET, LOGGER_NAME
from .data_models import ChainPosition, TaylorCoefficients
from .errors import ChainOffsetError

logger = logging.getLogger(LOGGER_NAME)


def angular_derivative(tc: TaylorCoefficients) -> TaylorCoefficients:
    """w -> i z dw/dz"""
    k = np.arange(tc.N + 1, dtype=float)
    c = 1j * (k * tc.c)
    c[0] = 0
    return tc.with_coefficients(c, "D")


def angular_primitive(tc: TaylorCoefficients) -> TaylorCoefficients:
    """Обратная к angular_derivative на собственных функциях; константа выбрана так, что c_0 = 0"""
    c = np.zeros(tc.N + 1, dtype=complex)
    if tc.N >= 1:
        k = np.arange(1, tc.N + 1, dtype=float)
        c[1:] = -1j * (tc.c[1:] / k)
    return tc.with_coefficients(c, "I")


def proper_projection(tc: TaylorCoefficients) -> TaylorCoefficients:
    if tc.is_proper:
        return tc
    c = np.array(tc.c)
    c[0] = 0
    return tc.with_coefficients(c, "proper")


def start_position(tc: TaylorCoefficients, max_offset: int = CHAIN_MAX_OFFSET) -> ChainPosition:
    """Звено с нулевым смещением для собственного представителя tc"""
    return ChainPosition(base=proper_projection(tc), offset=0, max_offset=max_offset)


def navigate(pos: ChainPosition, steps: int) -> TaylorCoefficients:
    """
    Сдвиг по цепочке на steps звеньев: вправо - производные, влево - первообразные.

    Raises:
        ChainOffsetError: |pos.offset + steps| больше pos.max_offset.
    """
    target = pos.offset + steps
    if abs(target) > pos.max_offset:
        raise ChainOffsetError(
            f"Смещение {pos.offset} + ({steps}) = {target} превышает допустимое {pos.max_offset}"
        )

    operator = angular_derivative if steps > 0 else angular_primitive
    tc = pos.base
    for _ in range(abs(steps)):
        tc = operator(tc)
    logger.debug("navigate: смещение %d -> %d", pos.offset, target)
    return tc


def advance(pos: ChainPosition, steps: int) -> ChainPosition:
    """Новая позиция после navigate; база - пройденное звено"""
    return ChainPosition(base=navigate(pos, steps), offset=pos.offset + steps, max_offset=pos.max_offset)
