#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Coefficient I/O helpers.
JSON с 17 значащими цифрами (двоичное значение восстанавливается точно),
CSV для лестниц восстановления, кусочно-полиномиальные файлы функций.
"""

import csv
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .constants import CSV_COLUMNS, JSON_SIGNIFICANT_DIGITS
from .data_models import (
    FourierCoefficients, PiecewisePolynomial, RecoveryResult, SingularKind, TaylorCoefficients,
)
from .errors import CoefficientFileError, PiecewiseFileError


# =============================================================================
# JSON
# =============================================================================

def format_float(value: float) -> str:
    """17 значащих цифр; всегда с точкой или экспонентой, чтобы -0.0 читался как float"""
    value = float(value)
    if not math.isfinite(value):
        return "null"
    text = f"{value:.{JSON_SIGNIFICANT_DIGITS}g}"
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _encode(obj: Any, indent: int, level: int) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, Enum):
        return _encode(obj.value, indent, level)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()

    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"Тип {type(obj).__name__} не сериализуется в JSON")


def dumps(obj: Any, indent: int = 2) -> str:
    """Детерминированный JSON: порядок ключей сохраняется, числа с 17 цифрами"""
    return _encode(obj, indent, 0)


# =============================================================================
# КОЭФФИЦИЕНТЫ
# =============================================================================

def coefficients_payload(data: Union[FourierCoefficients, TaylorCoefficients], name: str = "") -> Dict[str, Any]:
    """
    Общий формат файла: {name, N, M, alpha0, alpha, beta, c_re, c_im, provenance}.
    Для TaylorCoefficients поля Фурье выводятся из c_k.
    """
    from .fourier import to_fourier
    from .inner import from_fourier

    if isinstance(data, FourierCoefficients):
        fc, tc = data, from_fourier(data)
    else:
        tc = data
        fc = to_fourier(tc, name=name or tc.provenance)
    return {
        "name": name or fc.name,
        "N": fc.N,
        "M": fc.M,
        "alpha0": fc.alpha0,
        "alpha": fc.alpha,
        "beta": fc.beta,
        "c_re": tc.c.real,
        "c_im": tc.c.imag,
        "provenance": tc.provenance,
    }


def write_coefficients(path: Path, data: Union[FourierCoefficients, TaylorCoefficients], name: str = "") -> None:
    Path(path).write_text(dumps(coefficients_payload(data, name)) + "\n", encoding="utf-8")


def _float_list(payload: dict, key: str) -> Optional[List[float]]:
    if key not in payload or payload[key] is None:
        return None
    values = payload[key]
    if not isinstance(values, list):
        raise CoefficientFileError(f"Поле '{key}' должно быть массивом чисел")
    try:
        return [float(v) for v in values]
    except (TypeError, ValueError):
        raise CoefficientFileError(f"Поле '{key}' содержит нечисловые значения") from None


def parse_coefficients(payload: dict) -> Tuple[FourierCoefficients, TaylorCoefficients]:
    """
    Принимает форму Фурье (alpha0, alpha, beta) или Тейлора (c_re, c_im).
    Если есть обе, TaylorCoefficients берутся из c_re/c_im без потерь.
    """
    from .fourier import to_fourier
    from .inner import from_fourier

    if not isinstance(payload, dict):
        raise CoefficientFileError("Файл коэффициентов должен содержать JSON-объект")

    name = str(payload.get("name") or "")
    c_re, c_im = _float_list(payload, "c_re"), _float_list(payload, "c_im")
    alpha, beta = _float_list(payload, "alpha"), _float_list(payload, "beta")
    M = payload.get("M")
    try:
        M = None if M is None else float(M)
    except (TypeError, ValueError):
        raise CoefficientFileError("Поле 'M' должно быть числом") from None

    declared_n = payload.get("N")
    has_taylor = c_re is not None or c_im is not None
    has_fourier = alpha is not None and beta is not None
    if not (has_taylor or has_fourier):
        raise CoefficientFileError("Нужны поля alpha0/alpha/beta или c_re/c_im")
    try:
        fc = tc = None
        if has_fourier:
            if "alpha0" not in payload:
                raise CoefficientFileError("Нет поля 'alpha0'")
            if M is None:
                raise CoefficientFileError("Нет поля 'M'")
            fc = FourierCoefficients(float(payload["alpha0"]), alpha, beta, M, name=name)
        if has_taylor:
            if c_re is None or c_im is None or len(c_re) != len(c_im):
                raise CoefficientFileError("c_re и c_im должны быть массивами одной длины")
            c = np.empty(len(c_re), dtype=complex)
            c.real, c.imag = c_re, c_im
            tc = TaylorCoefficients(
                c=c,
                provenance=str(payload.get("provenance") or f"file({name})"),
                bound_M=M,
            )
        if fc is None:
            fc = to_fourier(tc, name=name)
        if tc is None:
            tc = from_fourier(fc)
    except ValueError as e:
        raise CoefficientFileError(str(e)) from None

    if tc.N != fc.N:
        raise CoefficientFileError(f"Формы Фурье (N={fc.N}) и Тейлора (N={tc.N}) не согласованы")
    if declared_n is not None and int(declared_n) != fc.N:
        raise CoefficientFileError(f"N={declared_n} не совпадает с длиной массивов ({fc.N})")
    return fc, tc


def read_coefficients(path: Path) -> Tuple[FourierCoefficients, TaylorCoefficients]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CoefficientFileError(f"Не удалось прочитать {path}: {e}") from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise CoefficientFileError(f"{path}: некорректный JSON ({e})") from None
    return parse_coefficients(payload)


# =============================================================================
# CSV
# =============================================================================

def write_recovery_csv(path: Path, results: List[RecoveryResult]) -> None:
    """Столбцы theta, rho, u; по строке на каждую ступень лестницы"""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for result in results:
            for rho, u in result.estimates:
                writer.writerow([format_float(result.theta), format_float(rho), format_float(u)])


# =============================================================================
# КУСОЧНО-ПОЛИНОМИАЛЬНЫЕ ФУНКЦИИ
# =============================================================================

_NAMED_CONSTANTS = {"pi": math.pi, "-pi": -math.pi, "2pi": 2.0 * math.pi, "-2pi": -2.0 * math.pi}


def _number(value: Any, what: str) -> float:
    if isinstance(value, str):
        key = value.strip().lower().replace(" ", "")
        if key in _NAMED_CONSTANTS:
            return _NAMED_CONSTANTS[key]
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise PiecewiseFileError(f"{what}: ожидалось число, получено {value!r}") from None
    if not math.isfinite(number):
        raise PiecewiseFileError(f"{what}: значение должно быть конечным")
    return number


def parse_piecewise(payload: dict) -> PiecewisePolynomial:
    """
    {"name": ..., "domain": [a, b], "intervals": [{"lo", "hi", "coeffs"}...],
     "singular_points": [{"x", "kind"}...]}

    Интервалы могут задаваться и списками [lo, hi, [c0, c1, ...]]; коэффициенты
    по возрастанию степеней. Концы можно писать строками "pi", "-pi".
    """
    if not isinstance(payload, dict):
        raise PiecewiseFileError("Файл функции должен содержать JSON-объект")

    domain = payload.get("domain") or ["-pi", "pi"]
    if not isinstance(domain, list) or len(domain) != 2:
        raise PiecewiseFileError("Поле 'domain' должно быть парой [a, b]")
    a, b = _number(domain[0], "domain"), _number(domain[1], "domain")

    intervals = payload.get("intervals")
    if not isinstance(intervals, list) or not intervals:
        raise PiecewiseFileError("Нужен непустой массив 'intervals'")

    pieces = []
    for i, item in enumerate(intervals):
        if isinstance(item, dict):
            lo, hi, coeffs = item.get("lo"), item.get("hi"), item.get("coeffs")
        elif isinstance(item, list) and len(item) == 3:
            lo, hi, coeffs = item
        else:
            raise PiecewiseFileError(f"Интервал #{i}: ожидалось {{lo, hi, coeffs}} или [lo, hi, coeffs]")
        if not isinstance(coeffs, list):
            raise PiecewiseFileError(f"Интервал #{i}: 'coeffs' должен быть массивом")
        pieces.append((
            _number(lo, f"интервал #{i}"),
            _number(hi, f"интервал #{i}"),
            tuple(_number(c, f"интервал #{i}") for c in coeffs),
        ))

    points = []
    for item in payload.get("singular_points") or []:
        if not isinstance(item, dict) or "x" not in item:
            raise PiecewiseFileError("Особая точка задаётся объектом {x, kind}")
        try:
            kind = SingularKind(str(item.get("kind", "none")))
        except ValueError:
            allowed = ", ".join(k.value for k in SingularKind)
            raise PiecewiseFileError(f"Неизвестный тип особой точки '{item.get('kind')}' ({allowed})") from None
        points.append((_number(item["x"], "особая точка"), kind))

    return PiecewisePolynomial(
        name=str(payload.get("name") or "piecewise"),
        pieces=tuple(pieces),
        singular_points=tuple(points),
        domain=(a, b),
    )


def load_piecewise(path: Path) -> PiecewisePolynomial:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise PiecewiseFileError(f"Не удалось прочитать {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise PiecewiseFileError(f"{path}: некорректный JSON ({e})") from None
    return parse_piecewise(payload)
