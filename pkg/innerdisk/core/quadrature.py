#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Adaptive panel quadrature for vector-valued integrands.

Every panel is integrated with a fixed-order Gauss-Legendre rule; the panel
with the largest error estimate (coarse rule vs. the two halves) is bisected
until the summed error meets the tolerance or the panel budget runs out.
Panels next to a log-divergence or essential point start geometrically
graded toward that point, and bisection keeps shrinking them from there.
Gauss nodes never touch panel ends, so integrable endpoint singularities
are never evaluated.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .constants import GRADING_LEVELS, GRADING_RATIO, LOGGER_NAME, QUAD_CHUNK_NODES
from .data_models import QuadConfig

logger = logging.getLogger(LOGGER_NAME)

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadResult:
    value: np.ndarray
    error: np.ndarray
    panels: int
    converged: bool

    @property
    def worst_component(self) -> int:
        return int(np.argmax(self.error))


@lru_cache(maxsize=8)
def gauss_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def graded_points(a: float, b: float, toward: float,
                  levels: int = GRADING_LEVELS, ratio: float = GRADING_RATIO) -> List[float]:
    """Interior breakpoints of [a, b] shrinking geometrically toward one of its ends."""
    if toward == a:
        return [a + (b - a) * ratio ** j for j in range(levels, 0, -1)]
    if toward == b:
        return [b - (b - a) * ratio ** j for j in range(1, levels + 1)]
    return []


def _batched_rule(func: Integrand, intervals: Sequence[Tuple[float, float]],
                  nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Apply the Gauss rule to several intervals, at most QUAD_CHUNK_NODES abscissas per integrand call."""
    lo = np.array([a for a, _ in intervals])
    hi = np.array([b for _, b in intervals])
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    step = max(1, QUAD_CHUNK_NODES // nodes.size)
    parts = []
    for start in range(0, len(intervals), step):
        sl = slice(start, start + step)
        x = (mid[sl, None] + half[sl, None] * nodes[None, :]).ravel()
        fx = np.asarray(func(x), dtype=float)
        if fx.ndim == 1:
            fx = fx[:, None]
        fx = fx.reshape(-1, nodes.size, fx.shape[-1])
        parts.append(np.einsum("j,ijc->ic", weights, fx) * half[sl, None])
    return np.concatenate(parts, axis=0)


class _Panel:
    __slots__ = ("a", "b", "value", "error", "left", "right")

    def __init__(self, a, b, value, error, left, right):
        self.a = a
        self.b = b
        self.value = value
        self.error = error
        self.left = left
        self.right = right


def integrate(func: Integrand, breakpoints: Iterable[float], config: QuadConfig,
              graded: Iterable[float] = (), panel_cap: Optional[int] = None) -> QuadResult:
    """
    Integrate func over [min(breakpoints), max(breakpoints)].

    func maps an array of abscissas (m,) to values (m,) or (m, ncomp). The
    interval is split at every breakpoint before adaptation; panels touching a
    point in graded start with geometric grading toward it.
    """
    nodes, weights = gauss_rule(config.order)
    cap = config.max_panels if panel_cap is None else min(panel_cap, config.max_panels)

    edges = sorted(set(float(p) for p in breakpoints))
    if len(edges) < 2:
        raise ValueError("Нужны хотя бы две точки разбиения")
    graded = [float(g) for g in graded]

    refined: List[float] = [edges[0]]
    for a, b in zip(edges, edges[1:]):
        for g in graded:
            if g in (a, b):
                refined.extend(graded_points(a, b, g))
        refined.append(b)
    edges = sorted(set(refined))

    intervals = list(zip(edges, edges[1:]))
    panels = _evaluate_panels(func, intervals, nodes, weights)

    heap: List[Tuple[float, int, _Panel]] = []
    counter = 0
    total = np.zeros_like(panels[0].value)
    total_err = np.zeros_like(panels[0].error)
    for panel in panels:
        heapq.heappush(heap, (-float(np.max(panel.error)), counter, panel))
        counter += 1
        total += panel.value
        total_err += panel.error

    frozen: List[_Panel] = []
    converged = False
    while True:
        tol = np.maximum(config.abs_tol, config.rel_tol * np.abs(total))
        if np.all(total_err <= tol):
            converged = True
            break
        if not heap or len(heap) + len(frozen) >= cap:
            break
        _, _, worst = heapq.heappop(heap)
        if worst.error.max() == 0.0:
            heapq.heappush(heap, (0.0, counter, worst))
            break
        mid = 0.5 * (worst.a + worst.b)
        if not (worst.a < mid < worst.b):
            # панель сжалась до машинной точности, её ошибку уже не уменьшить
            logger.debug("Панель [%r, %r] больше не делится", worst.a, worst.b)
            frozen.append(worst)
            continue
        halves = _evaluate_panels(func, [(worst.a, mid), (mid, worst.b)], nodes, weights,
                                  coarse=[worst.left, worst.right])
        total -= worst.value
        total_err -= worst.error
        for half in halves:
            heapq.heappush(heap, (-float(np.max(half.error)), counter, half))
            counter += 1
            total += half.value
            total_err += half.error

    ordered = sorted([p for _, _, p in heap] + frozen, key=lambda p: p.a)
    value = np.sum([p.value for p in ordered], axis=0)
    error = np.sum([p.error for p in ordered], axis=0)
    logger.debug("Квадратура: %d панелей, max error %.3e, converged=%s",
                 len(ordered), float(np.max(error)), converged)
    return QuadResult(value=value, error=error, panels=len(ordered), converged=converged)


def _evaluate_panels(func: Integrand, intervals: Sequence[Tuple[float, float]],
                     nodes: np.ndarray, weights: np.ndarray,
                     coarse: Optional[Sequence[np.ndarray]] = None) -> List[_Panel]:
    halves = []
    for a, b in intervals:
        m = 0.5 * (a + b)
        halves.extend([(a, m), (m, b)])
    fine = _batched_rule(func, halves, nodes, weights)
    if coarse is None:
        coarse = list(_batched_rule(func, intervals, nodes, weights))
    result = []
    for i, (a, b) in enumerate(intervals):
        left, right = fine[2 * i], fine[2 * i + 1]
        value = left + right
        result.append(_Panel(a, b, value, np.abs(value - coarse[i]), left, right))
    return result


def integrate_scalar(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                     config: QuadConfig, breakpoints: Iterable[float] = (),
                     graded: Iterable[float] = ()) -> QuadResult:
    """Scalar convenience wrapper; breakpoints outside [a, b] are ignored."""
    points = [a, b] + [p for p in breakpoints if a < p < b]
    graded = [g for g in graded if a <= g <= b]
    return integrate(func, points, config, graded=graded)
