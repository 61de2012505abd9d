#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Shared fixtures: cached coefficient vectors and the classifier fixtures."""

import math
import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from innerdisk.core.catalog import catalog_get  # noqa: E402
from innerdisk.core.data_models import Extrapolation, RhoLadder, TaylorCoefficients  # noqa: E402
from innerdisk.core.fourier import compute_coefficients, exact_coefficients  # noqa: E402
from innerdisk.core.inner import from_fourier  # noqa: E402

# Порядок, при котором проверка усечения проходит на лестнице j = 4..10
PROBE_ORDER = 32768

NON_PATHOLOGICAL = (
    "constant_one", "constant_zero", "sawtooth", "square_wave", "abs_theta",
    "log_sine", "exp_cos", "exp_cos_derivative",
)


@lru_cache(maxsize=None)
def exact_fourier(name: str, N: int):
    return exact_coefficients(catalog_get(name), N)


@lru_cache(maxsize=None)
def quadrature_fourier(name: str, N: int):
    return compute_coefficients(catalog_get(name), N)


def exact_taylor(name: str, N: int) -> TaylorCoefficients:
    return from_fourier(exact_fourier(name, N))


def quadrature_taylor(name: str, N: int) -> TaylorCoefficients:
    return from_fourier(quadrature_fourier(name, N))


def ones_vector(N: int) -> TaylorCoefficients:
    """c_k = 1: w = 1/(1 - z) (с усечением)"""
    c = np.ones(N + 1, dtype=complex)
    c[0] = 0
    return TaylorCoefficients(c=c, provenance="ones")


def inverse_square_vector(N: int) -> TaylorCoefficients:
    """c_k = 1/k^2"""
    k = np.arange(1, N + 1, dtype=float)
    c = np.zeros(N + 1, dtype=complex)
    c[1:] = 1.0 / (k * k)
    return TaylorCoefficients(c=c, provenance="inverse_square")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def probe_ladder():
    return RhoLadder.geometric(range(4, 11), Extrapolation.NONE)


@pytest.fixture(scope="session")
def log_sine_probe_tc():
    return exact_taylor("log_sine", PROBE_ORDER)


@pytest.fixture(scope="session")
def exp_cos_probe_tc():
    return exact_taylor("exp_cos", PROBE_ORDER)


@pytest.fixture(scope="session")
def abs_theta_probe_tc():
    return exact_taylor("abs_theta", PROBE_ORDER)


@pytest.fixture(scope="session")
def ones_probe_tc():
    return ones_vector(PROBE_ORDER)


@pytest.fixture(scope="session")
def inverse_square_probe_tc():
    return inverse_square_vector(PROBE_ORDER)


def ladder_fit_slope(rhos, values) -> float:
    """Наклон values против ln(1/(1 - rho)) методом наименьших квадратов"""
    x = np.log(1.0 / (1.0 - np.asarray(rhos)))
    slope, _ = np.polyfit(x, np.asarray(values), 1)
    return float(slope)


PI = math.pi
