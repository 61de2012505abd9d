#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk Core - Численное ядро
"""

from .constants import (
    APP_NAME, APP_VERSION,
    QUAD_ABS_TOL, QUAD_REL_TOL, QUAD_MAX_PANELS, QUAD_ORDER,
    DEFAULT_LADDER_EXPONENTS, CONVERGENCE_THRESHOLD,
    CHAIN_MAX_OFFSET, CLASSIFY_MAX_STEPS, CLASSIFY_LADDER_EXPONENTS,
)

from .errors import (
    InnerDiskError, CatalogError, DomainError, SingularPointError, QuadratureError,
    ChainOffsetError, TruncationLimitedError, EmptyGridError,
    CoefficientFileError, PiecewiseFileError, SettingsError,
)

from .data_models import (
    Parity, SingularKind, Extrapolation, Verdict,
    SingularPoint, KnownSeries, RealFunctionSpec, PiecewisePolynomial,
    QuadConfig, FourierCoefficients, BoundReport, TaylorCoefficients,
    DiskPoint, ClosedFormInner, ChainPosition,
    RhoLadder, RecoveryResult, GridError, ProbeResult, SingularityReport,
)

from .catalog import catalog_get, catalog_list, catalog_names, cosine_mode, eval_real, piecewise_spec
from .fourier import compute_coefficients, exact_coefficients, verify_bounds, to_fourier
from .inner import from_fourier, evaluate, evaluate_many, conjugate, closed_form_eval, get_closed_form
from .chain import angular_derivative, angular_primitive, proper_projection, navigate
from .boundary import radial_recover, abel_sum, grid_error, recover_conjugate
from .classify import probe_point, classify_point, classify_points

__all__ = [
    # constants
    'APP_NAME', 'APP_VERSION',
    'QUAD_ABS_TOL', 'QUAD_REL_TOL', 'QUAD_MAX_PANELS', 'QUAD_ORDER',
    'DEFAULT_LADDER_EXPONENTS', 'CONVERGENCE_THRESHOLD',
    'CHAIN_MAX_OFFSET', 'CLASSIFY_MAX_STEPS', 'CLASSIFY_LADDER_EXPONENTS',
    # errors
    'InnerDiskError', 'CatalogError', 'DomainError', 'SingularPointError', 'QuadratureError',
    'ChainOffsetError', 'TruncationLimitedError', 'EmptyGridError',
    'CoefficientFileError', 'PiecewiseFileError', 'SettingsError',
    # data_models
    'Parity', 'SingularKind', 'Extrapolation', 'Verdict',
    'SingularPoint', 'KnownSeries', 'RealFunctionSpec', 'PiecewisePolynomial',
    'QuadConfig', 'FourierCoefficients', 'BoundReport', 'TaylorCoefficients',
    'DiskPoint', 'ClosedFormInner', 'ChainPosition',
    'RhoLadder', 'RecoveryResult', 'GridError', 'ProbeResult', 'SingularityReport',
    # operations
    'catalog_get', 'catalog_list', 'catalog_names', 'cosine_mode', 'eval_real', 'piecewise_spec',
    'compute_coefficients', 'exact_coefficients', 'verify_bounds', 'to_fourier',
    'from_fourier', 'evaluate', 'evaluate_many', 'conjugate', 'closed_form_eval', 'get_closed_form',
    'angular_derivative', 'angular_primitive', 'proper_projection', 'navigate',
    'radial_recover', 'abel_sum', 'grid_error', 'recover_conjugate',
    'probe_point', 'classify_point', 'classify_points',
]
