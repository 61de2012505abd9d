#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Exceptions raised by the numerical core."""

from typing import Any, Dict, Optional


class InnerDiskError(RuntimeError):
    """Base class for computation errors reported by the CLI with exit status 1."""

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class CatalogError(InnerDiskError):
    """Raised when a catalog name is not registered."""

    def __init__(self, name: str, available):
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"Неизвестная функция каталога '{name}'. Доступны: {', '.join(self.available)}"
        )

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["available"] = list(self.available)
        return data


class DomainError(InnerDiskError):
    """Raised for theta outside [-pi, pi] or rho outside [0, 1)."""


class SingularPointError(InnerDiskError):
    """Raised when a function is evaluated at a log-divergence or essential point."""


class QuadratureError(InnerDiskError):
    """Raised when the panel budget runs out before the requested tolerance."""

    def __init__(self, message: str, worst_k: Optional[int] = None, achieved: float = float("nan")):
        self.worst_k = worst_k
        self.achieved = achieved
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["worst_k"] = self.worst_k
        data["achieved"] = self.achieved
        return data


class ChainOffsetError(InnerDiskError):
    """Raised when a chain walk leaves the configured offset range."""


class TruncationLimitedError(InnerDiskError):
    """Raised when the series truncation dominates a boundary probe."""


class EmptyGridError(InnerDiskError):
    """Raised when exclusion neighbourhoods cover the whole circle."""


class CoefficientFileError(InnerDiskError):
    """Raised when a coefficient JSON file is malformed."""


class PiecewiseFileError(InnerDiskError):
    """Raised when a piecewise-polynomial definition is invalid."""


class SettingsError(InnerDiskError):
    """Raised when a config file holds an invalid value."""
