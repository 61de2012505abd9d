#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""InnerDisk package."""

from .core import APP_NAME, APP_VERSION

__version__ = APP_VERSION

__all__ = ["APP_NAME", "APP_VERSION", "__version__"]
