#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Workers package."""

from .processing import BatchWorker, default_worker_count

__all__ = ['BatchWorker', 'default_worker_count']
