#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
InnerDisk - RUN

Точка входа из корня репозитория: python run.py <команда> [флаги].
Необработанные исключения попадают в лог вместо молчаливого падения.
"""

import logging
import sys
import traceback
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
if str(BASE_DIR) not in sys.path:
    sys.path.insert(0, str(BASE_DIR))

logger = logging.getLogger("InnerDisk")


def _install_excepthook():
    def _hook(exc_type, exc, tb):
        logger.critical("UNCAUGHT EXCEPTION", exc_info=(exc_type, exc, tb))
    sys.excepthook = _hook


def main() -> int:
    _install_excepthook()
    from innerdisk.cli import main as cli_main
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    try:
        sys.exit(main())
    except SystemExit:
        raise
    except Exception:
        logging.basicConfig(
            level=logging.ERROR,
            format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
            handlers=[logging.StreamHandler(sys.stderr)],
        )
        logger.critical("FATAL ERROR:")
        logger.critical(traceback.format_exc())
        sys.exit(1)
